#include "tribelang/report.hpp"

#include <cstdio>
#include <sstream>

namespace tribelang {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string csv_num(double v) { return fmt("%.10g", v); }

}  // namespace

std::string trial_table_text(const std::string& label,
                             const std::vector<SessionMetrics>& trials) {
  std::ostringstream out;
  AggregateReport agg = aggregate(trials, label);
  out << label << ": " << trials.size() << " session"
      << (trials.size() == 1 ? "" : "s") << "\n";
  out << "trial     tvr      ac      fr   ttfk  compl  turns\n";
  char buf[128];
  for (size_t i = 0; i < trials.size(); ++i) {
    const auto& m = trials[i];
    char ttfk[16];
    if (m.ttfk < 0) std::snprintf(ttfk, sizeof(ttfk), "%5s", "-");
    else std::snprintf(ttfk, sizeof(ttfk), "%5d", m.ttfk);
    std::snprintf(buf, sizeof(buf), "%5zu  %6.4f  %6.4f  %6.4f  %s  %5d  %5d\n",
                  i + 1, m.tvr, m.ac, m.fr, ttfk, m.completions, m.total_turns);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%5s  %6.4f  %6.4f  %6.4f\n", "mean",
                agg.tvr.mean, agg.ac.mean, agg.fr.mean);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%5s  %6.4f  %6.4f  %6.4f\n", "std",
                agg.tvr.stddev, agg.ac.stddev, agg.fr.stddev);
  out << buf;
  if (agg.ttfk_sessions > 0) {
    std::snprintf(buf, sizeof(buf),
                  "ttfk: mean %.2f, std %.2f over %d of %zu sessions\n",
                  agg.ttfk.mean, agg.ttfk.stddev, agg.ttfk_sessions, trials.size());
    out << buf;
  } else {
    out << "ttfk: no valid turns in any session\n";
  }
  return out.str();
}

std::string trial_table_csv(const std::string& label,
                            const std::vector<SessionMetrics>& trials) {
  std::ostringstream out;
  AggregateReport agg = aggregate(trials, label);
  out << "label,trial,tvr,ac,fr,ttfk,completions,total_turns,valid_turns\n";
  for (size_t i = 0; i < trials.size(); ++i) {
    const auto& m = trials[i];
    out << label << ',' << i + 1 << ',' << csv_num(m.tvr) << ',' << csv_num(m.ac)
        << ',' << csv_num(m.fr) << ',' << m.ttfk << ',' << m.completions << ','
        << m.total_turns << ',' << m.valid_turns << "\n";
  }
  out << label << ",mean," << csv_num(agg.tvr.mean) << ',' << csv_num(agg.ac.mean)
      << ',' << csv_num(agg.fr.mean) << ','
      << (agg.ttfk_sessions ? csv_num(agg.ttfk.mean) : "") << ','
      << csv_num(agg.completions.mean) << ",,\n";
  out << label << ",stddev," << csv_num(agg.tvr.stddev) << ','
      << csv_num(agg.ac.stddev) << ',' << csv_num(agg.fr.stddev) << ','
      << (agg.ttfk_sessions ? csv_num(agg.ttfk.stddev) : "") << ','
      << csv_num(agg.completions.stddev) << ",,\n";
  return out.str();
}

std::string aggregate_table_text(const std::vector<AggregateReport>& groups) {
  std::ostringstream out;
  out << "group            n     tvr (std)         ac (std)          fr (std)      "
         "    ttfk (std)    ttfk_n   compl (std)\n";
  char buf[256];
  for (const auto& g : groups) {
    char ttfk[48];
    if (g.ttfk_sessions > 0)
      std::snprintf(ttfk, sizeof(ttfk), "%7.2f (%6.2f)", g.ttfk.mean, g.ttfk.stddev);
    else
      std::snprintf(ttfk, sizeof(ttfk), "%7s (%6s)", "-", "-");
    std::snprintf(buf, sizeof(buf),
                  "%-14s %3d  %6.4f (%6.4f)  %6.4f (%6.4f)  %6.4f (%6.4f)  %s  %6d  "
                  "%5.2f (%5.2f)\n",
                  g.label.c_str(), g.sessions, g.tvr.mean, g.tvr.stddev, g.ac.mean,
                  g.ac.stddev, g.fr.mean, g.fr.stddev, ttfk, g.ttfk_sessions,
                  g.completions.mean, g.completions.stddev);
    out << buf;
  }
  return out.str();
}

std::string aggregate_table_csv(const std::vector<AggregateReport>& groups) {
  std::ostringstream out;
  out << "label,sessions,tvr_mean,tvr_std,ac_mean,ac_std,fr_mean,fr_std,"
         "ttfk_mean,ttfk_std,ttfk_sessions,completions_mean,completions_std\n";
  for (const auto& g : groups) {
    out << g.label << ',' << g.sessions << ',' << csv_num(g.tvr.mean) << ','
        << csv_num(g.tvr.stddev) << ',' << csv_num(g.ac.mean) << ','
        << csv_num(g.ac.stddev) << ',' << csv_num(g.fr.mean) << ','
        << csv_num(g.fr.stddev) << ','
        << (g.ttfk_sessions ? csv_num(g.ttfk.mean) : "") << ','
        << (g.ttfk_sessions ? csv_num(g.ttfk.stddev) : "") << ','
        << g.ttfk_sessions << ',' << csv_num(g.completions.mean) << ','
        << csv_num(g.completions.stddev) << "\n";
  }
  return out.str();
}

}  // namespace tribelang
