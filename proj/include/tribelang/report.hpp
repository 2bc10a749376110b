#pragma once

#include <string>
#include <vector>

#include "tribelang/metrics.hpp"

namespace tribelang {

// Per-trial table with mean and sample-deviation footer rows.
std::string trial_table_text(const std::string& label,
                             const std::vector<SessionMetrics>& trials);
std::string trial_table_csv(const std::string& label,
                            const std::vector<SessionMetrics>& trials);

// One row per group of sessions, aggregate statistics only.
std::string aggregate_table_text(const std::vector<AggregateReport>& groups);
std::string aggregate_table_csv(const std::vector<AggregateReport>& groups);

}  // namespace tribelang
