#include "tribelang/bundled.hpp"

namespace tribelang {

std::string_view bundled_tinkatongue_json() {
  static constexpr std::string_view doc = R"json({
  "name": "tinkatongue",
  "feedback": {
    "positive": "koro",
    "confusion": "moko lira bani"
  },
  "conversations": [
    [
      "banu tira lomo",
      "lumo banu kina",
      "lumo tira fanu",
      "fanu kina riko"
    ],
    [
      "mako lira fanu",
      "lira tomo fanu",
      "tika lira fanu",
      "sora nira fanu"
    ],
    [
      "soro kina batu",
      "sanu kina toro",
      "sanu kina tomo",
      "naku tira falu"
    ],
    [
      "tika banu sora",
      "tika riko tomo",
      "tika lira fanu",
      "tika tomo kina"
    ],
    [
      "nima fanu boro",
      "sora nira fanu",
      "nira tomo falu",
      "falu banu sira"
    ],
    [
      "lira banu tomo",
      "sanu lira tomo",
      "sira lira fanu",
      "mako lira sanu"
    ],
    [
      "kima nora falu",
      "tira lumo naku",
      "sira kina tira",
      "nira banu falu"
    ],
    [
      "banu sira naku",
      "sira banu laku",
      "banu tira sira",
      "sira fanu banu"
    ],
    [
      "sanu kina toro",
      "sanu kina tomo",
      "sanu tomo banu",
      "sanu tomo falu"
    ],
    [
      "nira tomo falu",
      "nira fanu tira",
      "nira kina tomo",
      "fanu tomo nira"
    ],
    [
      "mako tira sanu",
      "riko tira naku",
      "riko tomo kina",
      "riko naku lumo"
    ],
    [
      "lira tomo fanu",
      "fanu naku tomo",
      "tomo kina nira",
      "mako tomo nira"
    ],
    [
      "tomo kina nira",
      "nira kina tomo",
      "sanu kina tomo",
      "fanu tomo nira"
    ],
    [
      "kima tomo fanu",
      "kima falu tira",
      "kima tomo sanu",
      "kima kina falu"
    ],
    [
      "sora nira fanu",
      "sora banu tomo",
      "tika banu sora",
      "tika riko tomo"
    ],
    [
      "fanu kina riko",
      "fanu lira mako",
      "fanu tomo nira",
      "fanu naku tomo"
    ],
    [
      "naku tira falu",
      "tira lumo naku",
      "fanu lumo banu",
      "lumo banu tira"
    ],
    [
      "lumo banu kina",
      "banu nira lira",
      "banu tomo fanu",
      "banu sira tomo"
    ],
    [
      "sanu laku tomo",
      "sanu lira tomo",
      "sanu tomo banu",
      "sanu tomo falu"
    ],
    [
      "sira kina tira",
      "sira tomo laku",
      "sira fanu banu",
      "sira banu laku"
    ],
    [
      "tika riko tomo",
      "riko tomo kina",
      "riko tira naku",
      "riko falu tira"
    ],
    [
      "lumo tira fanu",
      "fanu tomo nira",
      "nira tomo falu",
      "falu tomo riko"
    ],
    [
      "naku banu tira",
      "tira lumo naku",
      "tira sanu lumo",
      "tira falu laku"
    ],
    [
      "lira fanu sanu",
      "mako lira sanu",
      "sanu laku tomo",
      "sanu kina toro"
    ],
    [
      "banu tira lomo",
      "banu sira tomo",
      "banu tomo fanu",
      "banu nira lira"
    ]
  ]
}
)json";
  return doc;
}

}  // namespace tribelang
