#include "tribelang/bundled.hpp"

namespace tribelang {

std::string_view bundled_zingaloom_json() {
  static constexpr std::string_view doc = R"json({
  "name": "zingaloom",
  "feedback": {
    "positive": "koro",
    "confusion": "moko lira bani"
  },
  "conversations": [
    [
      "zuma keta rilo",
      "rilo pona suva",
      "suva keta doro",
      "doro zuma pini"
    ],
    [
      "mira tolu sako",
      "sako neri vipa",
      "vipa tolu rani",
      "rani mira doku"
    ],
    [
      "pavo lira kuni",
      "kuni meko zera",
      "zera lira hato",
      "hato pavo nuli"
    ],
    [
      "tari moku sena",
      "sena jeko rumi",
      "rumi moku pela",
      "pela tari nado"
    ],
    [
      "nema suki rako",
      "rako bimi tanu",
      "tanu suki velo",
      "velo nema piri"
    ],
    [
      "janu kelo sili",
      "sili ramo teku",
      "teku kelo nari",
      "nari janu peka"
    ],
    [
      "feko rina melo",
      "melo tisa buro",
      "buro rina sedi",
      "sedi feko lani"
    ],
    [
      "duni pago tika",
      "tika mero suli",
      "suli pago renu",
      "renu duni lako"
    ],
    [
      "vona temi paku",
      "paku lera simo",
      "simo temi jaku",
      "jaku vona reli"
    ],
    [
      "beka rumi tono",
      "tono lesi mifa",
      "mifa rumi zoki",
      "zoki beka nalo"
    ],
    [
      "cari meno tupa",
      "tupa jelu rasi",
      "rasi meno dika",
      "dika cari lupo"
    ],
    [
      "sepi karo timo",
      "timo nevi laku",
      "laku karo sime",
      "sime sepi rudo"
    ],
    [
      "gito rafa lani",
      "lani peko rida",
      "rida rafa moki",
      "moki gito nera"
    ],
    [
      "pila mode renu",
      "renu dabe tuku",
      "tuku mode sani",
      "sani pila meku"
    ],
    [
      "tabe firo nali",
      "nali vemo suta",
      "suta firo jeni",
      "jeni tabe rolu"
    ],
    [
      "mado kesi rine",
      "rine tosa peki",
      "peki kesi jaro",
      "jaro mado vesi"
    ],
    [
      "lubi seno taro",
      "taro peni kima",
      "kima seno duro",
      "duro lubi mete"
    ],
    [
      "savi piro jalo",
      "jalo mevi tono",
      "tono piro nese",
      "nese savi ruka"
    ],
    [
      "ruka temu nalo",
      "nalo vasi jepo",
      "jepo temu rini",
      "rini ruka mepa"
    ],
    [
      "puna kedi raso",
      "raso miti leko",
      "leko kedi saro",
      "saro puna vike"
    ],
    [
      "nemi joru lita",
      "lita sevo rupi",
      "rupi joru kela",
      "kela nemi sado"
    ],
    [
      "bira tami selo",
      "selo neri jaku",
      "jaku tami leto",
      "leto bira rumi"
    ],
    [
      "tupa rini selo",
      "selo davi pemo",
      "pemo rini kuto",
      "kuto tupa lemi"
    ],
    [
      "vela sumi pado",
      "pado meku sini",
      "sini sumi ravo",
      "ravo vela jeni"
    ],
    [
      "tori mika senu",
      "senu dopa liri",
      "liri mika nuvo",
      "nuvo tori seka"
    ]
  ]
}
)json";
  return doc;
}

}  // namespace tribelang
