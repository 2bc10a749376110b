#include "tribelang/bundled.hpp"

namespace tribelang {

const LanguageSpec& tinkatongue() {
  static const LanguageSpec spec = load_language(bundled_tinkatongue_json());
  return spec;
}

const LanguageSpec& zingaloom() {
  static const LanguageSpec spec = load_language(bundled_zingaloom_json());
  return spec;
}

LanguageSpec resolve_language(const std::string& name_or_path) {
  if (name_or_path == "tinkatongue") return tinkatongue();
  if (name_or_path == "zingaloom") return zingaloom();
  return load_language_file(name_or_path);
}

}  // namespace tribelang
