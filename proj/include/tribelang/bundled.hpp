#pragma once

#include <string_view>

#include "tribelang/language.hpp"

namespace tribelang {

// Raw JSON documents compiled into the binary. These are the authoritative
// copies; the files under data/languages/ must match them byte for byte.
std::string_view bundled_tinkatongue_json();
std::string_view bundled_zingaloom_json();

// Parsed singletons.
const LanguageSpec& tinkatongue();
const LanguageSpec& zingaloom();

// Resolves "tinkatongue"/"zingaloom" to the bundled spec, anything else as a
// file path.
LanguageSpec resolve_language(const std::string& name_or_path);

}  // namespace tribelang
