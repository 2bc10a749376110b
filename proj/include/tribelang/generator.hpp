#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "tribelang/language.hpp"

namespace tribelang {

// Raised when generation parameters are unsatisfiable or the backtrack
// budget runs out.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenParams {
  uint64_t seed = 0;
  int conversation_count = 25;
  int sentences_per_conversation = 4;
  int words_per_sentence = 3;
  // Minimum words shared by consecutive sentences; 0 disables the adjacency
  // guarantee.
  int min_shared_words = 1;
  int lexicon_size = 25;
  std::vector<std::string> forbidden_words;
  bool enforce_unique_sentences = true;
  int max_backtracks = 10000;
};

// Deterministic word pool sample: consonant-vowel-consonant-vowel words,
// excluding `forbidden` and the feedback tokens' words. Throws
// GenerationError if fewer than `size` candidates remain.
std::vector<std::string> gen_lexicon(uint64_t seed, int size,
                                     const std::unordered_set<std::string>& forbidden,
                                     const FeedbackTokens& feedback = {});

// Builds a full language from the parameters. The result always satisfies
// the structural constraints; with min_shared_words >= 1 and
// enforce_unique_sentences it loads with zero diagnostics.
LanguageSpec gen_language(const GenParams& params, const FeedbackTokens& feedback = {},
                          std::string name = "");

// True iff the two lexicons share no word.
bool check_disjoint(const LanguageSpec& a, const LanguageSpec& b);

// The shared words, sorted.
std::vector<std::string> lexical_overlap(const LanguageSpec& a, const LanguageSpec& b);

}  // namespace tribelang
