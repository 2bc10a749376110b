#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tribelang {

// Raised for malformed or constraint-violating language documents.
class LanguageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Sentence {
  std::vector<std::string> words;

  std::string text() const;
  bool operator==(const Sentence&) const = default;
};

struct Conversation {
  std::vector<Sentence> sentences;

  bool operator==(const Conversation&) const = default;
};

struct FeedbackTokens {
  std::string positive = "koro";
  std::string confusion = "moko lira bani";

  bool operator==(const FeedbackTokens&) const = default;
};

// Result of tokenizing an arbitrary agent utterance. Malformed input is a
// value, not an error: anything containing a character outside [a-z ] is
// flagged and never matches a sentence.
struct Normalized {
  std::vector<std::string> tokens;
  bool malformed = false;

  std::string text() const;
};

Normalized normalize_utterance(std::string_view raw);

// True iff the word consists of letters a-z and contains exactly two maximal
// runs of vowels {a,e,i,o,u}.
bool two_syllable(std::string_view word);

// True iff the two sentences share at least one word (string equality).
bool adjacency(const Sentence& a, const Sentence& b);

// A recorded (non-fatal) constraint departure found at load time.
struct Diagnostic {
  std::string constraint;
  std::string location;
  std::string detail;
};

// Immutable, validated language definition. Construction goes through
// load_language() or LanguageSpec::build(); both enforce the structural
// constraints (charset, syllable shape, uniform sentence and conversation
// geometry, feedback hygiene) and record soft departures (adjacency,
// duplicate sentences) as diagnostics.
class LanguageSpec {
 public:
  static LanguageSpec build(std::string name, FeedbackTokens feedback,
                            std::vector<Conversation> conversations,
                            std::string generator_json = "");

  const std::string& name() const { return name_; }
  const FeedbackTokens& feedback() const { return feedback_; }
  const std::vector<Conversation>& conversations() const { return conversations_; }
  // Serialized generator header carried by generated files; empty if absent.
  const std::string& generator_json() const { return generator_json_; }

  int words_per_sentence() const { return words_per_sentence_; }
  int sentences_per_conversation() const { return sentences_per_conversation_; }

  // Distinct words, sorted.
  const std::vector<std::string>& lexicon() const { return lexicon_; }
  // Distinct sentences in first-occurrence order.
  const std::vector<Sentence>& sentences() const { return sentences_; }
  int listed_sentence_count() const { return listed_sentence_count_; }

  bool contains_word(std::string_view word) const;
  bool contains_sentence_text(std::string_view text) const;
  bool contains_conversation(const std::vector<Sentence>& quadruple) const;

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  LanguageSpec() = default;

  std::string name_;
  FeedbackTokens feedback_;
  std::vector<Conversation> conversations_;
  std::string generator_json_;
  int words_per_sentence_ = 0;
  int sentences_per_conversation_ = 0;
  int listed_sentence_count_ = 0;
  std::vector<std::string> lexicon_;
  std::unordered_set<std::string> lexicon_set_;
  std::vector<Sentence> sentences_;
  std::unordered_set<std::string> sentence_texts_;
  std::unordered_set<std::string> conversation_keys_;
  std::unordered_map<std::string, Sentence> successor_;
  std::vector<Diagnostic> diagnostics_;

  friend std::optional<Sentence> successor(const LanguageSpec&, const Sentence&);
};

// Parses and validates a language document (JSON text). Throws LanguageError
// with the offending field or value named.
LanguageSpec load_language(std::string_view document);
LanguageSpec load_language_file(const std::string& path);

// Canonical serialization; load_language(serialize_language(s)) reproduces s
// byte-for-byte when re-serialized.
std::string serialize_language(const LanguageSpec& spec);

// Sentence-level membership test used by the environment.
bool sentence_validity(const LanguageSpec& spec, const Normalized& message);

// True iff the given sentence sequence is one of the language's conversations
// (exact, position-for-position).
bool conversation_validity(const LanguageSpec& spec,
                           const std::vector<Sentence>& sentences);

// Deterministic successor: the sentence following the first occurrence of
// `sentence` at a non-final position, scanning conversations in listed order.
// nullopt if every occurrence is conversation-final. Throws
// std::invalid_argument if the sentence is not in the language at all.
std::optional<Sentence> successor(const LanguageSpec& spec, const Sentence& sentence);

Sentence make_sentence(std::string_view text);

}  // namespace tribelang
