#include "tribelang/language.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tribelang {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

std::string conversation_key(const std::vector<Sentence>& sentences) {
  std::string key;
  for (const auto& s : sentences) {
    key += s.text();
    key += '\n';
  }
  return key;
}

[[noreturn]] void fail(const std::string& message) {
  throw LanguageError(message);
}

}  // namespace

std::string Sentence::text() const { return join(words); }

std::string Normalized::text() const { return join(tokens); }

Sentence make_sentence(std::string_view text) {
  Sentence s;
  std::string word;
  for (char c : text) {
    if (c == ' ') {
      if (!word.empty()) s.words.push_back(std::move(word));
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) s.words.push_back(std::move(word));
  return s;
}

Normalized normalize_utterance(std::string_view raw) {
  Normalized out;
  std::string token;
  for (char raw_c : raw) {
    unsigned char uc = static_cast<unsigned char>(raw_c);
    char c = raw_c;
    if (uc >= 'A' && uc <= 'Z') c = static_cast<char>(uc - 'A' + 'a');
    if (std::isspace(uc)) {
      if (!token.empty()) out.tokens.push_back(std::move(token));
      token.clear();
      continue;
    }
    if (!is_lower_alpha(c)) out.malformed = true;
    token += c;
  }
  if (!token.empty()) out.tokens.push_back(std::move(token));
  return out;
}

bool two_syllable(std::string_view word) {
  if (word.empty()) return false;
  int runs = 0;
  bool in_run = false;
  for (char c : word) {
    if (!is_lower_alpha(c)) return false;
    if (is_vowel(c)) {
      if (!in_run) ++runs;
      in_run = true;
    } else {
      in_run = false;
    }
  }
  return runs == 2;
}

bool adjacency(const Sentence& a, const Sentence& b) {
  for (const auto& wa : a.words)
    for (const auto& wb : b.words)
      if (wa == wb) return true;
  return false;
}

LanguageSpec LanguageSpec::build(std::string name, FeedbackTokens feedback,
                                 std::vector<Conversation> conversations,
                                 std::string generator_json) {
  LanguageSpec spec;
  if (name.empty()) fail("language name must be non-empty");
  if (feedback.positive.empty() ||
      !std::all_of(feedback.positive.begin(), feedback.positive.end(), is_lower_alpha))
    fail("feedback.positive must be a single word over a-z, got \"" +
         feedback.positive + "\"");
  Normalized confusion = normalize_utterance(feedback.confusion);
  if (confusion.malformed || confusion.tokens.empty())
    fail("feedback.confusion must be words over a-z, got \"" + feedback.confusion + "\"");
  if (conversations.empty()) fail("language must contain at least one conversation");

  spec.sentences_per_conversation_ = static_cast<int>(conversations[0].sentences.size());
  if (spec.sentences_per_conversation_ < 2)
    fail("conversation 1 has fewer than 2 sentences");
  for (size_t ci = 0; ci < conversations.size(); ++ci) {
    const auto& conv = conversations[ci];
    if (static_cast<int>(conv.sentences.size()) != spec.sentences_per_conversation_)
      fail("conversation " + std::to_string(ci + 1) + " has " +
           std::to_string(conv.sentences.size()) + " sentences, expected " +
           std::to_string(spec.sentences_per_conversation_));
    for (size_t si = 0; si < conv.sentences.size(); ++si) {
      const auto& sent = conv.sentences[si];
      if (ci == 0 && si == 0) {
        spec.words_per_sentence_ = static_cast<int>(sent.words.size());
        if (spec.words_per_sentence_ < 1) fail("sentences must contain at least one word");
      }
      if (static_cast<int>(sent.words.size()) != spec.words_per_sentence_)
        fail("conversation " + std::to_string(ci + 1) + " sentence " +
             std::to_string(si + 1) + " (\"" + sent.text() + "\") has " +
             std::to_string(sent.words.size()) + " words, expected " +
             std::to_string(spec.words_per_sentence_));
      for (const auto& word : sent.words) {
        if (word.empty() || !std::all_of(word.begin(), word.end(), is_lower_alpha))
          fail("word \"" + word + "\" in conversation " + std::to_string(ci + 1) +
               " sentence " + std::to_string(si + 1) + " has characters outside a-z");
        if (!two_syllable(word))
          fail("word \"" + word + "\" in conversation " + std::to_string(ci + 1) +
               " sentence " + std::to_string(si + 1) + " is not two-syllable");
      }
    }
  }

  int listed = 0;
  for (size_t ci = 0; ci < conversations.size(); ++ci) {
    const auto& conv = conversations[ci];
    for (size_t si = 0; si < conv.sentences.size(); ++si) {
      const auto& sent = conv.sentences[si];
      ++listed;
      for (const auto& word : sent.words)
        if (spec.lexicon_set_.insert(word).second) spec.lexicon_.push_back(word);
      if (spec.sentence_texts_.insert(sent.text()).second) spec.sentences_.push_back(sent);
      if (si + 1 < conv.sentences.size()) {
        spec.successor_.emplace(sent.text(), conv.sentences[si + 1]);
        if (!adjacency(sent, conv.sentences[si + 1]))
          spec.diagnostics_.push_back(
              {"adjacency",
               "conversation " + std::to_string(ci + 1) + ", sentences " +
                   std::to_string(si + 1) + "-" + std::to_string(si + 2),
               "\"" + sent.text() + "\" | \"" + conv.sentences[si + 1].text() +
                   "\" share no word"});
      }
    }
    spec.conversation_keys_.insert(conversation_key(conv.sentences));
  }
  spec.listed_sentence_count_ = listed;
  std::sort(spec.lexicon_.begin(), spec.lexicon_.end());

  if (spec.lexicon_set_.count(feedback.positive))
    fail("feedback.positive \"" + feedback.positive + "\" collides with the lexicon");
  if (spec.sentence_texts_.count(confusion.text()))
    fail("feedback.confusion \"" + confusion.text() + "\" collides with a sentence");

  if (static_cast<int>(spec.sentences_.size()) != listed)
    spec.diagnostics_.push_back(
        {"sentence_uniqueness", "conversation list",
         std::to_string(spec.sentences_.size()) + " distinct of " +
             std::to_string(listed) + " listed sentences"});
  {
    std::unordered_map<std::string, int> openings;
    for (size_t ci = 0; ci < conversations.size(); ++ci) {
      const std::string text = conversations[ci].sentences[0].text();
      auto [it, fresh] = openings.emplace(text, static_cast<int>(ci));
      if (!fresh)
        spec.diagnostics_.push_back(
            {"unique_opening",
             "conversations " + std::to_string(it->second + 1) + " and " +
                 std::to_string(ci + 1),
             "both open with \"" + text + "\""});
    }
  }

  spec.name_ = std::move(name);
  spec.feedback_ = std::move(feedback);
  spec.conversations_ = std::move(conversations);
  spec.generator_json_ = std::move(generator_json);
  return spec;
}

bool LanguageSpec::contains_word(std::string_view word) const {
  return lexicon_set_.count(std::string(word)) != 0;
}

bool LanguageSpec::contains_sentence_text(std::string_view text) const {
  return sentence_texts_.count(std::string(text)) != 0;
}

bool LanguageSpec::contains_conversation(const std::vector<Sentence>& quadruple) const {
  if (static_cast<int>(quadruple.size()) != sentences_per_conversation_) return false;
  return conversation_keys_.count(conversation_key(quadruple)) != 0;
}

LanguageSpec load_language(std::string_view document) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("language document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("language document must be a JSON object");
  if (!doc.contains("name") || !doc["name"].is_string())
    fail("field \"name\" missing or not a string");
  if (!doc.contains("feedback") || !doc["feedback"].is_object())
    fail("field \"feedback\" missing or not an object");
  const auto& fb = doc["feedback"];
  if (!fb.contains("positive") || !fb["positive"].is_string())
    fail("field \"feedback.positive\" missing or not a string");
  if (!fb.contains("confusion") || !fb["confusion"].is_string())
    fail("field \"feedback.confusion\" missing or not a string");
  if (!doc.contains("conversations") || !doc["conversations"].is_array())
    fail("field \"conversations\" missing or not an array");

  std::vector<Conversation> conversations;
  for (size_t ci = 0; ci < doc["conversations"].size(); ++ci) {
    const auto& jconv = doc["conversations"][ci];
    if (!jconv.is_array())
      fail("conversation " + std::to_string(ci + 1) + " is not an array");
    Conversation conv;
    for (size_t si = 0; si < jconv.size(); ++si) {
      if (!jconv[si].is_string())
        fail("conversation " + std::to_string(ci + 1) + " sentence " +
             std::to_string(si + 1) + " is not a string");
      conv.sentences.push_back(make_sentence(jconv[si].get<std::string>()));
    }
    conversations.push_back(std::move(conv));
  }

  std::string generator_json;
  if (doc.contains("generator")) generator_json = doc["generator"].dump();

  FeedbackTokens feedback{fb["positive"].get<std::string>(),
                          fb["confusion"].get<std::string>()};
  return LanguageSpec::build(doc["name"].get<std::string>(), std::move(feedback),
                             std::move(conversations), std::move(generator_json));
}

LanguageSpec load_language_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open language file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_language(buf.str());
}

std::string serialize_language(const LanguageSpec& spec) {
  nlohmann::ordered_json doc;
  doc["name"] = spec.name();
  doc["feedback"] = {{"positive", spec.feedback().positive},
                     {"confusion", spec.feedback().confusion}};
  if (!spec.generator_json().empty())
    doc["generator"] = nlohmann::ordered_json::parse(spec.generator_json());
  auto& convs = doc["conversations"] = nlohmann::ordered_json::array();
  for (const auto& conv : spec.conversations()) {
    auto& jconv = convs.emplace_back(nlohmann::ordered_json::array());
    for (const auto& sent : conv.sentences) jconv.push_back(sent.text());
  }
  return doc.dump(2) + "\n";
}

bool sentence_validity(const LanguageSpec& spec, const Normalized& message) {
  if (message.malformed) return false;
  if (static_cast<int>(message.tokens.size()) != spec.words_per_sentence()) return false;
  return spec.contains_sentence_text(message.text());
}

bool conversation_validity(const LanguageSpec& spec,
                           const std::vector<Sentence>& sentences) {
  return spec.contains_conversation(sentences);
}

std::optional<Sentence> successor(const LanguageSpec& spec, const Sentence& sentence) {
  const std::string text = sentence.text();
  if (!spec.contains_sentence_text(text))
    throw std::invalid_argument("successor: \"" + text + "\" is not a sentence of " +
                                spec.name());
  auto it = spec.successor_.find(text);
  if (it == spec.successor_.end()) return std::nullopt;
  return it->second;
}

}  // namespace tribelang
