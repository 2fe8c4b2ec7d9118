#include "voxsync/text/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace voxsync::text {
namespace {

std::string Lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

bool IsLexiconWord(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || c == '\'';
  });
}

Pronunciation ParsePhones(std::istream& in, std::size_t line_no) {
  Pronunciation pron;
  std::string symbol;
  while (in >> symbol) {
    const auto phone = Phone::Parse(symbol);
    if (!phone) throw InvalidPhoneme(line_no, symbol);
    pron.push_back(*phone);
  }
  if (pron.empty()) throw ParseError(line_no, "empty pronunciation");
  return pron;
}

std::ifstream Open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon " + path.string());
  return in;
}

}  // namespace

const Pronunciation* LexiconLayer::Find(std::string_view word) const {
  const auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

void LexiconLayer::Insert(std::string word, Pronunciation pron) {
  entries_.insert_or_assign(std::move(word), std::move(pron));
}

LexiconLayer ParseCmuDict(std::istream& in) {
  LexiconLayer layer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with(";;;")) continue;

    std::istringstream fields(line);
    std::string word;
    fields >> word;
    if (word.empty()) continue;  // whitespace-only line
    // Alternate pronunciations WORD(2), WORD(3), ...
    if (word.size() > 3 && word.back() == ')') {
      const auto paren = word.rfind('(');
      if (paren != std::string::npos && paren > 0) continue;
    }
    Pronunciation pron = ParsePhones(fields, line_no);
    std::string key = Lowercase(word);
    // Keep the first entry if a word somehow appears twice.
    if (layer.Find(key) == nullptr) layer.Insert(std::move(key), std::move(pron));
  }
  return layer;
}

LexiconLayer LoadCmuDict(const std::filesystem::path& path) {
  auto in = Open(path);
  return ParseCmuDict(in);
}

LexiconLayer ParseCustomLexicon(std::istream& in) {
  LexiconLayer layer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(line_no, "expected word<TAB>pronunciation");
    }
    std::string word = Lowercase(line.substr(0, tab));
    if (!IsLexiconWord(word)) {
      throw ParseError(line_no, "word \"" + word + "\" is not [a-z']+");
    }
    std::istringstream phones(line.substr(tab + 1));
    layer.Insert(std::move(word), ParsePhones(phones, line_no));
  }
  return layer;
}

LexiconLayer LoadCustomLexicon(const std::filesystem::path& path) {
  auto in = Open(path);
  return ParseCustomLexicon(in);
}

std::string_view ToString(LexiconSource source) {
  switch (source) {
    case LexiconSource::kCustom: return "custom";
    case LexiconSource::kCmu: return "cmu";
    case LexiconSource::kG2p: return "g2p";
  }
  return "unknown";
}

LexiconStack::LexiconStack(std::shared_ptr<const LexiconLayer> custom,
                           std::shared_ptr<const LexiconLayer> cmu,
                           std::shared_ptr<const G2pRuleTable> g2p)
    : custom_(custom ? std::move(custom)
                     : std::make_shared<const LexiconLayer>()),
      cmu_(cmu ? std::move(cmu) : std::make_shared<const LexiconLayer>()),
      g2p_(g2p ? std::move(g2p) : std::make_shared<const G2pRuleTable>()) {}

Resolution LexiconStack::Resolve(std::string_view word) const {
  if (const auto* p = custom_->Find(word)) return {*p, LexiconSource::kCustom};
  if (const auto* p = cmu_->Find(word)) return {*p, LexiconSource::kCmu};
  return {g2p_->Apply(word), LexiconSource::kG2p};
}

}  // namespace voxsync::text
