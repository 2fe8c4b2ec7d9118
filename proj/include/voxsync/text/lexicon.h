#ifndef VOXSYNC_TEXT_LEXICON_H_
#define VOXSYNC_TEXT_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voxsync/common/error.h"
#include "voxsync/text/arpabet.h"
#include "voxsync/text/g2p.h"
#include "voxsync/text/parse_error.h"

namespace voxsync::text {

using Pronunciation = std::vector<Phone>;

// A word -> pronunciation map; one layer of the lexicon stack.
class LexiconLayer {
 public:
  const Pronunciation* Find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

  // Later insertions of the same word replace earlier ones.
  void Insert(std::string word, Pronunciation pron);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, Pronunciation, Hash, std::equal_to<>>
      entries_;
};

// cmudict plain text: "WORD  PH PH PH" per line, ";;;" comments, and
// alternate pronunciations "WORD(2)" which are skipped. Words are lowercased.
// Throws ParseError (InvalidPhoneme for a bad symbol) with the line number.
LexiconLayer ParseCmuDict(std::istream& in);
LexiconLayer LoadCmuDict(const std::filesystem::path& path);

// Custom lexicon TSV: "word<TAB>PH PH ..." per line, '#' comments. A word
// listed twice keeps its last pronunciation.
LexiconLayer ParseCustomLexicon(std::istream& in);
LexiconLayer LoadCustomLexicon(const std::filesystem::path& path);

enum class LexiconSource { kCustom, kCmu, kG2p };

std::string_view ToString(LexiconSource source);

struct Resolution {
  Pronunciation phones;
  LexiconSource source;
};

// The three-layer pronunciation lookup: custom lexicon, then the CMU
// dictionary, then the letter-to-sound rules. Immutable once built; share
// freely between threads.
class LexiconStack {
 public:
  LexiconStack(std::shared_ptr<const LexiconLayer> custom,
               std::shared_ptr<const LexiconLayer> cmu,
               std::shared_ptr<const G2pRuleTable> g2p);

  Resolution Resolve(std::string_view word) const;

  const LexiconLayer& custom() const { return *custom_; }
  const LexiconLayer& cmu() const { return *cmu_; }
  const G2pRuleTable& g2p() const { return *g2p_; }

 private:
  std::shared_ptr<const LexiconLayer> custom_;
  std::shared_ptr<const LexiconLayer> cmu_;
  std::shared_ptr<const G2pRuleTable> g2p_;
};

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_LEXICON_H_
