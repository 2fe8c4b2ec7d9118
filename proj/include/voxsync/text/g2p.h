#ifndef VOXSYNC_TEXT_G2P_H_
#define VOXSYNC_TEXT_G2P_H_

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/text/arpabet.h"

namespace voxsync::text {

// Letter-context rewrite rules for words missing from every dictionary.
//
// Each rule reads LEFT[MATCH]RIGHT -> PHONES (see data/g2p_rules.txt for
// the context alphabet). At each position of the word the rules whose MATCH
// starts there are tried longest-MATCH first, ties in file order; the first
// one whose contexts hold emits its phones and consumes MATCH. Afterwards
// the first vowel receives primary stress and every other vowel stress 0.
class G2pRuleTable {
 public:
  struct Rule {
    std::string left;
    std::string match;
    std::string right;
    std::vector<Phone> phones;  // vowels unstressed
    int line = 0;
  };

  // Throws ParseError / InvalidPhoneme on malformed input.
  static G2pRuleTable Parse(std::istream& in);
  static G2pRuleTable Load(const std::filesystem::path& path);

  // Deterministic and total on words matching [a-z']+; never empty.
  std::vector<Phone> Apply(std::string_view word) const;

  std::size_t size() const { return rule_count_; }

 private:
  // Rules indexed by the first character of MATCH ('a'..'z', then '\'').
  std::vector<std::vector<Rule>> by_letter_ =
      std::vector<std::vector<Rule>>(27);
  std::size_t rule_count_ = 0;
};

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_G2P_H_
