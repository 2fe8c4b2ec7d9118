#ifndef VOXSYNC_TEXT_NORMALIZE_H_
#define VOXSYNC_TEXT_NORMALIZE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/common/error.h"

namespace voxsync::text {

inline constexpr std::size_t kMaxTextCodePoints = 1000;

class TextTooLong : public Error {
 public:
  explicit TextTooLong(std::size_t code_points)
      : Error("text has " + std::to_string(code_points) +
              " characters; the limit is " +
              std::to_string(kMaxTextCodePoints)),
        code_points_(code_points) {}
  std::size_t code_points() const { return code_points_; }

 private:
  std::size_t code_points_;
};

class EmptyAfterNormalization : public Error {
 public:
  EmptyAfterNormalization() : Error("no words remain after normalization") {}
};

enum class TokenKind { kWord, kPunctuation };

struct Token {
  std::string surface;  // lowercase; [a-z']+ for words, one of .,!?;: else
  TokenKind kind = TokenKind::kWord;

  friend bool operator==(const Token&, const Token&) = default;
};

struct NormalizedText {
  std::vector<Token> tokens;

  friend bool operator==(const NormalizedText&, const NormalizedText&) =
      default;
};

// Normalizes raw UTF-8 request text:
//  - NFC composition, then lowercase;
//  - Latin letters with diacritics fold to their base letter (a few
//    ligatures such as "ß" expand to two letters);
//  - whitespace and unretained symbols separate tokens;
//  - . , ! ? ; : become single-character punctuation tokens;
//  - digit runs of at most six digits become English cardinal words, longer
//    runs are dropped;
//  - tokens made only of apostrophes are dropped.
//
// Throws TextTooLong when the input exceeds kMaxTextCodePoints code points
// and EmptyAfterNormalization when no word token remains.
NormalizedText NormalizeText(std::string_view raw);

// Space-joined token surfaces. NormalizeText(Serialize(t)) == t.
std::string Serialize(const NormalizedText& text);

// English cardinal words for 0 <= n < 1,000,000, e.g. 42 -> {forty, two}.
std::vector<std::string> CardinalWords(int n);

// Number of Unicode code points in a UTF-8 string (invalid bytes count as
// one each).
std::size_t CountCodePoints(std::string_view utf8);

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_NORMALIZE_H_
