#include "voxsync/text/normalize.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <array>
#include <cassert>

namespace voxsync::text {
namespace {

constexpr std::array<const char*, 20> kOnes = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr std::array<const char*, 10> kTens = {
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy",
    "eighty", "ninety"};

constexpr std::size_t kMaxDigits = 6;

bool IsRetainedPunctuation(UChar32 c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
      return true;
    default:
      return false;
  }
}

bool IsApostrophe(UChar32 c) { return c == '\'' || c == 0x2019; }

// Appends the ASCII letters a lowercase letter folds to, or nothing if it has
// no Latin base letter.
void FoldLetter(UChar32 c, std::string& out) {
  if (c >= 'a' && c <= 'z') {
    out.push_back(static_cast<char>(c));
    return;
  }
  switch (c) {
    case 0x00DF: out += "ss"; return;  // ß
    case 0x00E6: out += "ae"; return;  // æ
    case 0x0153: out += "oe"; return;  // œ
    case 0x00F8: out += "o"; return;   // ø
    case 0x0142: out += "l"; return;   // ł
    case 0x0111: out += "d"; return;   // đ
    case 0x00F0: out += "d"; return;   // ð
    case 0x00FE: out += "th"; return;  // þ
    default: break;
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfd = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) return;
  icu::UnicodeString decomposed;
  if (!nfd->getDecomposition(c, decomposed) || decomposed.isEmpty()) return;
  const UChar32 base = u_tolower(decomposed.char32At(0));
  if (base >= 'a' && base <= 'z') out.push_back(static_cast<char>(base));
}

class Tokenizer {
 public:
  void Letters(std::string_view s) {
    FlushDigits();
    word_ += s;
  }
  void Apostrophe() {
    FlushDigits();
    word_.push_back('\'');
  }
  void Digit(char d) {
    FlushWord();
    digits_.push_back(d);
  }
  void Punctuation(char p) {
    Separator();
    tokens_.push_back({std::string(1, p), TokenKind::kPunctuation});
  }
  void Separator() {
    FlushWord();
    FlushDigits();
  }
  std::vector<Token> Finish() {
    Separator();
    return std::move(tokens_);
  }

 private:
  void FlushWord() {
    if (word_.find_first_not_of('\'') != std::string::npos) {
      tokens_.push_back({std::move(word_), TokenKind::kWord});
    }
    word_.clear();
  }
  void FlushDigits() {
    if (digits_.empty()) return;
    if (digits_.size() <= kMaxDigits) {
      for (auto& w : CardinalWords(std::stoi(digits_))) {
        tokens_.push_back({std::move(w), TokenKind::kWord});
      }
    }
    digits_.clear();
  }

  std::vector<Token> tokens_;
  std::string word_;
  std::string digits_;
};

void AppendBelowThousand(int n, std::vector<std::string>& out) {
  assert(n > 0 && n < 1000);
  if (n >= 100) {
    out.emplace_back(kOnes[n / 100]);
    out.emplace_back("hundred");
    n %= 100;
  }
  if (n >= 20) {
    out.emplace_back(kTens[n / 10]);
    n %= 10;
    if (n > 0) out.emplace_back(kOnes[n]);
  } else if (n > 0) {
    out.emplace_back(kOnes[n]);
  }
}

}  // namespace

std::vector<std::string> CardinalWords(int n) {
  assert(n >= 0 && n < 1000000);
  std::vector<std::string> out;
  if (n == 0) {
    out.emplace_back(kOnes[0]);
    return out;
  }
  if (n >= 1000) {
    AppendBelowThousand(n / 1000, out);
    out.emplace_back("thousand");
    n %= 1000;
  }
  if (n > 0) AppendBelowThousand(n, out);
  return out;
}

std::size_t CountCodePoints(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

NormalizedText NormalizeText(std::string_view raw) {
  const std::size_t length = CountCodePoints(raw);
  if (length > kMaxTextCodePoints) throw TextTooLong(length);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  const icu::UnicodeString composed = nfc->normalize(source, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");

  Tokenizer tokenizer;
  std::string folded;
  for (int32_t i = 0; i < composed.length(); i = composed.moveIndex32(i, 1)) {
    const UChar32 c = composed.char32At(i);
    if (c >= '0' && c <= '9') {
      tokenizer.Digit(static_cast<char>(c));
    } else if (IsRetainedPunctuation(c)) {
      tokenizer.Punctuation(static_cast<char>(c));
    } else if (IsApostrophe(c)) {
      tokenizer.Apostrophe();
    } else if (u_isalpha(c)) {
      folded.clear();
      FoldLetter(u_tolower(c), folded);
      // Letters without a Latin base are dropped without splitting the word.
      if (!folded.empty()) tokenizer.Letters(folded);
    } else if (u_getCombiningClass(c) != 0 || u_charType(c) == U_NON_SPACING_MARK) {
      // Stray combining marks left over after composition.
    } else {
      tokenizer.Separator();
    }
  }

  NormalizedText text{tokenizer.Finish()};
  bool any_word = false;
  for (const auto& t : text.tokens) any_word |= t.kind == TokenKind::kWord;
  if (!any_word) throw EmptyAfterNormalization();
  return text;
}

std::string Serialize(const NormalizedText& text) {
  std::string out;
  for (const auto& t : text.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

}  // namespace voxsync::text
