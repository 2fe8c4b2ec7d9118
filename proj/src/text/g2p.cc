#include "voxsync/text/g2p.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "voxsync/text/parse_error.h"

namespace voxsync::text {
namespace {

constexpr std::array<std::string_view, 6> kSuffixes = {"er", "e",   "es",
                                                       "ed", "ing", "ely"};

bool IsLetter(char c) { return c >= 'a' && c <= 'z'; }
bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}
bool IsConsonant(char c) { return IsLetter(c) && !IsVowel(c); }
bool IsVoiced(char c) {
  return std::string_view("bdgjlmnrvwz").find(c) != std::string_view::npos;
}
bool IsFrontVowel(char c) { return c == 'e' || c == 'i' || c == 'y'; }

bool IsDigraphH(std::string_view two) {
  return two == "th" || two == "ch" || two == "sh";
}

int Bucket(char c) { return c == '\'' ? 26 : c - 'a'; }

bool IsContextSymbol(char c) {
  return IsLetter(c) || c == '\'' ||
         std::string_view("|#:^.+%&@").find(c) != std::string_view::npos;
}

// Matches ctx[ci..] against word[wi..] moving right.
bool MatchRight(std::string_view ctx, std::size_t ci, std::string_view word,
                std::size_t wi) {
  if (ci == ctx.size()) return true;
  const std::size_t n = word.size();
  const char c = ctx[ci];
  switch (c) {
    case '|':
      return wi == n && MatchRight(ctx, ci + 1, word, wi);
    case '#':
      for (std::size_t k = wi; k < n && IsVowel(word[k]); ++k) {
        if (MatchRight(ctx, ci + 1, word, k + 1)) return true;
      }
      return false;
    case ':':
      for (std::size_t k = wi;; ++k) {
        if (MatchRight(ctx, ci + 1, word, k)) return true;
        if (k >= n || !IsConsonant(word[k])) return false;
      }
    case '^':
      return wi < n && IsConsonant(word[wi]) &&
             MatchRight(ctx, ci + 1, word, wi + 1);
    case '.':
      return wi < n && IsVoiced(word[wi]) &&
             MatchRight(ctx, ci + 1, word, wi + 1);
    case '+':
      return wi < n && IsFrontVowel(word[wi]) &&
             MatchRight(ctx, ci + 1, word, wi + 1);
    case '%':
      for (std::string_view s : kSuffixes) {
        if (word.substr(wi).starts_with(s) &&
            MatchRight(ctx, ci + 1, word, wi + s.size())) {
          return true;
        }
      }
      return false;
    case '&':
    case '@': {
      if (wi + 1 < n && IsDigraphH(word.substr(wi, 2)) &&
          MatchRight(ctx, ci + 1, word, wi + 2)) {
        return true;
      }
      const std::string_view singles = c == '&' ? "scgzxj" : "tsrdlznj";
      return wi < n && singles.find(word[wi]) != std::string_view::npos &&
             MatchRight(ctx, ci + 1, word, wi + 1);
    }
    default:
      return wi < n && word[wi] == c && MatchRight(ctx, ci + 1, word, wi + 1);
  }
}

// Matches ctx[..ci) against word[..wi) moving left.
bool MatchLeft(std::string_view ctx, std::size_t ci, std::string_view word,
               std::size_t wi) {
  if (ci == 0) return true;
  const char c = ctx[ci - 1];
  switch (c) {
    case '|':
      return wi == 0 && MatchLeft(ctx, ci - 1, word, wi);
    case '#':
      for (std::size_t k = wi; k > 0 && IsVowel(word[k - 1]); --k) {
        if (MatchLeft(ctx, ci - 1, word, k - 1)) return true;
      }
      return false;
    case ':':
      for (std::size_t k = wi;; --k) {
        if (MatchLeft(ctx, ci - 1, word, k)) return true;
        if (k == 0 || !IsConsonant(word[k - 1])) return false;
      }
    case '^':
      return wi > 0 && IsConsonant(word[wi - 1]) &&
             MatchLeft(ctx, ci - 1, word, wi - 1);
    case '.':
      return wi > 0 && IsVoiced(word[wi - 1]) &&
             MatchLeft(ctx, ci - 1, word, wi - 1);
    case '+':
      return wi > 0 && IsFrontVowel(word[wi - 1]) &&
             MatchLeft(ctx, ci - 1, word, wi - 1);
    case '&':
    case '@': {
      if (wi >= 2 && IsDigraphH(word.substr(wi - 2, 2)) &&
          MatchLeft(ctx, ci - 1, word, wi - 2)) {
        return true;
      }
      const std::string_view singles = c == '&' ? "scgzxj" : "tsrdlznj";
      return wi > 0 && singles.find(word[wi - 1]) != std::string_view::npos &&
             MatchLeft(ctx, ci - 1, word, wi - 1);
    }
    default:
      return wi > 0 && word[wi - 1] == c &&
             MatchLeft(ctx, ci - 1, word, wi - 1);
  }
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

G2pRuleTable G2pRuleTable::Parse(std::istream& in) {
  G2pRuleTable table;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty() || line.front() == ';') continue;

    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError(line_no, "missing \"->\"");
    }
    const std::string_view lhs = Trim(line.substr(0, arrow));
    const auto open = lhs.find('[');
    const auto close = lhs.find(']');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        close < open + 2 || lhs.find('[', open + 1) != std::string_view::npos ||
        lhs.find(']', close + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected LEFT[MATCH]RIGHT");
    }
    Rule rule;
    rule.left = std::string(lhs.substr(0, open));
    rule.match = std::string(lhs.substr(open + 1, close - open - 1));
    rule.right = std::string(lhs.substr(close + 1));
    rule.line = line_no;
    for (char c : rule.match) {
      if (!IsLetter(c) && c != '\'') {
        throw ParseError(line_no, "match may contain only letters and '");
      }
    }
    for (const std::string* ctx : {&rule.left, &rule.right}) {
      for (char c : *ctx) {
        if (!IsContextSymbol(c)) {
          throw ParseError(line_no,
                           std::string("unknown context symbol '") + c + "'");
        }
      }
    }
    if (rule.left.find('%') != std::string::npos) {
      throw ParseError(line_no, "'%' is only valid in the right context");
    }
    std::istringstream phones{std::string(line.substr(arrow + 2))};
    std::string symbol;
    while (phones >> symbol) {
      const auto phone = Phone::ParseUnstressed(symbol);
      if (!phone) throw InvalidPhoneme(line_no, symbol);
      rule.phones.push_back(*phone);
    }
    table.by_letter_[Bucket(rule.match.front())].push_back(std::move(rule));
    ++table.rule_count_;
  }
  for (auto& bucket : table.by_letter_) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [](const Rule& a, const Rule& b) {
                       return a.match.size() > b.match.size();
                     });
  }
  return table;
}

G2pRuleTable G2pRuleTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rule table " + path.string());
  return Parse(in);
}

std::vector<Phone> G2pRuleTable::Apply(std::string_view word) const {
  std::vector<Phone> out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    const char c = word[pos];
    if (!IsLetter(c) && c != '\'') {
      ++pos;
      continue;
    }
    bool matched = false;
    for (const Rule& rule : by_letter_[Bucket(c)]) {
      if (word.compare(pos, rule.match.size(), rule.match) != 0) continue;
      if (!MatchLeft(rule.left, rule.left.size(), word, pos)) continue;
      if (!MatchRight(rule.right, 0, word, pos + rule.match.size())) continue;
      out.insert(out.end(), rule.phones.begin(), rule.phones.end());
      pos += rule.match.size();
      matched = true;
      break;
    }
    if (!matched) ++pos;
  }
  if (out.empty()) out.push_back(*Phone::ParseUnstressed("AH"));

  bool stressed = false;
  for (Phone& p : out) {
    if (!p.is_vowel()) continue;
    p = p.WithStress(stressed ? 0 : 1);
    stressed = true;
  }
  return out;
}

}  // namespace voxsync::text
