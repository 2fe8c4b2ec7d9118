#include "voxsync/text/arpabet.h"

#include <array>
#include <cassert>

namespace voxsync::text {
namespace {

constexpr std::array<std::string_view, Phone::kNumSymbols> kSymbols = {
    "AA0", "AA1", "AA2", "AE0", "AE1", "AE2", "AH0", "AH1", "AH2",
    "AO0", "AO1", "AO2", "AW0", "AW1", "AW2", "AY0", "AY1", "AY2",
    "EH0", "EH1", "EH2", "ER0", "ER1", "ER2", "EY0", "EY1", "EY2",
    "IH0", "IH1", "IH2", "IY0", "IY1", "IY2", "OW0", "OW1", "OW2",
    "OY0", "OY1", "OY2", "UH0", "UH1", "UH2", "UW0", "UW1", "UW2",
    "B",   "CH",  "D",   "DH",  "F",   "G",   "HH",  "JH",  "K",
    "L",   "M",   "N",   "NG",  "P",   "R",   "S",   "SH",  "T",
    "TH",  "V",   "W",   "Y",   "Z",   "ZH"};

int Find(std::string_view symbol) {
  for (int i = 0; i < Phone::kNumSymbols; ++i) {
    if (kSymbols[i] == symbol) return i;
  }
  return -1;
}

}  // namespace

std::optional<Phone> Phone::Parse(std::string_view symbol) {
  const int i = Find(symbol);
  if (i < 0) return std::nullopt;
  return Phone(i);
}

std::optional<Phone> Phone::ParseUnstressed(std::string_view symbol) {
  if (symbol.empty() || symbol.size() > 2) return std::nullopt;
  const int i = Find(symbol);
  if (i >= 0) return Phone(i);  // consonant
  for (int v = 0; v < kNumVowels; ++v) {
    if (kSymbols[v * 3].substr(0, 2) == symbol) return Phone(v * 3);
  }
  return std::nullopt;
}

Phone Phone::FromIndex(int index) {
  assert(index >= 0 && index < kNumSymbols);
  return Phone(index);
}

std::string_view Phone::symbol() const { return kSymbols[index_]; }

Phone Phone::WithStress(int stress) const {
  if (!is_vowel()) return *this;
  assert(stress >= 0 && stress <= 2);
  return Phone(index_ - index_ % 3 + stress);
}

std::span<const std::string_view> AllPhoneSymbols() { return kSymbols; }

}  // namespace voxsync::text
