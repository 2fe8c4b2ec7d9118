#include "voxsync/synth/phone_table.h"

#include <array>
#include <cmath>

namespace voxsync::synth {

std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

int HashedFrequency(std::string_view symbol) {
  constexpr std::uint64_t kSpan = kMaxToneHz - kMinToneHz + 1;
  return kMinToneHz + static_cast<int>(Fnv1a64(symbol) % kSpan);
}

namespace {

std::array<int, text::Phone::kNumSymbols> BuildTable() {
  std::array<int, text::Phone::kNumSymbols> table{};
  std::array<bool, kMaxToneHz + 1> taken{};
  const auto symbols = text::AllPhoneSymbols();
  for (int i = 0; i < text::Phone::kNumSymbols; ++i) {
    int hz = HashedFrequency(symbols[i]);
    while (taken[hz]) hz = hz == kMaxToneHz ? kMinToneHz : hz + 1;
    taken[hz] = true;
    table[i] = hz;
  }
  return table;
}

}  // namespace

int ToneFrequency(text::Phone phone) {
  static const auto table = BuildTable();
  return table[phone.index()];
}

int UnitFrames(const text::PhonemeUnit& unit) {
  double seconds = 0.0;
  switch (unit.kind) {
    case text::UnitKind::kPhone:
      seconds = unit.phone.is_vowel() ? 0.120 : 0.080;
      break;
    case text::UnitKind::kPause:
      seconds = 0.200;
      break;
    case text::UnitKind::kWordBoundary:
      seconds = 0.040;
      break;
  }
  return static_cast<int>(std::lround(seconds * 80.0));
}

}  // namespace voxsync::synth
