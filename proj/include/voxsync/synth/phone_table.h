#ifndef VOXSYNC_SYNTH_PHONE_TABLE_H_
#define VOXSYNC_SYNTH_PHONE_TABLE_H_

#include <cstdint>
#include <string_view>

#include "voxsync/text/arpabet.h"
#include "voxsync/text/phonemize.h"

namespace voxsync::synth {

// 64-bit FNV-1a over the bytes of s.
std::uint64_t Fnv1a64(std::string_view s);

inline constexpr int kMinToneHz = 100;
inline constexpr int kMaxToneHz = 400;

// 100 + Fnv1a64(symbol) mod 301. Two symbols may share this value.
int HashedFrequency(std::string_view symbol);

// The tone frequency assigned to a phone. Symbols are visited in canonical
// inventory order; one whose hashed frequency is already taken moves up 1 Hz
// at a time (wrapping from 400 to 100) until it finds a free slot, so every
// phone gets a distinct frequency.
int ToneFrequency(text::Phone phone);

// Unit durations in frames of 300 samples (80 frames per second):
// vowel 120 ms, consonant 80 ms, pause 200 ms, word boundary 40 ms.
int UnitFrames(const text::PhonemeUnit& unit);

}  // namespace voxsync::synth

#endif  // VOXSYNC_SYNTH_PHONE_TABLE_H_
