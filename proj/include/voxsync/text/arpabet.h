#ifndef VOXSYNC_TEXT_ARPABET_H_
#define VOXSYNC_TEXT_ARPABET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace voxsync::text {

// One of the 39 ARPAbet phonemes. Vowels carry a stress digit (0/1/2), so
// the full symbol inventory is 15 vowels x 3 stresses + 24 consonants = 69.
//
// Stored as an index into a fixed canonical table: vowels in alphabetical
// order with stresses 0,1,2, followed by consonants in alphabetical order.
class Phone {
 public:
  static constexpr int kNumSymbols = 69;
  static constexpr int kNumVowels = 15;
  static constexpr int kNumConsonants = 24;

  // Accepts only fully specified symbols ("AH0", "K"); a vowel without a
  // stress digit or a consonant with one is rejected.
  static std::optional<Phone> Parse(std::string_view symbol);

  // Accepts a vowel base without stress ("AH", returned with stress 0) or a
  // consonant. Used by the rule table, whose stress is assigned later.
  static std::optional<Phone> ParseUnstressed(std::string_view symbol);

  static Phone FromIndex(int index);

  int index() const { return index_; }
  std::string_view symbol() const;
  bool is_vowel() const { return index_ < kNumVowels * 3; }
  // Stress digit for vowels; -1 for consonants.
  int stress() const { return is_vowel() ? index_ % 3 : -1; }
  // Same vowel with a different stress. Consonants are returned unchanged.
  Phone WithStress(int stress) const;

  friend bool operator==(Phone a, Phone b) { return a.index_ == b.index_; }
  friend bool operator!=(Phone a, Phone b) { return a.index_ != b.index_; }

 private:
  explicit Phone(int index) : index_(static_cast<std::uint8_t>(index)) {}
  std::uint8_t index_;
};

// All 69 symbols in canonical order.
std::span<const std::string_view> AllPhoneSymbols();

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_ARPABET_H_
