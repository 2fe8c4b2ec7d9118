#ifndef VOXSYNC_TEXT_PHONEMIZE_H_
#define VOXSYNC_TEXT_PHONEMIZE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "voxsync/text/arpabet.h"
#include "voxsync/text/lexicon.h"
#include "voxsync/text/normalize.h"

namespace voxsync::text {

enum class UnitKind { kPhone, kWordBoundary, kPause };

struct PhonemeUnit {
  UnitKind kind = UnitKind::kPhone;
  Phone phone = Phone::FromIndex(0);  // meaningful only for kPhone

  static PhonemeUnit Of(Phone p) { return {UnitKind::kPhone, p}; }
  static PhonemeUnit Boundary() { return {UnitKind::kWordBoundary}; }
  static PhonemeUnit Pause() { return {UnitKind::kPause}; }

  // ARPAbet symbol, "|" for a word boundary, "_" for a pause.
  std::string_view symbol() const;

  friend bool operator==(const PhonemeUnit& a, const PhonemeUnit& b) {
    return a.kind == b.kind && (a.kind != UnitKind::kPhone || a.phone == b.phone);
  }
};

// Where each word's phones came from; diagnostics for `say` and tests.
struct WordResolution {
  std::string word;
  LexiconSource source;
  std::size_t first_unit;  // index into PhonemeSequence::units
  std::size_t unit_count;
};

struct PhonemeSequence {
  std::vector<PhonemeUnit> units;
  std::vector<WordResolution> words;

  bool empty() const { return units.empty(); }
};

// Resolves every word through the lexicon stack. Consecutive words are
// separated by a word boundary; any run of punctuation becomes one pause
// (which then replaces the boundary). The result never starts or ends with a
// boundary and never holds two adjacent pauses.
PhonemeSequence Phonemize(const NormalizedText& text,
                          const LexiconStack& lexicon);

// Space-separated unit symbols, e.g. "HH AH0 L OW1 _ W ER1 L D _".
std::string ToString(const PhonemeSequence& seq);

}  // namespace voxsync::text

#endif  // VOXSYNC_TEXT_PHONEMIZE_H_
