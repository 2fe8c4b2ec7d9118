#include "voxsync/text/phonemize.h"

namespace voxsync::text {

std::string_view PhonemeUnit::symbol() const {
  switch (kind) {
    case UnitKind::kPhone: return phone.symbol();
    case UnitKind::kWordBoundary: return "|";
    case UnitKind::kPause: return "_";
  }
  return "?";
}

PhonemeSequence Phonemize(const NormalizedText& text,
                          const LexiconStack& lexicon) {
  PhonemeSequence seq;
  bool pending_pause = false;
  for (const Token& token : text.tokens) {
    if (token.kind == TokenKind::kPunctuation) {
      pending_pause = true;
      continue;
    }
    if (pending_pause) {
      seq.units.push_back(PhonemeUnit::Pause());
      pending_pause = false;
    } else if (!seq.units.empty()) {
      seq.units.push_back(PhonemeUnit::Boundary());
    }
    Resolution r = lexicon.Resolve(token.surface);
    seq.words.push_back(
        {token.surface, r.source, seq.units.size(), r.phones.size()});
    for (Phone p : r.phones) seq.units.push_back(PhonemeUnit::Of(p));
  }
  if (pending_pause) seq.units.push_back(PhonemeUnit::Pause());
  return seq;
}

std::string ToString(const PhonemeSequence& seq) {
  std::string out;
  for (const auto& u : seq.units) {
    if (!out.empty()) out.push_back(' ');
    out += u.symbol();
  }
  return out;
}

}  // namespace voxsync::text
