#include "voxsync/cli/say.h"

namespace voxsync::cli {

std::string PhonemeReport(const text::PhonemeSequence& seq) {
  std::string out = "phonemes: " + text::ToString(seq) + "\n";
  for (const auto& w : seq.words) {
    out += w.word;
    out += '\t';
    out += text::ToString(w.source);
    out += '\t';
    for (std::size_t i = 0; i < w.unit_count; ++i) {
      if (i > 0) out += ' ';
      out += seq.units[w.first_unit + i].symbol();
    }
    out += '\n';
  }
  return out;
}

}  // namespace voxsync::cli
