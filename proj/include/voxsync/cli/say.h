#ifndef VOXSYNC_CLI_SAY_H_
#define VOXSYNC_CLI_SAY_H_

#include <string>

#include "voxsync/text/phonemize.h"

namespace voxsync::cli {

// "phonemes: <units>" followed by one "word <TAB> source <TAB> phones" line
// per word.
std::string PhonemeReport(const text::PhonemeSequence& seq);

}  // namespace voxsync::cli

#endif  // VOXSYNC_CLI_SAY_H_
