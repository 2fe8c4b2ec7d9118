#ifndef VOXSYNC_COMMON_ERROR_H_
#define VOXSYNC_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace voxsync {

// Base for every error raised by the library. Subclasses carry the
// structured detail (line numbers, offsets, offending symbols).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace voxsync

#endif  // VOXSYNC_COMMON_ERROR_H_
