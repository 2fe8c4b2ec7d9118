#ifndef VOXSYNC_TOOLS_SIGNALS_H_
#define VOXSYNC_TOOLS_SIGNALS_H_

#include <pthread.h>
#include <signal.h>

#include <initializer_list>

namespace voxsync::tools {

// Blocks the given signals in the calling thread and every thread it starts
// later, so that WaitFor can pick them up synchronously. Call before any
// thread exists.
inline sigset_t BlockSignals(std::initializer_list<int> signals) {
  sigset_t set;
  sigemptyset(&set);
  for (int s : signals) sigaddset(&set, s);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

inline int WaitFor(const sigset_t& set) {
  int sig = 0;
  while (sigwait(&set, &sig) != 0) {
  }
  return sig;
}

}  // namespace voxsync::tools

#endif  // VOXSYNC_TOOLS_SIGNALS_H_
