#ifndef VOXSYNC_DSP_EXEC_H_
#define VOXSYNC_DSP_EXEC_H_

namespace voxsync::dsp {

// How many OpenMP threads a frame-parallel kernel may use. 0 picks the
// OpenMP default; 1 runs the same code on the calling thread, which is what
// synthesizer workers use so that request-level and frame-level parallelism
// do not multiply.
struct Exec {
  int threads = 0;

  static Exec Serial() { return Exec{1}; }
  int resolved_threads() const;
};

}  // namespace voxsync::dsp

#endif  // VOXSYNC_DSP_EXEC_H_
