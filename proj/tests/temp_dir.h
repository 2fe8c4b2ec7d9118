#ifndef VOXSYNC_TESTS_TEMP_DIR_H_
#define VOXSYNC_TESTS_TEMP_DIR_H_

#include <filesystem>
#include <random>
#include <string>

namespace voxsync::testing {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("voxsync-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace voxsync::testing

#endif  // VOXSYNC_TESTS_TEMP_DIR_H_
