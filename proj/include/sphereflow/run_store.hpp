#pragma once

#include <filesystem>
#include <string>

namespace sphereflow {

/// Exclusive ownership of a run directory through a `.lock` file created with O_EXCL.
/// Errors: IO when the directory is already locked or not writable.
class RunLock {
 public:
  explicit RunLock(const std::filesystem::path& dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

  static constexpr const char* kFileName = ".lock";

 private:
  std::filesystem::path path_;
};

/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

/// SPHEREFLOW_OUT when set and nonempty, else the current directory.
std::filesystem::path output_root();

/// Absolute output_dir is used as is; relative ones and the default runs/<hash> resolve
/// against output_root().
std::filesystem::path resolve_run_dir(const std::string& output_dir, const std::string& hash);

}  // namespace sphereflow
