#include "sphereflow/run_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>

#include "sphereflow/error.hpp"

namespace sphereflow {

RunLock::RunLock(const std::filesystem::path& dir) : path_(dir / kFileName) {
  const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0) {
    const std::string why = errno == EEXIST ? "run directory is locked by another process"
                                            : std::strerror(errno);
    throw Error(ErrorKind::IO, path_.string() + ": " + why);
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] const auto written = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

RunLock::~RunLock() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::IO, "cannot write " + tmp.string());
    os << content;
    os.flush();
    if (!os) throw Error(ErrorKind::IO, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::IO, "rename to " + path.string() + " failed: " + ec.message());
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path output_root() {
  const char* env = std::getenv("SPHEREFLOW_OUT");
  if (env != nullptr && *env != '\0') return env;
  return std::filesystem::current_path();
}

std::filesystem::path resolve_run_dir(const std::string& output_dir, const std::string& hash) {
  if (output_dir.empty()) return output_root() / "runs" / hash;
  const std::filesystem::path p(output_dir);
  return p.is_absolute() ? p : output_root() / p;
}

}  // namespace sphereflow
