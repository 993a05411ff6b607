// Copyright 2026 The Prefixfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefixfuzz/subprocess.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace prefixfuzz {
namespace {

using Clock = std::chrono::steady_clock;

// Only this much of the child's stderr is kept; the index lives on line 1.
constexpr size_t kMaxStderrBytes = 4096;

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd &) = delete;
  Fd &operator=(const Fd &) = delete;
  Fd(Fd &&other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Fd &operator=(Fd &&other) noexcept {
    if (this != &other) {
      Close();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  ~Fd() { Close(); }

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void Close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

absl::Status MakePipe(Fd &read_end, Fd &write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    return absl::InternalError(absl::StrCat("pipe2: ", std::strerror(errno)));
  }
  read_end = Fd(fds[0]);
  write_end = Fd(fds[1]);
  return absl::OkStatus();
}

void SetNonBlocking(int fd) {
  ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK);
}

void IgnoreSigpipeOnce() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

int RemainingMs(Clock::time_point deadline) {
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

}  // namespace

absl::StatusOr<Verdict> ValidateSubprocess(const std::vector<std::string> &argv,
                                           ByteSpan input,
                                           const SubprocessOptions &options,
                                           ExecutionStats &stats) {
  if (argv.empty()) {
    return absl::FailedPreconditionError("spawn failure: empty command");
  }
  IgnoreSigpipeOnce();

  Fd stdin_read, stdin_write, stderr_read, stderr_write, exec_read, exec_write;
  for (auto [r, w] : {std::pair<Fd *, Fd *>{&stdin_read, &stdin_write},
                      {&stderr_read, &stderr_write},
                      {&exec_read, &exec_write}}) {
    if (auto status = MakePipe(*r, *w); !status.ok()) return status;
  }
  Fd dev_null(::open("/dev/null", O_WRONLY | O_CLOEXEC));

  std::vector<char *> c_argv;
  c_argv.reserve(argv.size() + 1);
  for (const std::string &arg : argv) {
    c_argv.push_back(const_cast<char *>(arg.c_str()));
  }
  c_argv.push_back(nullptr);

  ++stats.executions;
  const Clock::time_point deadline = Clock::now() + options.timeout;
  pid_t pid = ::fork();
  if (pid < 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("spawn failure: fork: ", std::strerror(errno)));
  }
  if (pid == 0) {
    // Child: async-signal-safe calls only.
    ::dup2(stdin_read.get(), STDIN_FILENO);
    ::dup2(stderr_write.get(), STDERR_FILENO);
    if (dev_null.valid()) ::dup2(dev_null.get(), STDOUT_FILENO);
    ::signal(SIGPIPE, SIG_DFL);
    ::execvp(c_argv[0], c_argv.data());
    int err = errno;
    (void)!::write(exec_write.get(), &err, sizeof(err));
    ::_exit(127);
  }

  stdin_read.Close();
  stderr_write.Close();
  exec_write.Close();
  dev_null.Close();

  // The exec pipe closes on successful exec; otherwise it carries errno.
  int exec_errno = 0;
  ssize_t n;
  do {
    n = ::read(exec_read.get(), &exec_errno, sizeof(exec_errno));
  } while (n < 0 && errno == EINTR);
  if (n == sizeof(exec_errno)) {
    ::waitpid(pid, nullptr, 0);
    return absl::FailedPreconditionError(
        absl::StrCat("spawn failure: cannot execute '", argv[0],
                     "': ", std::strerror(exec_errno)));
  }

  SetNonBlocking(stdin_write.get());
  SetNonBlocking(stderr_read.get());
  if (input.empty()) stdin_write.Close();

  std::string err_text;
  size_t written = 0;
  bool timed_out = false;
  while (stdin_write.valid() || stderr_read.valid()) {
    pollfd fds[2];
    int nfds = 0;
    if (stdin_write.valid()) fds[nfds++] = {stdin_write.get(), POLLOUT, 0};
    if (stderr_read.valid()) fds[nfds++] = {stderr_read.get(), POLLIN, 0};
    int timeout_ms = RemainingMs(deadline);
    if (timeout_ms == 0) {
      timed_out = true;
      break;
    }
    int ready = ::poll(fds, nfds, timeout_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    for (int i = 0; i < nfds; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == stdin_write.get()) {
        ssize_t w = ::write(stdin_write.get(), input.data() + written,
                            input.size() - written);
        if (w > 0) written += static_cast<size_t>(w);
        // EPIPE: the child stopped reading, which is its right.
        if ((w < 0 && errno != EAGAIN && errno != EINTR) ||
            written == input.size()) {
          stdin_write.Close();
        }
      } else {
        char buf[1024];
        ssize_t r = ::read(stderr_read.get(), buf, sizeof(buf));
        if (r > 0) {
          size_t keep = std::min(static_cast<size_t>(r),
                                 kMaxStderrBytes - std::min(kMaxStderrBytes,
                                                            err_text.size()));
          err_text.append(buf, keep);
        } else if (r == 0 || (errno != EAGAIN && errno != EINTR)) {
          stderr_read.Close();
        }
      }
    }
  }
  stdin_write.Close();
  stderr_read.Close();

  int wstatus = 0;
  while (!timed_out) {
    pid_t done = ::waitpid(pid, &wstatus, WNOHANG);
    if (done == pid) break;
    if (done < 0 && errno != EINTR) break;
    if (RemainingMs(deadline) == 0) {
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::microseconds(200));
  }
  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, nullptr, 0);
    ++stats.timeouts;
    return Verdict::Incorrect();
  }
  if (WIFSIGNALED(wstatus)) {
    ++stats.crashes;
    return Verdict::Incorrect();
  }
  return DecodeVerdict(WEXITSTATUS(wstatus), err_text);
}

SubprocessExecutor::SubprocessExecutor(std::vector<std::string> argv,
                                       SubprocessOptions options)
    : argv_(std::move(argv)), options_(options) {}

std::string SubprocessExecutor::name() const {
  return absl::StrJoin(argv_, " ");
}

}  // namespace prefixfuzz
