#include "polsat/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>
#include <utility>
#include <thread>

extern char** environ;

namespace polsat {

namespace {

constexpr auto kPollInterval = std::chrono::milliseconds(5);

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  ~Fd() { reset(); }

  int get() const noexcept { return fd_; }
  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

class SpawnAttributes {
 public:
  SpawnAttributes() {
    posix_spawnattr_init(&attr_);
    posix_spawn_file_actions_init(&actions_);
  }
  ~SpawnAttributes() {
    posix_spawnattr_destroy(&attr_);
    posix_spawn_file_actions_destroy(&actions_);
  }
  SpawnAttributes(const SpawnAttributes&) = delete;
  SpawnAttributes& operator=(const SpawnAttributes&) = delete;

  posix_spawnattr_t attr_;
  posix_spawn_file_actions_t actions_;
};

// Reaps `pid` if it has exited. Returns true and fills `status` once reaped.
bool try_reap(pid_t pid, int& status) {
  while (true) {
    pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) return true;
    if (r == 0) return false;
    if (errno == EINTR) continue;
    return true;  // ECHILD: already gone
  }
}

int decode_status(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return -WTERMSIG(status);
  return -1;
}

// SIGTERM to the group, SIGKILL after `grace`, then reap.
int terminate_group(pid_t pid, std::chrono::duration<double> grace) {
  int status = 0;
  ::kill(-pid, SIGTERM);
  auto give_up = Clock::now() + std::chrono::duration_cast<Clock::duration>(grace);
  while (Clock::now() < give_up) {
    if (try_reap(pid, status)) {
      ::kill(-pid, SIGKILL);
      return decode_status(status);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  ::kill(-pid, SIGKILL);
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  return decode_status(status);
}

}  // namespace

ProcessOutcome run_process(const std::vector<std::string>& argv, Clock::time_point deadline, std::stop_token stop,
                           std::chrono::duration<double> grace) {
  ProcessOutcome outcome;
  const auto start = Clock::now();
  auto seconds_since_start = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  if (argv.empty()) {
    outcome.status = ProcessOutcome::Status::SpawnFailed;
    outcome.error = "empty command line";
    return outcome;
  }

  int pipe_fds[2];
  if (::pipe2(pipe_fds, O_CLOEXEC) != 0) {
    outcome.status = ProcessOutcome::Status::SpawnFailed;
    outcome.error = std::strerror(errno);
    return outcome;
  }
  Fd read_end(pipe_fds[0]);
  Fd write_end(pipe_fds[1]);

  pid_t pid = 0;
  {
    SpawnAttributes sa;
    sigset_t empty_mask, defaults;
    sigemptyset(&empty_mask);
    sigemptyset(&defaults);
    for (int sig : {SIGTERM, SIGINT, SIGPIPE, SIGHUP}) sigaddset(&defaults, sig);
    posix_spawnattr_setflags(&sa.attr_, POSIX_SPAWN_SETPGROUP | POSIX_SPAWN_SETSIGMASK | POSIX_SPAWN_SETSIGDEF);
    posix_spawnattr_setpgroup(&sa.attr_, 0);
    posix_spawnattr_setsigmask(&sa.attr_, &empty_mask);
    posix_spawnattr_setsigdefault(&sa.attr_, &defaults);
    posix_spawn_file_actions_addopen(&sa.actions_, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_adddup2(&sa.actions_, write_end.get(), STDOUT_FILENO);
    posix_spawn_file_actions_addopen(&sa.actions_, STDERR_FILENO, "/dev/null", O_WRONLY, 0);

    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    int rc = ::posix_spawn(&pid, args[0], &sa.actions_, &sa.attr_, args.data(), environ);
    if (rc != 0) {
      outcome.status = ProcessOutcome::Status::SpawnFailed;
      outcome.error = argv[0] + ": " + std::strerror(rc);
      outcome.elapsed = seconds_since_start();
      return outcome;
    }
  }
  write_end.reset();

  auto interrupted = [&]() -> std::optional<ProcessOutcome::Status> {
    if (stop.stop_requested()) return ProcessOutcome::Status::Cancelled;
    if (Clock::now() >= deadline) return ProcessOutcome::Status::TimedOut;
    return std::nullopt;
  };

  // Drain stdout until EOF.
  char buffer[4096];
  bool eof = false;
  while (!eof) {
    if (auto why = interrupted()) {
      outcome.exit_code = terminate_group(pid, grace);
      outcome.status = *why;
      outcome.elapsed = seconds_since_start();
      return outcome;
    }
    pollfd pfd{read_end.get(), POLLIN, 0};
    int ready = ::poll(&pfd, 1, static_cast<int>(kPollInterval.count()));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    ssize_t n = ::read(read_end.get(), buffer, sizeof buffer);
    if (n > 0)
      outcome.output.append(buffer, static_cast<std::size_t>(n));
    else if (n == 0 || errno != EINTR)
      eof = true;
  }

  // Stdout is closed; wait for the exit itself.
  int status = 0;
  while (!try_reap(pid, status)) {
    if (auto why = interrupted()) {
      outcome.exit_code = terminate_group(pid, grace);
      outcome.status = *why;
      outcome.elapsed = seconds_since_start();
      return outcome;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  outcome.elapsed = seconds_since_start();
  // Leftover members of the group (background grandchildren) go too.
  ::kill(-pid, SIGKILL);
  outcome.exit_code = decode_status(status);
  outcome.status = ProcessOutcome::Status::Exited;
  return outcome;
}

}  // namespace polsat
