#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <stdexcept>

#include "hypersonic/arena.hpp"
#include "hypersonic/protocol.hpp"

namespace hypersonic {

ExternalController::ExternalController(std::string command, double iteration_timeout_ms)
    : command_(std::move(command)), iteration_timeout_ms_(iteration_timeout_ms) {
  // A bot that exits early must not take the referee down with it.
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0) throw std::runtime_error("pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw std::runtime_error("pipe failed");
  }
  pid_ = ::fork();
  if (pid_ < 0) throw std::runtime_error("fork failed");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  ::fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  ::fcntl(from_child_, F_SETFD, FD_CLOEXEC);
}

ExternalController::~ExternalController() { finish(); }

bool ExternalController::write_all(const std::string& text) {
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t n = ::write(to_child_, text.data() + done, text.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    done += static_cast<std::size_t>(n);
  }
  return true;
}

bool ExternalController::read_line(std::string& line, double timeout_ms) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double, std::milli>(timeout_ms);
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return true;
    }
    const double left = std::chrono::duration<double, std::milli>(deadline - std::chrono::steady_clock::now()).count();
    if (left <= 0) return false;
    pollfd fd{from_child_, POLLIN, 0};
    const int ready = ::poll(&fd, 1, static_cast<int>(left) + 1);
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) return false;
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      dead_ = true;
      return false;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

TurnReply ExternalController::act(const GameState& s, int me, const Budget& budget) {
  TurnReply reply;
  if (dead_) {
    reply.crashed = true;
    reply.note = "process gone";
    return reply;
  }
  std::string message = started_ ? std::string() : encode_init(me);
  started_ = true;
  message += encode_turn(s, me);
  if (!write_all(message)) {
    dead_ = true;
    reply.crashed = true;
    reply.note = "write failed";
    return reply;
  }
  const double timeout =
      budget.mode == Budget::Mode::WallClock ? budget.millis + kLateGraceMs : iteration_timeout_ms_;
  std::string line;
  if (!read_line(line, timeout)) {
    reply.failed = true;
    reply.crashed = dead_;
    reply.note = dead_ ? "end of output" : "timeout";
    // A reply that arrives after the deadline belongs to this turn; drop it.
    if (!dead_) read_line(line, 10'000.0);
    return reply;
  }
  try {
    reply.action = reduce_action(s, me, parse_action(line));
  } catch (const ProtocolError& e) {
    reply.failed = true;
    reply.note = e.what();
  }
  return reply;
}

void ExternalController::finish() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(10'000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

}  // namespace hypersonic
