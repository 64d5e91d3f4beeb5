#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "alekit/format.hpp"
#include "alekit/model.hpp"

namespace alekit {

namespace {

std::string wire_csv(const dataset& d) {
  std::string out;
  bool first = true;
  for (std::size_t i : d.predictor_indices()) {
    if (!first) out += ',';
    out += csv_escape(d.columns[i].name);
    first = false;
  }
  out += '\n';
  for (std::size_t r = 0; r < d.n_rows; ++r) {
    first = true;
    for (std::size_t i : d.predictor_indices()) {
      if (!first) out += ',';
      out += csv_escape(d.columns[i].cell_text(r));
      first = false;
    }
    out += '\n';
  }
  return out;
}

// A child that never reads stdin must not kill us with SIGPIPE; with the
// signal ignored the write simply fails with EPIPE and we still collect the
// child's output and exit status.
void ignore_sigpipe_once() {
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

class exec_model final : public predictor {
 public:
  explicit exec_model(std::string command) : command_(std::move(command)) {
    if (command_.empty()) throw std::invalid_argument("empty predictor command");
  }

  concurrency_class concurrency() const override { return concurrency_class::serial_only; }

  std::vector<double> predict(const dataset& d) const override {
    std::string output = run_process(wire_csv(d));
    return parse_predictions(output, d.n_rows);
  }

 private:
  std::string run_process(const std::string& input) const {
    ignore_sigpipe_once();
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
      throw std::runtime_error("failed to create pipes for predictor command");

    pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("failed to launch predictor command");
    if (pid == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);

    // Feed stdin from a separate thread: the child may interleave reading and
    // writing, and a single-threaded write-all-then-read-all deadlocks once
    // both pipe buffers fill.
    std::thread writer([fd = to_child[1], &input] {
      std::size_t off = 0;
      while (off < input.size()) {
        ssize_t n = write(fd, input.data() + off, input.size() - off);
        if (n <= 0) break;
        off += static_cast<std::size_t>(n);
      }
      close(fd);
    });

    std::string output;
    char buf[4096];
    for (;;) {
      ssize_t n = read(from_child[0], buf, sizeof(buf));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      output.append(buf, static_cast<std::size_t>(n));
    }
    close(from_child[0]);
    writer.join();

    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFSIGNALED(status)) {
      std::ostringstream msg;
      msg << "predictor command was killed by signal " << WTERMSIG(status);
      throw std::runtime_error(msg.str());
    }
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0) {
      std::ostringstream msg;
      msg << "predictor command exited with status " << code;
      throw std::runtime_error(msg.str());
    }
    return output;
  }

  std::vector<double> parse_predictions(const std::string& output, std::size_t n_rows) const {
    std::vector<std::string> lines;
    std::string line;
    for (char c : output) {
      if (c == '\n') {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
        line.clear();
      } else {
        line += c;
      }
    }
    if (!line.empty()) lines.push_back(line);

    if (lines.size() != n_rows) {
      std::ostringstream msg;
      msg << "predictor command produced " << lines.size() << " lines, expected " << n_rows;
      throw std::runtime_error(msg.str());
    }
    std::vector<double> out(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
      errno = 0;
      char* end = nullptr;
      double v = std::strtod(lines[i].c_str(), &end);
      if (lines[i].empty() || end != lines[i].c_str() + lines[i].size() || errno == ERANGE ||
          v != v) {
        std::ostringstream msg;
        msg << "predictor output line " << (i + 1) << ": cannot parse '" << lines[i]
            << "' as a number";
        throw std::runtime_error(msg.str());
      }
      out[i] = v;
    }
    return out;
  }

  std::string command_;
};

}  // namespace

std::shared_ptr<const predictor> exec_predictor(const std::string& command) {
  return std::make_shared<exec_model>(command);
}

}  // namespace alekit
