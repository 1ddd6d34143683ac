#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace wmlab {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;

  bool ok() const { return !timed_out && exit_code == 0; }
};

/// Runs `command` through /bin/sh, feeding `input` on stdin and collecting
/// stdout/stderr. The child is killed once `timeout` elapses.
ProcessResult run_command(const std::string& command, std::string_view input,
                          std::chrono::milliseconds timeout);

}  // namespace wmlab
