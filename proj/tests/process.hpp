// Copyright 2026 The regenum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal child-process helpers for driving the command-line tool.

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

extern char** environ;

namespace regenum::testing_util {

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Child {
 public:
  // Starts `args` with stdout and stderr sent to the given files.
  Child(const std::vector<std::string>& args, const std::filesystem::path& out, const std::filesystem::path& err) {
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, 1, out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_addopen(&actions, 2, err.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    const int rc = posix_spawn(&pid_, argv[0], &actions, nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) throw std::runtime_error("posix_spawn failed for " + args[0]);
  }
  Child(const Child&) = delete;
  Child& operator=(const Child&) = delete;
  ~Child() {
    if (!status_) {
      ::kill(pid_, SIGKILL);
      wait();
    }
  }

  // Exit status, or 128 + signal number.
  int wait() {
    if (!status_) {
      int st = 0;
      ::waitpid(pid_, &st, 0);
      status_ = WIFEXITED(st) ? WEXITSTATUS(st) : 128 + WTERMSIG(st);
    }
    return *status_;
  }

  void kill(int sig = SIGKILL) { ::kill(pid_, sig); }

 private:
  pid_t pid_ = -1;
  std::optional<int> status_;
};

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("regenum-test-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline Outcome run_process(const std::vector<std::string>& args) {
  static int serial = 0;
  const auto dir = scratch_dir();
  const auto out = dir / ("out" + std::to_string(serial));
  const auto err = dir / ("err" + std::to_string(serial++));
  Outcome o;
  {
    Child c(args, out, err);
    o.exit_code = c.wait();
  }
  o.out = slurp(out);
  o.err = slurp(err);
  return o;
}

// Polls `path` until `pred(contents)` holds or the deadline passes.
template <typename Pred>
bool wait_for_file(const std::filesystem::path& path, Pred pred,
                   std::chrono::milliseconds timeout = std::chrono::seconds(60)) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (std::chrono::steady_clock::now() < deadline) {
    if (pred(slurp(path))) return true;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
  return false;
}

// Port announced by a master on stderr ("listening on port N").
inline std::optional<int> announced_port(const std::filesystem::path& err_path) {
  std::optional<int> port;
  wait_for_file(err_path, [&](const std::string& text) {
    const auto at = text.find("listening on port ");
    if (at == std::string::npos || text.find('\n', at) == std::string::npos) return false;
    port = std::stoi(text.substr(at + 18));
    return true;
  });
  return port;
}

// Report lines that do not depend on how or how fast the job ran.
inline std::string stable_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.starts_with("mode\t") || line.starts_with("elapsed\t") || line.starts_with("throughput\t")) continue;
    out += line + '\n';
  }
  return out;
}

inline std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace regenum::testing_util
