#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

// Shared scaffolding for the test binaries: fixture locations, scratch files,
// and exception-message capture.

inline std::string fixture_path(const std::string& name) {
  return std::string(ALEKIT_SOURCE_DIR) + "/data/" + name;
}

// Scratch directory wiped on destruction; each test that writes files makes
// its own.
struct scratch_dir {
  std::filesystem::path path;

  explicit scratch_dir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("alekit_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~scratch_dir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }

  std::string file(const std::string& name, const std::string& content) const {
    std::filesystem::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p.string();
  }
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs fn, expecting it to throw E; returns the exception message ("" when
// nothing was thrown) so tests can assert on its content.
template <typename E>
std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e.what();
  }
  return "";
}

inline bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}
