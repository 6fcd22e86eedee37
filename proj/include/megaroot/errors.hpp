#pragma once

#include <stdexcept>
#include <string>

namespace megaroot {

/// Invalid parameters or malformed inputs (CLI exit code 2).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failures (CLI exit code 4).
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace megaroot
