#pragma once
#include <stdexcept>
#include <string>

namespace dwell {

// input outside its physical or configured validity domain
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// an iterative numerical procedure failed (non-convergence, step underflow, leakage)
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// file system failure
struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dwell
