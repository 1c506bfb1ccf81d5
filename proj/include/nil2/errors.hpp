#pragma once

#include <stdexcept>
#include <string>

namespace nil2 {

struct cap_exceeded : std::runtime_error {
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// a machine-checked postcondition of a construction failed; indicates an
// implementation bug, never reported silently
struct check_failed : std::logic_error {
  explicit check_failed(const std::string& what) : std::logic_error(what) {}
};

struct not_homomorphism : std::runtime_error {
  explicit not_homomorphism(const std::string& what, std::string relator_ = "")
      : std::runtime_error(what), relator(std::move(relator_)) {}
  std::string relator;
};

struct parse_error : std::runtime_error {
  parse_error(const std::string& what, int line_, int col_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" +
                           std::to_string(col_)),
        line(line_),
        col(col_) {}
  int line, col;
};

}  // namespace nil2
