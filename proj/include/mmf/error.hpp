#pragma once

#include <stdexcept>
#include <string>

namespace mmf {

// Raised for every mathematical precondition failure. The message is the
// stable error tag that the command line tool reports.
class math_error : public std::runtime_error {
 public:
  explicit math_error(const std::string& tag) : std::runtime_error(tag) {}
};

}  // namespace mmf
