#pragma once

#include <stdexcept>
#include <string>

namespace x0n {

// Error carrying a stable, machine-readable code ("not-normalizing",
// "insufficient-facts", ...) alongside a human-readable detail message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

}  // namespace x0n
