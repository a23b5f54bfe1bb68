#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jonq {

// Input outside an operation's mathematical domain (singular matrix,
// non-J0 map passed to a J0-only routine, nested field extension, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed map or polynomial text. `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        message_(message),
        position_(position) {}

  const std::string& detail() const noexcept { return message_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string message_;
  std::size_t position_;
};

}  // namespace jonq
