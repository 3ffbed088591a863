#pragma once

#include <stdexcept>
#include <string>

namespace residua {

// Errors carry a short machine-readable code (stable across releases, used in
// CLI envelopes) plus a human-readable message.

class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// A well-formed request that the mathematics rejects (ring mismatch,
// non-monic divisor, unchecked regularity, ...).  CLI exit status 1.
class domain_error : public error {
 public:
  using error::error;
};

// Malformed input (unparsable literal, bad JSON shape, unknown field).
// CLI exit status 2.
class parse_error : public error {
 public:
  parse_error(const std::string& msg) : error("malformed-input", msg) {}
};

}  // namespace residua
