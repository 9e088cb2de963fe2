#pragma once

#include <stdexcept>
#include <string>

namespace minkbill {

// invalid_input: the caller handed us something malformed (bad file, degenerate
// geometry, origin outside a norm body). internal_alarm: an internal consistency
// check failed; if one of these ever fires the library itself is wrong.
enum class Errc { invalid_input, internal_alarm };

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(Errc::invalid_input, msg);
}

[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(Errc::internal_alarm, msg);
}

}  // namespace minkbill
