#pragma once

#include <stdexcept>
#include <string>

namespace nnt {

/* Error classes map one-to-one onto CLI exit codes (see README). */
enum class Errc {
  parse = 2,         // bad file / bad number grammar / unknown format version
  validation = 3,    // instance violates a structural invariant
  membership = 4,    // assignment outside its parameter space
  precondition = 5,  // operation precondition not met (dp shape, reduction input, ...)
  budget = 6,        // enumeration / digit budget exceeded
  evaluation = 7,    // activation precondition violated during a forward pass
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

private:
  Errc code_;
};

}  // namespace nnt
