#pragma once

#include <stdexcept>
#include <string>

namespace attodress {

// Base for every error raised by the library. The CLI maps subclasses to
// process exit codes (see tools/attodress.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user input: bad grid, out-of-range parameter, unknown config key,
// mismatched grids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Loss of numerical control: NaN, norm drift, integrator drift.
class StabilityError : public Error {
 public:
  using Error::Error;
};

// Not enough negative eigenvalues for the requested basis.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

// Maximum-overlap tracking of adiabatic states could not decide.
class ContinuityError : public Error {
 public:
  using Error::Error;
};

// A projected column vanished before Gram-Schmidt normalization.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// |a_n(t)| fell below the amplitude floor inside the probe window.
class DepletionSingularityError : public Error {
 public:
  DepletionSingularityError(const std::string& what, int state, double time)
      : Error(what), state_(state), time_(time) {}

  int state() const noexcept { return state_; }
  double time() const noexcept { return time_; }

 private:
  int state_;
  double time_;
};

}  // namespace attodress
