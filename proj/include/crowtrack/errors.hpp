#pragma once

#include <stdexcept>
#include <string>

namespace crowtrack {

/// Violated precondition of a library call (mismatched sizes, out-of-domain input).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad initial box or particle count.
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A particle's patch is too small to build a histogram from.
class DegeneratePatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every particle of a frame was degenerate; the frame produced no estimate.
class TrackingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File, image or CSV problems. Messages carry the offending path / line.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crowtrack
