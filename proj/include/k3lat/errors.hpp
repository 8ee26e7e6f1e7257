#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

enum class ErrorKind {
  InvalidInput,
  DegenerateLattice,
  InvalidScale,
  UnsupportedSignature,
  NotInDualLattice,
  IndefiniteLattice,
  NegativeTarget,
  UnsupportedWeight,
  InvalidTau,
  InvalidModulus,
  TooManyTerms,
  OddLatticeUnsupported,
  AmbientMismatch,
  NotInvertible,
  RankTooLarge,
  NotNegativePlane,
  IndefinitePlane,
  BadSplitting,
  BadPolarizer,
  DegenerateTransfer,
  PrecisionExhausted,
  NotAnOrder,
  UnsupportedOrder,
  ResourceLimit,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace k3lat
