#pragma once

#include <stdexcept>
#include <string>

namespace skewpbw {

/// Invalid ring data: a failed law, a non-closed pattern, bad parameters.
class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration or representation budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A map failed to be an endomorphism or a sigma-derivation.
class MorphismError : public std::runtime_error {
 public:
  enum class Kind { NotAdditive, NotMultiplicative, UnitNotFixed, LeibnizViolation, WrongRing, WrongLength };

  MorphismError(Kind kind, std::string message, std::string witness = {})
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  Kind kind_;
  std::string witness_;
};

/// A commutation system does not define a skew PBW extension.
class AxiomViolation : public std::runtime_error {
 public:
  AxiomViolation(std::string message, std::string witness = {})
      : std::runtime_error(std::move(message)), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// Operation applied to an instance outside its domain (e.g. a non
/// endomorphism-type system handed to an endomorphism-type decider).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAnIdeal : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotEndomorphismType : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace skewpbw
