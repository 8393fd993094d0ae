#ifndef MLOOP_ERRORS_HPP
#define MLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mloop {

/// Base class for all failures raised by the library. `kind()` is a stable
/// machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define MLOOP_DEFINE_ERROR(NAME)                                  \
  class NAME : public Error {                                     \
  public:                                                         \
    explicit NAME(const std::string& what = #NAME)                \
        : Error(#NAME, what) {}                                   \
  }

// exact scalars
MLOOP_DEFINE_ERROR(DivisionByZero);
MLOOP_DEFINE_ERROR(NotRootOfUnity);

// algebra construction
MLOOP_DEFINE_ERROR(UnsupportedSeries);
MLOOP_DEFINE_ERROR(RankOutOfRange);
MLOOP_DEFINE_ERROR(RankMismatch);

// automorphisms
MLOOP_DEFINE_ERROR(NotBracketPreserving);
MLOOP_DEFINE_ERROR(NotInvertible);
MLOOP_DEFINE_ERROR(CartanNotNormalized);
MLOOP_DEFINE_ERROR(NotAdNilpotent);
MLOOP_DEFINE_ERROR(BaseRecoveryFailed);
MLOOP_DEFINE_ERROR(InvalidFamily);

// Laurent / ideal data
MLOOP_DEFINE_ERROR(DimensionMismatch);
MLOOP_DEFINE_ERROR(IndistinctClasses);
MLOOP_DEFINE_ERROR(NotInZeroComponent);

// loop algebra elements
MLOOP_DEFINE_ERROR(NotHomogeneous);
MLOOP_DEFINE_ERROR(ContextMismatch);

// representation oracle
MLOOP_DEFINE_ERROR(SpecMismatch);
MLOOP_DEFINE_ERROR(NotHighestWeightModule);

// classification
MLOOP_DEFINE_ERROR(NotDominantIntegral);
MLOOP_DEFINE_ERROR(DuplicateEvaluationClass);
MLOOP_DEFINE_ERROR(EnumerationBoundExceeded);
MLOOP_DEFINE_ERROR(InvalidEntries);

#undef MLOOP_DEFINE_ERROR

/// Automorphism order search gave up below the bound.
class OrderNotFound : public Error {
public:
  explicit OrderNotFound(unsigned bound)
      : Error("OrderNotFound",
              "no power up to " + std::to_string(bound) + " is the identity"),
        bound_(bound) {}
  unsigned bound() const { return bound_; }

private:
  unsigned bound_;
};

/// Parse failure; position is a byte offset into the input text.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("SyntaxError",
              what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace mloop

#endif
