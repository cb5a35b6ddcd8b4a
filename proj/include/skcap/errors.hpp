#pragma once

#include <stdexcept>
#include <string>

namespace skcap {

// Every library failure derives from Error. The CLI maps the categories to
// exit codes (parse -> 2, domain -> 3, numerical -> 4).
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Malformed input text (channel specs, flags).
struct ParseError : Error
{
  using Error::Error;
};

// Parameters outside the mathematical domain of an operation.
struct DomainError : Error
{
  using Error::Error;
};

// Channel parameters for which no finite-resource simulation exists.
struct SimulationDomainError : DomainError
{
  using DomainError::DomainError;
};

struct DimensionError : DomainError
{
  using DomainError::DomainError;
};

// Matrix not symmetric within tolerance.
struct ShapeError : DomainError
{
  using DomainError::DomainError;
};

// Covariance matrix violates the uncertainty principle.
struct PhysicalityError : DomainError
{
  using DomainError::DomainError;
};

// Relative-entropy support violation in the Fock oracle (cutoff too small or
// infinite relative entropy).
struct SupportError : DomainError
{
  using DomainError::DomainError;
};

struct NumericalError : Error
{
  using Error::Error;
};

struct DecompositionError : NumericalError
{
  using NumericalError::NumericalError;
};

// Gibbs matrix requested for a state that is pure (or nearly so) in some mode.
struct SingularGibbsError : NumericalError
{
  using NumericalError::NumericalError;
};

// An imaginary residue or identity check exceeded its tolerance.
struct NumericalConsistencyError : NumericalError
{
  using NumericalError::NumericalError;
};

struct ConstructionError : NumericalError
{
  using NumericalError::NumericalError;
};

struct OptimizationError : NumericalError
{
  using NumericalError::NumericalError;
};

struct OracleConsistencyError : NumericalError
{
  using NumericalError::NumericalError;
};

} // namespace skcap
