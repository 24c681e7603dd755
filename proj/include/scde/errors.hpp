#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scde {

//! Bad input data or flags; the CLI maps these to exit code 2.
class InvalidInput : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! A numerical procedure failed to converge or has no solution; exit code 3.
class NumericalError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class TooFewPoints : public InvalidInput
{
public:
  explicit TooFewPoints(std::size_t n, std::size_t required = 2)
    : InvalidInput("TooFewPoints: got " + std::to_string(n) +
                   " points, need at least " + std::to_string(required))
  {
  }
};

class NonFiniteValue : public InvalidInput
{
public:
  explicit NonFiniteValue(std::size_t index)
    : InvalidInput("NonFiniteValue: non-finite sample value at index " +
                   std::to_string(index))
    , index_(index)
  {
  }
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

class InvalidN : public InvalidInput
{
public:
  explicit InvalidN(std::size_t n)
    : InvalidInput("InvalidN: sample size " + std::to_string(n) +
                   " is too small")
  {
  }
};

class DegenerateSample : public InvalidInput
{
public:
  DegenerateSample()
    : InvalidInput("DegenerateSample: all sample values are identical")
  {
  }
};

class OverrideOutOfGrid : public InvalidInput
{
public:
  OverrideOutOfGrid(double tstar, double extent)
    : InvalidInput("OverrideOutOfGrid: t* override " + std::to_string(tstar) +
                   " exceeds grid extent " + std::to_string(extent))
  {
  }
};

class VarianceUndefined : public InvalidInput
{
public:
  explicit VarianceUndefined(std::size_t n)
    : InvalidInput("VarianceUndefined: variance requires n >= 3, got n = " +
                   std::to_string(n))
  {
  }
};

class ZeroIQR : public InvalidInput
{
public:
  ZeroIQR()
    : InvalidInput("ZeroIQR: interquartile range and standard deviation "
                   "are both zero")
  {
  }
};

class InsufficientPoints : public InvalidInput
{
public:
  explicit InsufficientPoints(std::size_t n)
    : InvalidInput("InsufficientPoints: scaling fit needs at least 3 "
                   "distinct sample sizes, got " + std::to_string(n))
  {
  }
};

class ParseError : public InvalidInput
{
public:
  ParseError(const std::string& file, std::size_t line, const std::string& tok)
    : InvalidInput("ParseError: " + file + ":" + std::to_string(line) +
                   ": cannot parse '" + tok + "' as a number")
  {
  }
};

class RangeTooNarrow : public InvalidInput
{
public:
  explicit RangeTooNarrow(double tail_mass)
    : InvalidInput("RangeTooNarrow: truth density carries squared mass " +
                   std::to_string(tail_mass) + " outside the estimate grid")
  {
  }
};

class NoQualifyingM : public NumericalError
{
public:
  NoQualifyingM()
    : NumericalError("NoQualifyingM: frequency grid exhausted before the "
                     "trapezoidal cutoff condition was met; enlarge the grid")
  {
  }
};

class TailNotConverged : public NumericalError
{
public:
  explicit TailNotConverged(double t_reached)
    : NumericalError("TailNotConverged: spectral integrand still "
                     "significant at t = " + std::to_string(t_reached))
  {
  }
};

class NoSolution : public NumericalError
{
public:
  NoSolution()
    : NumericalError("NoSolution: positive part carries less than unit mass; "
                     "the x-range is probably truncated")
  {
  }
};

class ImaginaryResidue : public NumericalError
{
public:
  explicit ImaginaryResidue(double residue)
    : NumericalError("ImaginaryResidue: inverse transform has imaginary "
                     "residue " + std::to_string(residue) +
                     "; Hermitian symmetry is broken upstream")
  {
  }
};

class QuadratureFailure : public NumericalError
{
public:
  explicit QuadratureFailure(const std::string& what)
    : NumericalError("QuadratureFailure: " + what)
  {
  }
};

} // namespace scde
