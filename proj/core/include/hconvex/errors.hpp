#ifndef HCONVEX_ERRORS_HPP_
#define HCONVEX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hconvex {

/// A documented precondition of an operation does not hold for its inputs.
class PreconditionError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A sampler exhausted its rejection budget (domain too thin, or empty).
class SamplingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Dilation bracketing ran off to infinity: e is not interior or the set is unbounded.
class BracketingError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace hconvex

#endif  // HCONVEX_ERRORS_HPP_
