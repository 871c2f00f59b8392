#pragma once

#include <stdexcept>

namespace groupforge {

//! Bad input: malformed team file, invalid configuration, violated precondition.
class ValidationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A well-formed request that failed while running (e.g. draw attempt cap hit).
class SimulationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace groupforge
