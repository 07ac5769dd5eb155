#pragma once

#include <stdexcept>
#include <string>

namespace expertvote {

// Numerical failure: an iteration or subdivision budget ran out before the
// requested accuracy was reached.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A series truncation did not reach its mass target within max_terms.
class truncation_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// Adaptive quadrature exhausted its subdivision budget.
class quadrature_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// A family failed the CDF limit conditions required for compatible votes,
// so no inductive distribution exists.
class compatibility_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace expertvote
