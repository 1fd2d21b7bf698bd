#pragma once

#include <stdexcept>
#include <string>

namespace weakoptics {

/// Frequency outside the domain of a tabulated dispersion model.
class RangeError : public std::out_of_range {
 public:
  RangeError(const std::string& what, double lo, double hi)
      : std::out_of_range(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// The post-selected amplitude vanishes, so phase and delay are undefined.
class PostselectionNull : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// estimate_beta was handed a bracket it cannot invert on.
class BadBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (dispersion tables).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weakoptics
