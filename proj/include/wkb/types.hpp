#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wkb {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

inline constexpr cplx iu{0.0, 1.0};

/// Numeric failure (non-convergence, tolerance not met, stiffness, ...).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input rejected before any numerics ran.
struct invalid_argument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Expression parse failure, with the offending position in the input.
struct parse_error : std::runtime_error {
  parse_error(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  std::size_t position;
};

inline double wrap_angle(double a) {
  // into (-pi, pi]
  while (a <= -pi) a += 2 * pi;
  while (a > pi) a -= 2 * pi;
  return a;
}

inline double wrap_positive(double a) {
  // into [0, 2*pi)
  while (a < 0) a += 2 * pi;
  while (a >= 2 * pi) a -= 2 * pi;
  return a;
}

}  // namespace wkb
