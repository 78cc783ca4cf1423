#pragma once

#include <optional>

#include "hmsrep/rational.hpp"

namespace hmsrep {

/// Point on the unit sphere in R^3 (floating geometry).
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// Normalizes (x, y, z); throws InvalidArgument for the zero vector or
  /// non-finite input.
  static BlochVector unit(double x, double y, double z);

  double dot(const BlochVector& other) const noexcept { return x * other.x + y * other.y + z * other.z; }
  double norm() const noexcept;
  BlochVector operator-() const noexcept { return {-x, -y, -z}; }
};

/// A spin-1/2 state on the sphere. `overlap` is the exact cosine u.v with
/// respect to the measurement direction the state was built against, when
/// it is known as a rational; exact evaluation requires it.
struct SpinState {
  BlochVector v;
  std::optional<Rational> overlap;

  /// The state at exact overlap `cos_theta` with u (must lie in [-1, 1]).
  static SpinState at_overlap(const BlochVector& u, const Rational& cos_theta);
  static SpinState from_vector(const BlochVector& v) { return SpinState{v, std::nullopt}; }
};

}  // namespace hmsrep
