#pragma once

#include <cstdlib>
#include <string>

namespace ruledkit {

/// Numeric thresholds shared by the geometry, classification and reconstruction layers.
struct Tolerances {
  double unit = 1e-9;           // |v0| = 1, v0.v1 = 0 checks
  double geo = 1e-9;            // scaled by (1 + |a|) in geometric predicates
  double cylinder_floor = 1e-6; // |v0'| at or below this is a cylindrical point
  double jet = 1e-6;            // agreement between the two invariant routes, times (1 + |value|)
  double classify = 1e-7;       // zero tests on invariant jets, times the jet scale
  double ode = 1e-10;           // dual orthonormality defect of integrated frames

  bool operator==(const Tolerances&) const = default;

  double geo_scaled(double magnitude) const { return geo * (1.0 + magnitude); }

  /// Defaults, with RULEDKIT_TOL (if set and parseable) replacing the classification tolerance.
  static Tolerances from_environment() {
    Tolerances t;
    if (const char* env = std::getenv("RULEDKIT_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0) t.classify = v;
    }
    return t;
  }
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace ruledkit
