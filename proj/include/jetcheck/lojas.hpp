#pragma once

// Empirical local growth exponents: minimize a quantity over shrinking
// spheres |x| = eps (times the unit y-sphere when the quantity depends on y)
// and fit log(min) against log(eps).

#include "jetcheck/test_quantity.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace jetcheck {

struct SamplerConfig {
  double eps0 = 0.1;
  double rho = 0.5;
  int nradii = 12;
  int nstarts = 64;
  int local_steps = 200;
  std::uint64_t seed = 0;
  int tail = 6;
  /// Worker threads for the multistart; 0 picks the hardware concurrency.
  /// Results do not depend on this value.
  unsigned threads = 0;

  void validate() const;
  double radius(int k) const;
};

/// Something to minimize over {|x| = radius} x {|y| = 1}.
struct SphereObjective {
  std::size_t nx = 0;
  std::size_t ny = 0;  // 0: no y-sphere
  /// Degree of the quantity in norm-like units (p for R_p); scales the
  /// relative floor below which a minimum counts as an exact zero.
  double homogeneity = 1.0;
  std::function<Real(const VectorR& x, const VectorR& y)> value;
  /// Optional admissible region {x : constraint(x) < 0}. Starts outside it
  /// are first pushed in by descending the constraint itself.
  std::function<Real(const VectorR& x)> constraint;
};

SphereObjective make_objective(const TestQuantity& q);

struct SphereMinimum {
  double radius = 0;
  Real min_value = 0;
  VectorR argmin_x;
  std::optional<VectorR> argmin_y;
  /// Largest value among the starting samples; the reference for the
  /// relative zero floor.
  Real sample_max = 0;
  /// False when no start reached the admissible region.
  bool found = true;
  bool zero = false;
};

struct ExponentEstimate {
  double kappa_hat = 0;
  double intercept = 0;
  double std_error = 0;
  double residual_max = 0;
  bool degenerate = false;
  /// Number of samples used in the fit.
  int fitted = 0;
  std::vector<SphereMinimum> samples;  // decreasing radius
};

/// True when value is an exact zero as far as the arithmetic can tell:
/// below 1e-300, or below sample_max * (1e-30)^homogeneity.
bool is_numerical_zero(const Real& value, const Real& sample_max, double homogeneity);

SphereMinimum min_on_sphere(const SphereObjective& q, double radius, const SamplerConfig& cfg);
SphereMinimum min_on_sphere(const TestQuantity& q, double radius, const SamplerConfig& cfg);

ExponentEstimate estimate_exponent(const SphereObjective& q, const SamplerConfig& cfg);
ExponentEstimate estimate_exponent(const TestQuantity& q, const SamplerConfig& cfg);

/// Ordinary least squares of log(value) on log(radius) over the given
/// samples (all must be positive). Fills kappa_hat, intercept, std_error,
/// residual_max and fitted.
void fit_loglog(const std::vector<const SphereMinimum*>& tail, ExponentEstimate& out);

/// (d-1)^n + 1, the bound on the local Lojasiewicz exponent of a degree-d
/// polynomial in n variables with an isolated zero.
Rational gwozdziewicz_bound(unsigned d, unsigned n);

/// A uniformly distributed point on the sphere of the given radius, drawn
/// from the start stream (seed, index).
VectorR sphere_sample(std::size_t dim, double radius, std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index);

}  // namespace jetcheck
