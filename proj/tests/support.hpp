#pragma once

// Shared helpers for the test binaries: random polynomials and brute-force
// oracles that do not go through the library's evaluators.

#include "jetcheck/polynomial.hpp"

#include <cmath>
#include <quadmath.h>
#include <functional>
#include <random>

namespace support {

using jetcheck::Monomial;
using jetcheck::Polynomial;
using jetcheck::Rational;

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t n, unsigned max_deg,
                                    int nterms, bool vanish_at_origin = false) {
  std::uniform_int_distribution<int> coef(-6, 6), den(1, 4), deg(vanish_at_origin ? 1 : 0,
                                                                 static_cast<int>(max_deg));
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  Polynomial p(n);
  for (int t = 0; t < nterms; ++t) {
    Monomial m(n);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m[var(rng)] += 1;
    p.add_term(m, Rational(coef(rng), den(rng)));
  }
  return p;
}

inline Eigen::VectorXd random_point(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (auto& c : x) c = u(rng);
  return x;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  do {
    for (auto& c : x) c = g(rng);
  } while (x.norm() == 0);
  return x.normalized();
}

// min |A y| over unit y: `samples` uniform points, then three rounds of
// sampling in shrinking caps around the incumbent.
inline double sampled_min_norm(const Eigen::MatrixXd& a, std::mt19937_64& rng,
                               int samples = 100000) {
  const std::size_t m = static_cast<std::size_t>(a.cols());
  Eigen::VectorXd best = random_unit(rng, m);
  double best_v = (a * best).norm();
  for (int i = 1; i < samples; ++i) {
    const Eigen::VectorXd y = random_unit(rng, m);
    const double v = (a * y).norm();
    if (v < best_v) best_v = v, best = y;
  }
  std::normal_distribution<double> g;
  for (double cap : {3e-2, 3e-3, 3e-4, 3e-5}) {
    const Eigen::VectorXd center = best;
    for (int i = 0; i < samples / 5; ++i) {
      Eigen::VectorXd y = center;
      for (auto& c : y) c += cap * g(rng);
      y.normalize();
      const double v = (a * y).norm();
      if (v < best_v) best_v = v, best = y;
    }
  }
  return best_v;
}

using quad = __float128;

// Dense scan of f over the circle |x| = eps, parametrized by x1 on both
// branches x2 = +-sqrt(eps^2 - x1^2): a uniform grid of `grid` points per
// branch, then repeated finer grids over +-2 steps around the incumbent.
// Runs in binary128 because the minimizers of the quartic sit about eps^6
// away from the curve x1 = x2^2.
inline quad circle_min(const std::function<quad(quad, quad)>& f, quad eps, int grid = 1000000,
                       int zoom_grid = 100000, int zooms = 5) {
  quad best = 1e4000Q;
  for (int branch : {1, -1}) {
    auto at = [&](quad x1) {
      if (x1 > eps) x1 = eps;
      if (x1 < -eps) x1 = -eps;
      return f(x1, branch * sqrtq(eps * eps - x1 * x1));
    };
    quad h = 2 * eps / grid, best_x1 = -eps, best_v = 1e4000Q;
    for (int i = 0; i <= grid; ++i) {
      const quad x1 = -eps + h * i;
      const quad v = at(x1);
      if (v < best_v) best_v = v, best_x1 = x1;
    }
    for (int z = 0; z < zooms; ++z) {
      const quad c = best_x1, step = 4 * h / zoom_grid;
      for (int i = 0; i <= zoom_grid; ++i) {
        const quad x1 = c - 2 * h + step * i;
        const quad v = at(x1);
        if (v < best_v) best_v = v, best_x1 = x1;
      }
      h = step;
    }
    if (best_v < best) best = best_v;
  }
  return best;
}

// The example1 corpus quartic w = (x1 - x2^2)^2 + x1^4 and its starred R quantity
// |w|^p + |grad w|^p |x|^p, written out by hand.
inline quad example1_rstar(quad x1, quad x2, int p) {
  const quad u = x1 - x2 * x2;
  const quad w = u * u + x1 * x1 * x1 * x1;
  const quad g1 = 2 * u + 4 * x1 * x1 * x1, g2 = -4 * x2 * u;
  const quad grad_x = sqrtq(g1 * g1 + g2 * g2) * sqrtq(x1 * x1 + x2 * x2);
  quad a = fabsq(w), b = grad_x;
  for (int k = 1; k < p; ++k) a *= fabsq(w), b *= grad_x;
  return a + b;
}

// Slope of log(v) against log(r) by least squares.
inline double loglog_slope(const std::vector<double>& r, const std::vector<double>& v) {
  double mx = 0, my = 0;
  const double k = static_cast<double>(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) mx += std::log(r[i]), my += std::log(v[i]);
  mx /= k, my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    sxx += (std::log(r[i]) - mx) * (std::log(r[i]) - mx);
    sxy += (std::log(r[i]) - mx) * (std::log(v[i]) - my);
  }
  return sxy / sxx;
}

}  // namespace support
