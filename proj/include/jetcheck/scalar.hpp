#pragma once

// Scalar types shared by the symbolic and numeric layers.
//
// Exact coefficients live in GMP rationals. Numeric work is templated on the
// scalar; the sphere minimizer runs in binary128 because the minima of
// degenerate-looking jets sit at relative offsets far below double epsilon.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Dense>
#include <gmpxx.h>

#include <cmath>
#include <type_traits>

namespace jetcheck {

using Rational = mpq_class;
using Real = boost::multiprecision::float128;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorR = Vec<Real>;
using MatrixR = Mat<Real>;
using VectorD = Vec<double>;

/// Converts an exact rational to Scalar, rounding numerator and denominator
/// separately (exact for integers below 2^53 in double, 2^113 in Real).
template <class Scalar>
Scalar to_scalar(const Rational& q);

template <>
inline double to_scalar<double>(const Rational& q) {
  return q.get_d();
}

namespace detail {
inline Real integer_to_real(const mpz_class& z) {
  // Horner over 32-bit chunks, most significant first.
  mpz_class a = abs(z);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  const std::size_t chunks = (bits + 31) / 32;
  Real out = 0;
  for (std::size_t k = chunks; k-- > 0;) {
    mpz_class chunk;
    mpz_fdiv_q_2exp(chunk.get_mpz_t(), a.get_mpz_t(), 32 * k);
    mpz_fdiv_r_2exp(chunk.get_mpz_t(), chunk.get_mpz_t(), 32);
    out = out * Real(4294967296.0) + Real(chunk.get_ui());
  }
  return sgn(z) < 0 ? Real(-out) : out;
}
}  // namespace detail

template <>
inline Real to_scalar<Real>(const Rational& q) {
  return detail::integer_to_real(q.get_num()) / detail::integer_to_real(q.get_den());
}

inline double to_double(const Real& r) { return static_cast<double>(r); }
inline double to_double(double r) { return r; }

template <class Scalar>
Vec<double> to_double(const Vec<Scalar>& v) {
  Vec<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = static_cast<double>(v[i]);
  return out;
}

template <class Scalar>
Vec<Real> to_real(const Vec<Scalar>& v) {
  Vec<Real> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Real(v[i]);
  return out;
}

/// a^k for a nonnegative integer exponent, by repeated squaring.
template <class Scalar>
Scalar ipow(Scalar a, unsigned k) {
  Scalar result(1);
  while (k != 0) {
    if (k & 1u) result *= a;
    k >>= 1;
    if (k != 0) a *= a;
  }
  return result;
}

/// |v|^p given |v|^2; stays polynomial (no sqrt) for even p.
template <class Scalar>
Scalar norm_pow_from_squared(const Scalar& squared, unsigned p) {
  using std::sqrt;
  if (p % 2 == 0) return ipow(squared, p / 2);
  return ipow(Scalar(sqrt(squared)), p);
}

}  // namespace jetcheck
