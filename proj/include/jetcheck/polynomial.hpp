#pragma once

#include "jetcheck/scalar.hpp"

#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jetcheck {

/// Exponent vector of a monomial, one entry per variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  unsigned degree() const;
  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exps_;
};

/// Graded order: lower total degree first; within a degree, lexicographically
/// larger exponent vectors first (x1^4 before x1*x2^3 before x2^4).
struct GradedOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Immutable in practice: all operations return new values.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GradedOrder>;

  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  /// The coordinate function x_{index+1}.
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(const Monomial& m, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial(nvars_)); }

  /// Adds c*m, dropping the term if the coefficient cancels.
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Partial derivative with respect to variable `var` (0-based).
  Polynomial derivative(std::size_t var) const;

  /// The same polynomial viewed in `nvars` variables, its own variables
  /// occupying positions offset..offset+nvars()-1.
  Polynomial embed(std::size_t nvars, std::size_t offset = 0) const;

  /// Floating-point value at x; coefficients are converted per term.
  template <class Derived>
  typename Derived::Scalar operator()(const Eigen::MatrixBase<Derived>& x) const;

 private:
  void require_same_vars(const Polynomial& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

enum class CombineOp { add, sub, mul };

Polynomial combine(const Polynomial& a, const Polynomial& b, CombineOp op);
Polynomial pow(const Polynomial& a, unsigned k);

/// Partial derivatives, one per variable.
std::vector<Polynomial> gradient(const Polynomial& p);

/// Keeps the terms of total degree <= r.
Polynomial truncate_jet(const Polynomial& p, unsigned r);

/// Sum of squares of the given polynomials.
Polynomial sum_of_squares(const std::vector<Polynomial>& ps);

/// x_1^2 + ... + x_k^2 for the k variables starting at `offset`.
Polynomial squared_norm(std::size_t nvars, std::size_t offset, std::size_t count);

template <class Derived>
typename Derived::Scalar Polynomial::operator()(const Eigen::MatrixBase<Derived>& x) const {
  using Scalar = typename Derived::Scalar;
  if (static_cast<std::size_t>(x.size()) != nvars_)
    throw std::invalid_argument("evaluate: point has " + std::to_string(x.size()) +
                                " coordinates, polynomial has " + std::to_string(nvars_) +
                                " variables");
  Scalar sum(0);
  for (const auto& [mono, coef] : terms_) {
    Scalar term = to_scalar<Scalar>(coef);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (mono[i] != 0) term *= ipow(Scalar(x[Eigen::Index(i)]), mono[i]);
    sum += term;
  }
  return sum;
}

template <class Derived>
typename Derived::Scalar evaluate(const Polynomial& p, const Eigen::MatrixBase<Derived>& x) {
  return p(x);
}

// -- text format -------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what), column_(column) {}
  /// 1-based column of the offending character.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses "3/2*x1^2*x2 - x3". Variables x1..x{nx}; y1..y{ny} map to
/// positions nx..nx+ny-1.
Polynomial parse_poly(std::string_view text, std::size_t nx, std::size_t ny = 0);

/// Canonical text; variables past `nx` are printed as y's.
std::string to_string(const Polynomial& p, std::size_t nx);
inline std::string to_string(const Polynomial& p) { return to_string(p, p.nvars()); }

// -- maps --------------------------------------------------------------------

/// f = (f_1, ..., f_m) : R^n -> R^m with polynomial components.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> components);

  std::size_t n() const { return n_; }
  std::size_t m() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t j) const { return components_[j]; }

  int degree() const;
  bool vanishes_at_origin() const;

  PolyMap truncated(unsigned r) const;
  PolyMap scaled(const Rational& c) const;
  /// Jacobian rows: grad f_j for each component, as polynomials.
  std::vector<std::vector<Polynomial>> jacobian() const;

 private:
  std::vector<Polynomial> components_;
  std::size_t n_ = 0;
};

PolyMap parse_map(const std::vector<std::string>& components, std::size_t n);

/// Compiled form of a map and its Jacobian for repeated evaluation at many
/// points. Shares one power table across all component and gradient terms.
template <class Scalar>
class NumericMap {
 public:
  explicit NumericMap(const PolyMap& f);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  /// values(j) = f_j(x); jac_t(:, j) = grad f_j(x)  (jac_t is the n-by-m
  /// matrix (df)^*(x)).
  void evaluate(const Vec<Scalar>& x, Vec<Scalar>& values, Mat<Scalar>& jac_t) const;
  Vec<Scalar> values(const Vec<Scalar>& x) const;

 private:
  struct Term {
    Scalar coef;
    std::vector<std::pair<unsigned, unsigned>> factors;  // (variable, exponent)
  };
  using Compiled = std::vector<Term>;

  static Compiled compile(const Polynomial& p);
  Scalar eval(const Compiled& poly, const std::vector<Scalar>& powers) const;

  std::size_t n_ = 0, m_ = 0;
  unsigned max_degree_ = 0;
  std::vector<Compiled> components_;
  std::vector<Compiled> gradients_;  // index j*n + i
};

/// (df)^*(x) y = sum_j y_j grad f_j(x).
template <class Scalar>
Vec<Scalar> jacobian_transpose_apply(const PolyMap& f, const Vec<Scalar>& x,
                                     const Vec<Scalar>& y);

extern template class NumericMap<double>;
extern template class NumericMap<Real>;
extern template Vec<double> jacobian_transpose_apply(const PolyMap&, const Vec<double>&,
                                                     const Vec<double>&);
extern template Vec<Real> jacobian_transpose_apply(const PolyMap&, const Vec<Real>&,
                                                   const Vec<Real>&);

}  // namespace jetcheck
