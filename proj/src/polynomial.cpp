#include "jetcheck/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace jetcheck {

unsigned Monomial::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0u); }

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.size() != size()) throw std::invalid_argument("monomial length mismatch");
  Monomial out(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
  return out;
}

bool GradedOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                      a.exponents().begin(), a.exponents().end());
}

// -- Polynomial ----------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::invalid_argument("variable index out of range");
  Monomial m(nvars);
  m[index] = 1;
  return monomial(m, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  // Graded order puts the highest degree last.
  return static_cast<int>(terms_.rbegin()->first.degree());
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw std::invalid_argument("monomial length does not match nvars");
  if (sgn(c) == 0) return;
  // GMP arithmetic assumes canonical operands; mpq_class(a, b) is not.
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.try_emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::require_same_vars(const Polynomial& other) const {
  if (other.nvars_ != nvars_)
    throw std::invalid_argument("polynomial dimension mismatch: " + std::to_string(nvars_) +
                                " vs " + std::to_string(other.nvars_) + " variables");
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_vars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_vars(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  Rational v = c;
  v.canonicalize();
  for (auto& [m, coef] : terms_) coef *= v;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_vars(b);
  Polynomial out(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::invalid_argument("derivative: variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d(m);
    d[var] -= 1;
    out.add_term(d, c * m[var]);
  }
  return out;
}

Polynomial Polynomial::embed(std::size_t nvars, std::size_t offset) const {
  if (offset + nvars_ > nvars) throw std::invalid_argument("embed: target has too few variables");
  Polynomial out(nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e(nvars);
    for (std::size_t i = 0; i < nvars_; ++i) e[offset + i] = m[i];
    out.add_term(e, c);
  }
  return out;
}

Polynomial combine(const Polynomial& a, const Polynomial& b, CombineOp op) {
  switch (op) {
    case CombineOp::add: return a + b;
    case CombineOp::sub: return a - b;
    case CombineOp::mul: return a * b;
  }
  throw std::invalid_argument("combine: unknown op");
}

Polynomial pow(const Polynomial& a, unsigned k) {
  Polynomial result = Polynomial::constant(a.nvars(), 1);
  Polynomial base = a;
  while (k != 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k != 0) base = base * base;
  }
  return result;
}

std::vector<Polynomial> gradient(const Polynomial& p) {
  std::vector<Polynomial> out;
  out.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) out.push_back(p.derivative(i));
  return out;
}

Polynomial truncate_jet(const Polynomial& p, unsigned r) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() > r) break;  // graded order
    out.add_term(m, c);
  }
  return out;
}

Polynomial sum_of_squares(const std::vector<Polynomial>& ps) {
  if (ps.empty()) throw std::invalid_argument("sum_of_squares: empty list");
  Polynomial out(ps.front().nvars());
  for (const auto& p : ps) out += p * p;
  return out;
}

Polynomial squared_norm(std::size_t nvars, std::size_t offset, std::size_t count) {
  Polynomial out(nvars);
  for (std::size_t i = offset; i < offset + count; ++i) {
    Monomial m(nvars);
    m[i] = 2;
    out.add_term(m, 1);
  }
  return out;
}

// -- parsing -----------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nx, std::size_t ny)
      : text_(text), nx_(nx), ny_(ny), result_(nx + ny) {}

  Polynomial run() {
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      advance();
    }
    parse_term(negative);
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("expected '+' or '-', found '") + c + "'");
      advance();
      parse_term(c == '-');
    }
    return std::move(result_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() { ++pos_; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t pos) const {
    throw ParseError(msg, pos + 1);
  }

  mpz_class parse_integer() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void parse_term(bool negative) {
    skip_space();
    if (at_end()) fail("expected a term");
    Rational coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mpz_class num = parse_integer();
      mpz_class den = 1;
      skip_space();
      if (!at_end() && peek() == '/') {
        advance();
        const std::size_t den_pos = pos_;
        den = parse_integer();
        if (den == 0) fail_at("zero denominator", den_pos);
      }
      coef = Rational(num, den);
      coef.canonicalize();
      have_coef = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        advance();
        skip_space();
        if (at_end() || (peek() != 'x' && peek() != 'y')) fail("expected a variable after '*'");
      }
    }
    Monomial mono(nx_ + ny_);
    bool have_factor = false;
    while (true) {
      skip_space();
      if (at_end() || (peek() != 'x' && peek() != 'y')) break;
      parse_factor(mono);
      have_factor = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        advance();
        skip_space();
        if (at_end() || (peek() != 'x' && peek() != 'y')) fail("expected a variable after '*'");
        continue;
      }
      break;
    }
    if (!have_coef && !have_factor) {
      if (at_end()) fail("expected a term");
      fail(std::string("unexpected character '") + peek() + "'");
    }
    result_.add_term(mono, negative ? Rational(-coef) : coef);
  }

  void parse_factor(Monomial& mono) {
    const std::size_t var_pos = pos_;
    const bool is_y = peek() == 'y';
    advance();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a variable index");
    const mpz_class index = parse_integer();
    const std::size_t limit = is_y ? ny_ : nx_;
    if (index < 1 || index > limit)
      fail_at(std::string("variable ") + (is_y ? "y" : "x") + index.get_str() +
                  " out of range (" + std::to_string(limit) + " available)",
              var_pos);
    std::size_t slot = index.get_ui() - 1 + (is_y ? nx_ : 0);
    unsigned exponent = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      advance();
      skip_space();
      if (!at_end() && peek() == '-') fail("negative exponent");
      const std::size_t exp_pos = pos_;
      const mpz_class e = parse_integer();
      if (e < 1) fail_at("exponent must be at least 1", exp_pos);
      if (e > 10000) fail_at("exponent too large", exp_pos);
      exponent = static_cast<unsigned>(e.get_ui());
    }
    mono[slot] += exponent;
  }

  std::string_view text_;
  std::size_t nx_, ny_;
  std::size_t pos_ = 0;
  Polynomial result_;
};

void append_var(std::ostringstream& os, std::size_t index, unsigned e, std::size_t nx) {
  if (index < nx)
    os << 'x' << index + 1;
  else
    os << 'y' << index - nx + 1;
  if (e != 1) os << '^' << e;
}

}  // namespace

Polynomial parse_poly(std::string_view text, std::size_t nx, std::size_t ny) {
  if (nx + ny == 0) throw std::invalid_argument("parse_poly: need at least one variable");
  return Parser(text, nx, ny).run();
}

std::string to_string(const Polynomial& p, std::size_t nx) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const Rational mag = abs(c);
    const bool constant = m.degree() == 0;
    if (constant || mag != 1) {
      os << mag.get_str();
      if (!constant) os << '*';
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_factor) os << '*';
      first_factor = false;
      append_var(os, i, m[i], nx);
    }
  }
  return os.str();
}

// -- PolyMap ------------------------------------------------------------------

PolyMap::PolyMap(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("PolyMap: needs at least one component");
  n_ = components_.front().nvars();
  for (const auto& c : components_)
    if (c.nvars() != n_) throw std::invalid_argument("PolyMap: components disagree on n");
}

int PolyMap::degree() const {
  int d = Polynomial::kZeroDegree;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

bool PolyMap::vanishes_at_origin() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Polynomial& c) { return sgn(c.constant_term()) == 0; });
}

PolyMap PolyMap::truncated(unsigned r) const {
  std::vector<Polynomial> out;
  for (const auto& c : components_) out.push_back(truncate_jet(c, r));
  return PolyMap(std::move(out));
}

PolyMap PolyMap::scaled(const Rational& c) const {
  std::vector<Polynomial> out;
  for (const auto& comp : components_) out.push_back(comp * c);
  return PolyMap(std::move(out));
}

std::vector<std::vector<Polynomial>> PolyMap::jacobian() const {
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& c : components_) rows.push_back(gradient(c));
  return rows;
}

PolyMap parse_map(const std::vector<std::string>& components, std::size_t n) {
  std::vector<Polynomial> polys;
  for (const auto& text : components) polys.push_back(parse_poly(text, n));
  return PolyMap(std::move(polys));
}

// -- NumericMap ----------------------------------------------------------------

template <class Scalar>
typename NumericMap<Scalar>::Compiled NumericMap<Scalar>::compile(const Polynomial& p) {
  Compiled out;
  for (const auto& [m, c] : p.terms()) {
    Term t{to_scalar<Scalar>(c), {}};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t.factors.emplace_back(static_cast<unsigned>(i), m[i]);
    out.push_back(std::move(t));
  }
  return out;
}

template <class Scalar>
NumericMap<Scalar>::NumericMap(const PolyMap& f) : n_(f.n()), m_(f.m()) {
  max_degree_ = static_cast<unsigned>(std::max(f.degree(), 0));
  for (const auto& comp : f.components()) {
    components_.push_back(compile(comp));
    for (const auto& g : gradient(comp)) gradients_.push_back(compile(g));
  }
}

template <class Scalar>
Scalar NumericMap<Scalar>::eval(const Compiled& poly, const std::vector<Scalar>& powers) const {
  const std::size_t stride = max_degree_ + 1;
  Scalar sum(0);
  for (const auto& t : poly) {
    Scalar term = t.coef;
    for (const auto& [var, e] : t.factors) term *= powers[var * stride + e];
    sum += term;
  }
  return sum;
}

template <class Scalar>
void NumericMap<Scalar>::evaluate(const Vec<Scalar>& x, Vec<Scalar>& values,
                                  Mat<Scalar>& jac_t) const {
  if (static_cast<std::size_t>(x.size()) != n_)
    throw std::invalid_argument("NumericMap: point dimension mismatch");
  const std::size_t stride = max_degree_ + 1;
  thread_local std::vector<Scalar> powers;
  powers.assign(n_ * stride, Scalar(1));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 1; k < stride; ++k)
      powers[i * stride + k] = powers[i * stride + k - 1] * x[Eigen::Index(i)];
  values.resize(Eigen::Index(m_));
  jac_t.resize(Eigen::Index(n_), Eigen::Index(m_));
  for (std::size_t j = 0; j < m_; ++j) {
    values[Eigen::Index(j)] = eval(components_[j], powers);
    for (std::size_t i = 0; i < n_; ++i)
      jac_t(Eigen::Index(i), Eigen::Index(j)) = eval(gradients_[j * n_ + i], powers);
  }
}

template <class Scalar>
Vec<Scalar> NumericMap<Scalar>::values(const Vec<Scalar>& x) const {
  Vec<Scalar> v;
  Mat<Scalar> j;
  evaluate(x, v, j);
  return v;
}

template <class Scalar>
Vec<Scalar> jacobian_transpose_apply(const PolyMap& f, const Vec<Scalar>& x,
                                     const Vec<Scalar>& y) {
  if (static_cast<std::size_t>(x.size()) != f.n() || static_cast<std::size_t>(y.size()) != f.m())
    throw std::invalid_argument("jacobian_transpose_apply: dimension mismatch");
  Vec<Scalar> out = Vec<Scalar>::Zero(x.size());
  for (std::size_t j = 0; j < f.m(); ++j) {
    const auto grad = gradient(f[j]);
    for (std::size_t i = 0; i < f.n(); ++i) out[Eigen::Index(i)] += y[Eigen::Index(j)] * grad[i](x);
  }
  return out;
}

template class NumericMap<double>;
template class NumericMap<Real>;
template Vec<double> jacobian_transpose_apply(const PolyMap&, const Vec<double>&,
                                              const Vec<double>&);
template Vec<Real> jacobian_transpose_apply(const PolyMap&, const Vec<Real>&, const Vec<Real>&);

}  // namespace jetcheck
