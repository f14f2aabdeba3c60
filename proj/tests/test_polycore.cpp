#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include <random>

using namespace jetcheck;

namespace {

const char* kW = "x1^2 - 2*x1*x2^2 + x1^4 + x2^4";

Eigen::VectorXd pt(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double c : v) x[i++] = c;
  return x;
}

}  // namespace

TEST_CASE("parse: quartic from the truncation example") {
  const Polynomial w = parse_poly(kW, 2);
  CHECK(w.term_count() == 4);
  CHECK(w.degree() == 4);
  CHECK(w.coefficient(Monomial({1, 2})) == -2);
  CHECK(to_string(w) == kW);
}

TEST_CASE("parse: zero and constants") {
  const Polynomial z = parse_poly("0", 3);
  CHECK(z.is_zero());
  CHECK(z.nvars() == 3);
  CHECK(z.degree() == Polynomial::kZeroDegree);
  CHECK(parse_poly("7", 2).degree() == 0);
  CHECK(parse_poly("x1 - x1", 1).is_zero());
}

TEST_CASE("parse: errors carry a position") {
  try {
    parse_poly("x1*x3", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 4);
    CHECK(std::string(e.what()).find("out of range") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_poly("x1^-2", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("x1^0", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("3/0*x1", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("x1 +", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("x0", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("(x1)", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("", 1), ParseError);
}

TEST_CASE("parse: grammar details") {
  CHECK(parse_poly("3/2*x1^2*x2 - x3", 3) == parse_poly("  3/2 *x1^2* x2-x3 ", 3));
  CHECK(parse_poly("2x1", 1) == parse_poly("2*x1", 1));
  CHECK(parse_poly("-x1 + 6/4", 1).constant_term() == Rational(3, 2));
  const Polynomial py = parse_poly("x1*y2", 2, 2);
  CHECK(py.nvars() == 4);
  CHECK(py.coefficient(Monomial({1, 0, 0, 1})) == 1);
  CHECK(to_string(py, 2) == "x1*y2");
  CHECK_THROWS_AS(parse_poly("y3", 2, 2), ParseError);
}

TEST_CASE("evaluate") {
  CHECK(evaluate(parse_poly(kW, 2), pt({1, 1})) == doctest::Approx(1.0));
  CHECK(evaluate(Polynomial(3), pt({0.3, -2, 5})) == 0.0);
  CHECK(evaluate(parse_poly("x1^2+x2^2", 2), pt({3, 4})) == doctest::Approx(25.0));
  CHECK_THROWS_AS(evaluate(parse_poly("x1^2+x2^2", 2), pt({3})), std::invalid_argument);
  // exact rational coefficient, evaluated in binary128
  VectorR x(1);
  x[0] = 3;
  CHECK(static_cast<double>(parse_poly("1/3*x1", 1)(x)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gradient") {
  const auto g = gradient(parse_poly("x1^2+x2^2", 2));
  REQUIRE(g.size() == 2);
  CHECK(g[0] == parse_poly("2*x1", 2));
  CHECK(g[1] == parse_poly("2*x2", 2));

  // lambda*xi + tau*eta over (tau, lambda, xi, eta) = (x1, x2, x3, x4)
  const auto h = gradient(parse_poly("x2*x3 + x1*x4", 4));
  CHECK(h[0] == parse_poly("x4", 4));
  CHECK(h[1] == parse_poly("x3", 4));
  CHECK(h[2] == parse_poly("x2", 4));
  CHECK(h[3] == parse_poly("x1", 4));

  for (const auto& d : gradient(Polynomial(3))) CHECK(d.is_zero());
  CHECK(gradient(Polynomial(3)).size() == 3);
}

TEST_CASE("truncate_jet") {
  const Polynomial full = parse_poly("x1^2-2*x1*x2^2+x1^4+x2^4+x2^8", 2);
  CHECK(truncate_jet(full, 4) == parse_poly(kW, 2));
  CHECK(truncate_jet(full, static_cast<unsigned>(full.degree())) == full);
  CHECK(truncate_jet(parse_poly("x2^8", 2), 4).is_zero());
  CHECK(truncate_jet(full, 0).is_zero());
  CHECK(truncate_jet(parse_poly("x1 + 3", 1), 0) == parse_poly("3", 1));
}

TEST_CASE("combine and pow") {
  const Polynomial x1 = parse_poly("x1", 2);
  CHECK(combine(x1, x1, CombineOp::mul) == parse_poly("x1^2", 2));
  const Polynomial p = parse_poly(kW, 2);
  CHECK(combine(p, Polynomial(2), CombineOp::add) == p);
  CHECK(combine(p, p, CombineOp::sub).is_zero());
  CHECK(pow(parse_poly("x1 - x2^2", 2), 2) == parse_poly("x1^2-2*x1*x2^2+x2^4", 2));
  CHECK(pow(p, 0) == Polynomial::constant(2, 1));
  CHECK_THROWS_AS(combine(x1, parse_poly("x1", 3), CombineOp::add), std::invalid_argument);
  // (x1 - x2^2)^2 + x1^4 is the quartic
  CHECK(pow(parse_poly("x1 - x2^2", 2), 2) + pow(x1, 4) == p);
}

TEST_CASE("no zero coefficients are stored") {
  Polynomial p = parse_poly("x1 + x2", 2);
  p.add_term(Monomial({1, 0}), -1);
  CHECK(p.term_count() == 1);
  const Polynomial q = p * parse_poly("x1 - x2", 2) + parse_poly("x2^2", 2);
  CHECK(q == parse_poly("x1*x2", 2));
  for (const auto& [m, c] : q.terms()) CHECK(c != 0);
}

TEST_CASE("jacobian_transpose_apply") {
  const PolyMap id = parse_map({"x1"}, 1);
  CHECK(jacobian_transpose_apply<double>(id, pt({2}), pt({3}))[0] == doctest::Approx(3.0));

  const PolyMap radial = parse_map({"x1^2+x2^2"}, 2);
  const Eigen::VectorXd v = jacobian_transpose_apply<double>(radial, pt({1, 0}), pt({2}));
  CHECK(v[0] == doctest::Approx(4.0));
  CHECK(v[1] == doctest::Approx(0.0));

  // Jacobian rows at (0,0,1,0): grad f1 = (x4,x3,x2,x1) = (0,1,0,0),
  // grad f2 = (x3,-x4,x1,-x2) = (1,0,0,0); y = (1,0) picks the first row.
  const PolyMap hopf = parse_map({"x2*x3 + x1*x4", "x1*x3 - x2*x4"}, 4);
  const Eigen::VectorXd h = jacobian_transpose_apply<double>(hopf, pt({0, 0, 1, 0}), pt({1, 0}));
  CHECK(h == pt({0, 1, 0, 0}));
  const Eigen::VectorXd h2 = jacobian_transpose_apply<double>(hopf, pt({0, 0, 1, 0}), pt({0, 1}));
  CHECK(h2 == pt({1, 0, 0, 0}));

  CHECK_THROWS_AS(jacobian_transpose_apply<double>(hopf, pt({0, 0, 1}), pt({1, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(jacobian_transpose_apply<double>(hopf, pt({0, 0, 1, 0}), pt({1})),
                  std::invalid_argument);
}

TEST_CASE("PolyMap invariants") {
  CHECK_THROWS_AS(PolyMap(std::vector<Polynomial>{}), std::invalid_argument);
  CHECK_THROWS_AS(PolyMap({parse_poly("x1", 1), parse_poly("x1", 2)}), std::invalid_argument);
  const PolyMap f = parse_map({"x1 + x2^3", "x1*x2"}, 2);
  CHECK(f.n() == 2);
  CHECK(f.m() == 2);
  CHECK(f.degree() == 3);
  CHECK(f.vanishes_at_origin());
  CHECK_FALSE(parse_map({"x1 + 1"}, 1).vanishes_at_origin());
  CHECK(f.truncated(2)[0] == parse_poly("x1", 2));
  const auto jac = f.jacobian();
  CHECK(jac[1][0] == parse_poly("x2", 2));
}

TEST_CASE("NumericMap agrees with term-wise evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const PolyMap f({support::random_polynomial(rng, n, 5, 6),
                     support::random_polynomial(rng, n, 5, 6)});
    const NumericMap<double> num(f);
    const Eigen::VectorXd x = support::random_point(rng, n);
    Eigen::VectorXd values;
    Eigen::MatrixXd jac;
    num.evaluate(x, values, jac);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(values[Eigen::Index(j)] == doctest::Approx(f[j](x)).epsilon(1e-12));
      const auto g = gradient(f[j]);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(jac(Eigen::Index(i), Eigen::Index(j)) == doctest::Approx(g[i](x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: evaluation is multiplicative") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const Polynomial p = support::random_polynomial(rng, n, 4, 5);
    const Polynomial q = support::random_polynomial(rng, n, 4, 5);
    const Eigen::VectorXd x = support::random_point(rng, n);
    const double lhs = (p * q)(x), rhs = p(x) * q(x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("property: gradient matches central differences") {
  std::mt19937_64 rng(2);
  const double h = 1e-5;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const Polynomial p = support::random_polynomial(rng, n, 6, 8);
    const auto g = gradient(p);
    const Eigen::VectorXd x = support::random_point(rng, n);
    Eigen::VectorXd sym(static_cast<Eigen::Index>(n)), fd(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::VectorXd a = x, b = x;
      a[Eigen::Index(i)] += h;
      b[Eigen::Index(i)] -= h;
      fd[Eigen::Index(i)] = (p(a) - p(b)) / (2 * h);
      sym[Eigen::Index(i)] = g[i](x);
    }
    worst = std::max(worst, (sym - fd).lpNorm<Eigen::Infinity>() /
                                std::max(1.0, sym.lpNorm<Eigen::Infinity>()));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("property: truncation is idempotent and linear") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const Polynomial a = support::random_polynomial(rng, n, 7, 8);
    const Polynomial b = support::random_polynomial(rng, n, 7, 8);
    const unsigned r = static_cast<unsigned>(rng() % 8);
    CHECK(truncate_jet(truncate_jet(a, r), r) == truncate_jet(a, r));
    CHECK(truncate_jet(a + b, r) == truncate_jet(a, r) + truncate_jet(b, r));
    const Polynomial t = truncate_jet(a, r);
    for (const auto& [m, c] : t.terms()) CHECK(m.degree() <= r);
  }
}

TEST_CASE("property: print then parse is the identity") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const Polynomial p = support::random_polynomial(rng, n, 6, 7);
    CHECK(parse_poly(to_string(p), n) == p);
  }
  const Polynomial mixed = parse_poly("-3/4*x1*y1^2 + x2 - y2", 2, 2);
  CHECK(parse_poly(to_string(mixed, 2), 2, 2) == mixed);
}

TEST_CASE("canonical order is graded") {
  CHECK(to_string(parse_poly("x2^4 + x1*x2^3 + x1^4 + x2 + x1", 2)) ==
        "x1 + x2 + x1^4 + x1*x2^3 + x2^4");
  CHECK(to_string(parse_poly("-x1 + 1", 1)) == "1 - x1");
}
