#include "jetcheck/lojas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace jetcheck {

void SamplerConfig::validate() const {
  if (!(eps0 > 0) || !std::isfinite(eps0)) throw std::invalid_argument("eps0 must be positive");
  if (!(rho > 0 && rho < 1)) throw std::invalid_argument("rho must lie in (0, 1)");
  if (nradii < 4) throw std::invalid_argument("nradii must be at least 4");
  if (tail < 2 || tail > nradii) throw std::invalid_argument("tail must lie in [2, nradii]");
  if (nstarts < 1) throw std::invalid_argument("nstarts must be at least 1");
  if (local_steps < 0) throw std::invalid_argument("local_steps must be nonnegative");
}

double SamplerConfig::radius(int k) const { return eps0 * std::pow(rho, k); }

SphereObjective make_objective(const TestQuantity& q) {
  SphereObjective obj;
  obj.nx = q.nx();
  obj.ny = q.ny();
  obj.homogeneity = q.p();
  obj.value = [q](const VectorR& x, const VectorR& y) { return q(x, y); };
  return obj;
}

bool is_numerical_zero(const Real& value, const Real& sample_max, double homogeneity) {
  if (value <= Real(1e-300)) return true;
  const Real floor = sample_max * boost::multiprecision::pow(Real(1e-30), Real(homogeneity));
  return value <= floor;
}

VectorR sphere_sample(std::size_t dim, double radius, std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  VectorR v(static_cast<Eigen::Index>(dim));
  do {
    for (auto& c : v) c = Real(normal(rng));
  } while (v.squaredNorm() == 0);
  return v * (Real(radius) / v.norm());
}

namespace {

constexpr std::uint64_t kStreamX = 1;
constexpr std::uint64_t kStreamY = 2;

struct Candidate {
  VectorR x, y;
  Real value = 0;
  Real start_value = 0;
  bool ok = false;
};

bool lex_less(const VectorR& a, const VectorR& b) {
  for (Eigen::Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (lex_less(a.x, b.x)) return true;
  if (lex_less(b.x, a.x)) return false;
  return lex_less(a.y, b.y);
}

bool project(VectorR& v, const Real& radius) {
  const Real norm = v.norm();
  if (norm == 0) return false;
  v *= radius / norm;
  return true;
}

// Compass search over the coordinates of (x, y) with re-projection onto the
// spheres after each move. An accepted move is extended by doubling while it
// keeps improving; a sweep without improvement halves the step.
template <class Eval, class Accept>
void compass_descent(VectorR& x, VectorR& y, Real& value, const Real& radius, int max_sweeps,
                     const Eval& eval, const Accept& stop_early) {
  const Eigen::Index nx = x.size(), ny = y.size();
  const Real min_scale = Real(1e-60);
  Real scale = Real(0.25);
  for (int sweep = 0; sweep < max_sweeps && scale > min_scale; ++sweep) {
    bool improved = false;
    for (Eigen::Index c = 0; c < nx + ny; ++c) {
      const bool on_x = c < nx;
      const Real h = on_x ? scale * radius : scale;
      for (int dir : {1, -1}) {
        Real step = dir * h;
        bool moved = false;
        while (true) {
          VectorR tx = x, ty = y;
          if (on_x) {
            tx[c] += step;
            if (!project(tx, radius)) break;
          } else {
            ty[c - nx] += step;
            if (!project(ty, Real(1))) break;
          }
          std::optional<Real> v = eval(tx, ty);
          if (!v || !(*v < value)) break;
          x = std::move(tx);
          y = std::move(ty);
          value = *v;
          moved = true;
          if (stop_early(value)) return;
          step *= 2;
        }
        if (moved) {
          improved = true;
          break;
        }
      }
    }
    if (!improved) scale /= 2;
  }
}

Candidate run_start(const SphereObjective& q, const Real& radius, const SamplerConfig& cfg,
                    std::uint64_t index) {
  Candidate cand;
  cand.x = sphere_sample(q.nx, 1.0, cfg.seed, kStreamX, index) * radius;
  cand.y = q.ny > 0 ? sphere_sample(q.ny, 1.0, cfg.seed, kStreamY, index) : VectorR();

  if (q.constraint) {
    Real c = q.constraint(cand.x);
    if (!(c < 0)) {
      VectorR no_y;
      auto eval_c = [&](const VectorR& tx, const VectorR&) -> std::optional<Real> {
        return q.constraint(tx);
      };
      compass_descent(cand.x, no_y, c, radius, cfg.local_steps, eval_c,
                      [](const Real& v) { return v < 0; });
      if (!(c < 0)) return cand;  // never reached the admissible region
    }
  }

  cand.value = q.value(cand.x, cand.y);
  cand.start_value = cand.value;
  cand.ok = true;
  auto eval = [&](const VectorR& tx, const VectorR& ty) -> std::optional<Real> {
    if (q.constraint && !(q.constraint(tx) < 0)) return std::nullopt;
    return q.value(tx, ty);
  };
  compass_descent(cand.x, cand.y, cand.value, radius, cfg.local_steps, eval,
                  [](const Real& v) { return v == 0; });
  return cand;
}

unsigned worker_count(const SamplerConfig& cfg) {
  unsigned t = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  return std::min<unsigned>(t, static_cast<unsigned>(cfg.nstarts));
}

}  // namespace

SphereMinimum min_on_sphere(const SphereObjective& q, double radius, const SamplerConfig& cfg) {
  cfg.validate();
  if (!(radius > 0)) throw std::invalid_argument("min_on_sphere: radius must be positive");
  if (q.nx == 0 || !q.value) throw std::invalid_argument("min_on_sphere: empty objective");

  const Real r(radius);
  std::vector<Candidate> results(static_cast<std::size_t>(cfg.nstarts));
  const unsigned workers = worker_count(cfg);
  if (workers <= 1) {
    for (std::size_t i = 0; i < results.size(); ++i) results[i] = run_start(q, r, cfg, i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < results.size(); i += workers)
          results[i] = run_start(q, r, cfg, i);
      });
  }

  SphereMinimum out;
  out.radius = radius;
  const Candidate* best = nullptr;
  for (const auto& c : results) {
    if (!c.ok) continue;
    out.sample_max = std::max(out.sample_max, c.start_value);
    if (best == nullptr || candidate_less(c, *best)) best = &c;
  }
  if (best == nullptr) {
    out.found = false;
    return out;
  }
  out.min_value = best->value;
  out.argmin_x = best->x;
  if (q.ny > 0) out.argmin_y = best->y;
  out.zero = is_numerical_zero(out.min_value, out.sample_max, q.homogeneity);
  return out;
}

SphereMinimum min_on_sphere(const TestQuantity& q, double radius, const SamplerConfig& cfg) {
  return min_on_sphere(make_objective(q), radius, cfg);
}

void fit_loglog(const std::vector<const SphereMinimum*>& tail, ExponentEstimate& out) {
  const std::size_t k = tail.size();
  out.fitted = static_cast<int>(k);
  if (k < 2) {
    out.kappa_hat = out.intercept = std::numeric_limits<double>::quiet_NaN();
    out.std_error = out.residual_max = 0;
    return;
  }
  std::vector<double> xs, ys;
  for (const auto* s : tail) {
    xs.push_back(std::log(s->radius));
    ys.push_back(static_cast<double>(log(s->min_value)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(k);
  my /= double(k);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.kappa_hat = sxy / sxx;
  out.intercept = my - out.kappa_hat * mx;
  double ssr = 0, rmax = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double res = ys[i] - (out.intercept + out.kappa_hat * xs[i]);
    ssr += res * res;
    rmax = std::max(rmax, std::abs(res));
  }
  out.residual_max = rmax;
  out.std_error = k > 2 ? std::sqrt(ssr / double(k - 2) / sxx) : 0.0;
}

ExponentEstimate estimate_exponent(const SphereObjective& q, const SamplerConfig& cfg) {
  cfg.validate();
  ExponentEstimate est;
  for (int k = 0; k < cfg.nradii; ++k) est.samples.push_back(min_on_sphere(q, cfg.radius(k), cfg));

  std::vector<const SphereMinimum*> found;
  for (const auto& s : est.samples)
    if (s.found) found.push_back(&s);
  const std::size_t take = std::min<std::size_t>(found.size(), std::size_t(cfg.tail));
  std::vector<const SphereMinimum*> tail(found.end() - std::ptrdiff_t(take), found.end());

  est.degenerate = std::any_of(tail.begin(), tail.end(), [](auto* s) { return s->zero; });
  if (est.degenerate) {
    est.fitted = static_cast<int>(tail.size());
    est.kappa_hat = std::numeric_limits<double>::infinity();
    est.intercept = std::numeric_limits<double>::quiet_NaN();
    return est;
  }
  fit_loglog(tail, est);
  return est;
}

ExponentEstimate estimate_exponent(const TestQuantity& q, const SamplerConfig& cfg) {
  return estimate_exponent(make_objective(q), cfg);
}

Rational gwozdziewicz_bound(unsigned d, unsigned n) {
  if (d < 1 || n < 1) throw std::invalid_argument("gwozdziewicz_bound: need d >= 1 and n >= 1");
  mpz_class base = d - 1;
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), n);
  return Rational(power + 1);
}

}  // namespace jetcheck
