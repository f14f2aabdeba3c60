#include "jetcheck/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace jetcheck {

std::string to_string(Smoothness s) { return s == Smoothness::Er ? "r" : "r+1"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::Sufficient: return "SUFFICIENT";
    case Status::Insufficient: return "INSUFFICIENT";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Smoothness parse_smoothness(const std::string& s) {
  if (s == "r") return Smoothness::Er;
  if (s == "r+1") return Smoothness::ErPlus1;
  throw std::invalid_argument("smoothness class must be 'r' or 'r+1' (got '" + s + "')");
}

Status parse_status(const std::string& s) {
  if (s == "SUFFICIENT") return Status::Sufficient;
  if (s == "INSUFFICIENT") return Status::Insufficient;
  if (s == "INCONCLUSIVE") return Status::Inconclusive;
  throw std::invalid_argument("unknown status '" + s + "'");
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_jet(const PolyMap& f, unsigned r) {
  if (f.m() == 0) throw std::invalid_argument("the map has no components");
  if (!f.vanishes_at_origin())
    throw std::invalid_argument("f(0) != 0: every component must have zero constant term");
  for (std::size_t j = 0; j < f.m(); ++j)
    if (f[j].degree() > static_cast<int>(r))
      throw std::invalid_argument("component " + std::to_string(j + 1) + " has degree " +
                                  std::to_string(f[j].degree()) + " > r = " + std::to_string(r) +
                                  "; pass the r-jet (see truncate)");
}

const SphereMinimum* smallest_found(const ExponentEstimate& est, bool zero_only) {
  for (auto it = est.samples.rbegin(); it != est.samples.rend(); ++it)
    if (it->found && (!zero_only || it->zero)) return &*it;
  return nullptr;
}

std::string power_text(double e) {
  std::ostringstream os;
  os << e;
  return os.str();
}

}  // namespace

void JetProblem::validate() const {
  if (f.m() == 0) throw std::invalid_argument("the map has no components");
  if (n() < m())
    throw std::invalid_argument("need n >= m (got n = " + std::to_string(n()) +
                                ", m = " + std::to_string(m()) + ")");
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (smoothness == Smoothness::Er && m() > 1 && r < 2)
    throw std::invalid_argument("the C^r criterion for maps (m > 1) requires r >= 2");
  if (p < 1) throw std::invalid_argument("p must be a positive integer");
  require_jet(f, r);
  switch (kind) {
    case QuantityKind::R:
    case QuantityKind::T: break;
    case QuantityKind::Rstar:
    case QuantityKind::Tstar:
      if (m() != 1) throw std::invalid_argument(to_string(kind) + " needs m = 1");
      break;
    case QuantityKind::Thom:
      if (m() != 1 || p != 2) throw std::invalid_argument("Thom needs m = 1 and p = 2");
      break;
  }
}

QuantityKind JetProblem::effective_kind() const {
  if (m() == 1 && kind == QuantityKind::R) return QuantityKind::Rstar;
  if (m() == 1 && kind == QuantityKind::T) return QuantityKind::Tstar;
  return kind;
}

void HornSpec::validate() const {
  if (!(s >= 1)) throw std::invalid_argument("horn exponent s must be >= 1");
  if (!(sigma > 0)) throw std::invalid_argument("horn width sigma must be positive");
}

double verdict_tolerance(double std_error) {
  const double se = std::isfinite(std_error) ? std_error : 0.0;
  return std::max(0.15, 3.0 * se);
}

SufficiencyVerdict decide(const ExponentEstimate& est, double threshold, bool inclusive,
                          std::string criterion) {
  SufficiencyVerdict v;
  v.criterion = std::move(criterion);
  v.estimate = est;
  v.kappa_hat = est.kappa_hat;
  v.threshold = threshold;
  v.tolerance = verdict_tolerance(est.std_error);
  v.margin = (threshold - est.kappa_hat) / v.tolerance;

  if (est.degenerate) {
    v.status = Status::Insufficient;
    v.margin = -std::numeric_limits<double>::infinity();
    if (const auto* w = smallest_found(est, true)) v.witness = *w;
    v.note = "ZERO_ON_SPHERE";
    return v;
  }
  if (!std::isfinite(est.kappa_hat)) {
    v.status = Status::Inconclusive;
    v.note = "NO_FIT";
    return v;
  }
  const double k = est.kappa_hat, tau = v.tolerance;
  if (inclusive) {
    v.status = k <= threshold + tau ? Status::Sufficient : Status::Insufficient;
  } else if (k <= threshold - tau) {
    v.status = Status::Sufficient;
  } else if (k > threshold + tau) {
    v.status = Status::Insufficient;
  } else {
    v.status = Status::Inconclusive;
  }
  if (v.status == Status::Insufficient)
    if (const auto* w = smallest_found(est, false)) v.witness = *w;
  return v;
}

SufficiencyVerdict analyze_jet(const JetProblem& problem, const SamplerConfig& cfg) {
  problem.validate();
  cfg.validate();
  const QuantityKind kind = problem.effective_kind();
  const unsigned p = kind == QuantityKind::Thom ? 2 : problem.p;
  const TestQuantity q = make_quantity(kind, problem.f, p);
  const ExponentEstimate est = estimate_exponent(q, cfg);

  const bool er = problem.smoothness == Smoothness::Er;
  const double threshold = er ? double(p) * problem.r : double(p) * (problem.r + 1);
  const std::string lhs = to_string(kind) + "_" + std::to_string(p) +
                          (uses_y(kind) ? "(f;x,y)" : "(f;x)");
  const std::string ypow = uses_y(kind) ? "|y|^" + std::to_string(p) : "";
  std::string criterion =
      er ? lhs + " >= q |x|^" + power_text(threshold) + ypow + " for small x"
         : lhs + " / (|x|^" + power_text(threshold) + ypow + ") -> infinity as x -> 0";
  return decide(est, threshold, er, std::move(criterion));
}

SufficiencyVerdict check_kuiper_kuo(const Polynomial& f, unsigned r, Smoothness variant,
                                    const SamplerConfig& cfg) {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  const PolyMap map({f});
  require_jet(map, r);
  cfg.validate();
  auto numeric = std::make_shared<const NumericMap<Real>>(map);
  SphereObjective obj;
  obj.nx = f.nvars();
  obj.homogeneity = 1.0;
  obj.value = [numeric](const VectorR& x, const VectorR&) {
    VectorR values;
    MatrixR jac;
    numeric->evaluate(x, values, jac);
    return Real(jac.col(0).norm());
  };
  const ExponentEstimate est = estimate_exponent(obj, cfg);
  const bool er = variant == Smoothness::Er;
  const double threshold = er ? double(r) - 1.0 : double(r);
  std::string criterion = er ? "|grad f(x)| >= C |x|^" + power_text(threshold)
                             : "|grad f(x)| >= C |x|^(" + power_text(threshold) + " - delta)";
  return decide(est, threshold, er, std::move(criterion));
}

template <class Scalar>
bool horn_membership(const PolyMap& f, const Vec<Scalar>& x, const HornSpec& horn) {
  using std::pow;
  using std::sqrt;
  horn.validate();
  if (static_cast<std::size_t>(x.size()) != f.n())
    throw std::invalid_argument("horn_membership: dimension mismatch");
  const Scalar xnorm = x.norm();
  if (xnorm == Scalar(0)) throw std::invalid_argument("horn_membership: x must be nonzero");
  Scalar fsq(0);
  for (const auto& c : f.components()) {
    const Scalar v = c(x);
    fsq += v * v;
  }
  return Scalar(sqrt(fsq)) < Scalar(horn.sigma) * Scalar(pow(xnorm, Scalar(horn.s)));
}

template bool horn_membership(const PolyMap&, const Vec<double>&, const HornSpec&);
template bool horn_membership(const PolyMap&, const Vec<Real>&, const HornSpec&);

SufficiencyVerdict check_kuo(const PolyMap& f, unsigned r, const HornSpec& horn,
                             const SamplerConfig& cfg) {
  if (f.m() == 0) throw std::invalid_argument("the map has no components");
  if (f.n() < f.m())
    throw std::invalid_argument("need n >= m (got n = " + std::to_string(f.n()) +
                                ", m = " + std::to_string(f.m()) + ")");
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  require_jet(f, r);
  horn.validate();
  cfg.validate();

  auto numeric = std::make_shared<const NumericMap<Real>>(f);
  SphereObjective obj;
  obj.nx = f.n();
  obj.homogeneity = 1.0;
  obj.value = [numeric](const VectorR& x, const VectorR&) {
    VectorR values;
    MatrixR jac;
    numeric->evaluate(x, values, jac);
    return dist_D(jac);
  };
  const Real sigma(horn.sigma), s(horn.s);
  obj.constraint = [numeric, sigma, s](const VectorR& x) {
    return Real(numeric->values(x).norm() - sigma * pow(x.norm(), s));
  };
  const ExponentEstimate est = estimate_exponent(obj, cfg);

  const double threshold = double(r) - 1.0;
  std::ostringstream crit;
  crit << "D(grad f_1, ..., grad f_m) >= C |x|^" << threshold << " in H_" << horn.s
       << "(f; " << horn.sigma << ")";
  const auto found = std::count_if(est.samples.begin(), est.samples.end(),
                                   [](const SphereMinimum& s) { return s.found; });
  if (found == 0) {
    // No admissible point near the origin: the condition holds vacuously.
    SufficiencyVerdict v;
    v.status = Status::Sufficient;
    v.criterion = crit.str();
    v.estimate = est;
    v.kappa_hat = kNaN;
    v.threshold = threshold;
    v.tolerance = verdict_tolerance(0);
    v.margin = kNaN;
    v.note = "EMPTY_HORN";
    return v;
  }
  if (found < 4) {
    SufficiencyVerdict v;
    v.status = Status::Inconclusive;
    v.criterion = crit.str();
    v.estimate = est;
    v.kappa_hat = est.kappa_hat;
    v.threshold = threshold;
    v.tolerance = verdict_tolerance(est.std_error);
    v.margin = kNaN;
    v.note = "UNDETERMINED_EMPTY_HORN";
    return v;
  }
  return decide(est, threshold, true, crit.str());
}

AgreementReport cross_validate(const PolyMap& f, unsigned r, const SamplerConfig& cfg) {
  AgreementReport out;
  JetProblem problem{f, r, Smoothness::Er, 2, QuantityKind::R};
  out.r_verdict = analyze_jet(problem, cfg);
  problem.kind = QuantityKind::T;
  out.t_verdict = analyze_jet(problem, cfg);
  out.kuo_verdict = check_kuo(f, r, HornSpec{double(r), 0.5}, cfg);

  std::optional<Status> seen;
  out.agree = true;
  for (const auto* v : {&out.r_verdict, &out.t_verdict, &out.kuo_verdict}) {
    if (v->status == Status::Inconclusive) continue;
    if (seen && *seen != v->status) out.agree = false;
    seen = v->status;
  }
  return out;
}

BochnakLojasiewiczReport bochnak_lojasiewicz_check(const Polynomial& h, const SamplerConfig& cfg,
                                                   double theta) {
  cfg.validate();
  const NumericMap<Real> numeric(PolyMap({h}));
  const double small_limit = cfg.radius(4) * (1 + 1e-12);
  BochnakLojasiewiczReport rep;
  rep.min_ratio_small = rep.min_ratio_large = std::numeric_limits<double>::infinity();
  for (int k = 0; k < cfg.nradii; ++k) {
    const double radius = cfg.radius(k);
    const bool small = radius <= small_limit;
    for (int i = 0; i < cfg.nstarts; ++i) {
      const VectorR x = sphere_sample(h.nvars(), radius, cfg.seed, 3, std::uint64_t(i));
      VectorR values;
      MatrixR jac;
      numeric.evaluate(x, values, jac);
      const Real hv = abs(values[0]);
      if (hv == 0) continue;
      const double ratio = static_cast<double>(jac.col(0).norm() * x.norm() / hv);
      double& slot = small ? rep.min_ratio_small : rep.min_ratio_large;
      slot = std::min(slot, ratio);
      if (ratio < theta) ++(small ? rep.violations : rep.warnings);
    }
  }
  return rep;
}

}  // namespace jetcheck
