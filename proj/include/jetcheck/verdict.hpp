#pragma once

// Sufficiency verdicts for r-jets from estimated growth exponents, plus the
// classical Kuiper-Kuo and Kuo conditions used for cross-checking.

#include "jetcheck/lojas.hpp"

#include <optional>
#include <string>

namespace jetcheck {

/// Smoothness class of the germs the jet is tested against: C^r or C^{r+1}.
enum class Smoothness { Er, ErPlus1 };
enum class Status { Sufficient, Insufficient, Inconclusive };

std::string to_string(Smoothness s);
std::string to_string(Status s);
Smoothness parse_smoothness(const std::string& s);
Status parse_status(const std::string& s);

struct JetProblem {
  PolyMap f;  // the r-jet f^(r)
  unsigned r = 1;
  Smoothness smoothness = Smoothness::Er;
  unsigned p = 2;
  /// R or T; for m = 1 these select Rstar/Tstar (which are also accepted).
  QuantityKind kind = QuantityKind::R;

  std::size_t n() const { return f.n(); }
  std::size_t m() const { return f.m(); }
  /// Throws std::invalid_argument naming the violated requirement.
  void validate() const;
  /// The quantity actually minimized (starred kinds when m = 1).
  QuantityKind effective_kind() const;
};

struct SufficiencyVerdict {
  Status status = Status::Inconclusive;
  std::string criterion;
  double kappa_hat = 0;
  double threshold = 0;
  double tolerance = 0;
  /// (threshold - kappa_hat) / tolerance.
  double margin = 0;
  std::optional<SphereMinimum> witness;
  /// Extra diagnostic, e.g. "UNDETERMINED_EMPTY_HORN" or "EMPTY_HORN".
  std::string note;
  ExponentEstimate estimate;
};

struct HornSpec {
  double s = 1.0;
  double sigma = 0.5;
  void validate() const;
};

/// tau = max(0.15, 3 * stderr).
double verdict_tolerance(double std_error);

/// Maps an estimate onto a status. With `inclusive` the threshold itself
/// counts as sufficient (C^r classes); otherwise a strict gap below it is
/// required and the band around it is inconclusive (C^{r+1} classes).
SufficiencyVerdict decide(const ExponentEstimate& est, double threshold, bool inclusive,
                          std::string criterion);

SufficiencyVerdict analyze_jet(const JetProblem& problem, const SamplerConfig& cfg);

/// Kuiper-Kuo: growth exponent of min_{|x|=eps} |grad f| against r-1 (C^r)
/// or r - delta (C^{r+1}).
SufficiencyVerdict check_kuiper_kuo(const Polynomial& f, unsigned r, Smoothness variant,
                                    const SamplerConfig& cfg);

/// |f(x)| < sigma |x|^s.
template <class Scalar>
bool horn_membership(const PolyMap& f, const Vec<Scalar>& x, const HornSpec& horn);

/// Kuo (C^r form): growth exponent of min D(grad f_1, ..., grad f_m) over
/// sphere points inside the horn H_s(f; sigma).
SufficiencyVerdict check_kuo(const PolyMap& f, unsigned r, const HornSpec& horn,
                             const SamplerConfig& cfg);

struct AgreementReport {
  SufficiencyVerdict r_verdict;
  SufficiencyVerdict t_verdict;
  SufficiencyVerdict kuo_verdict;
  bool agree = false;
};

/// Runs analyze_jet with kinds R and T (C^r class, p = 2) and check_kuo with
/// the horn H_r(f; 0.5); agree when all non-inconclusive statuses coincide.
AgreementReport cross_validate(const PolyMap& f, unsigned r, const SamplerConfig& cfg);

struct BochnakLojasiewiczReport {
  double min_ratio_small = 0;  // over sampled points with |x| <= eps0 * rho^4
  double min_ratio_large = 0;  // over the larger radii
  int violations = 0;          // small-radius points with ratio < theta
  int warnings = 0;            // large-radius points with ratio < theta
};

/// Samples |grad h(x)| |x| / |h(x)| on the sampler's spheres (nstarts points
/// each) and counts points where it drops below theta.
BochnakLojasiewiczReport bochnak_lojasiewicz_check(const Polynomial& h, const SamplerConfig& cfg,
                                                   double theta = 0.5);

}  // namespace jetcheck
