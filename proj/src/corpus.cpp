#include "jetcheck/corpus.hpp"

#include <algorithm>

namespace jetcheck {

const std::vector<CorpusEntry>& builtin_corpus() {
  // hopf uses the variable order (tau, lambda, xi, eta) = (x1, x2, x3, x4).
  static const std::vector<CorpusEntry> corpus = {
      {"example1", "quartic w whose 4-jet is not sufficient",
       {"x1^2 - 2*x1*x2^2 + x1^4 + x2^4"}, 2, 4, true},
      {"hopf", "(lambda*xi + tau*eta, tau*xi - lambda*eta), sufficient 2-jet",
       {"x2*x3 + x1*x4", "x1*x3 - x2*x4"}, 4, 2, false},
      {"linear", "regular linear germ x1", {"x1"}, 1, 1, false},
      {"radial", "x1^2 + x2^2", {"x1^2 + x2^2"}, 2, 2, true},
      {"axis_degenerate", "x1^2 on the plane, critical along the x2-axis", {"x1^2"}, 2, 2, false},
      {"cusp", "x1^2 - x2^3, sufficient 3-jet", {"x1^2 - x2^3"}, 2, 3, false},
      {"degenerate_fold", "(x1, x2^2) on R^3, rank drops along the x3-axis",
       {"x1", "x2^2"}, 3, 2, false},
  };
  return corpus;
}

std::optional<CorpusEntry> find_corpus_entry(const std::string& name) {
  for (const auto& e : builtin_corpus())
    if (e.name == name) return e;
  return std::nullopt;
}

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::vector<std::string> suggest_corpus_names(const std::string& name) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& e : builtin_corpus()) {
    const std::size_t d = edit_distance(name, e.name);
    const bool prefix = !name.empty() && e.name.rfind(name.substr(0, 3), 0) == 0;
    if (d <= 3 || prefix) scored.emplace_back(d, e.name);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (auto& s : scored) out.push_back(std::move(s.second));
  return out;
}

}  // namespace jetcheck
