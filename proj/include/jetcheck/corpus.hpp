#pragma once

// Named r-jets used by the CLI and the test suites.

#include "jetcheck/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jetcheck {

struct CorpusEntry {
  std::string name;
  std::string description;
  std::vector<std::string> components;  // positional grammar, x1..xn
  std::size_t n = 0;
  unsigned r = 1;
  bool isolated_zero = false;  // m = 1 entries whose zero at 0 is isolated

  std::size_t m() const { return components.size(); }
  PolyMap map() const { return parse_map(components, n); }
};

const std::vector<CorpusEntry>& builtin_corpus();
std::optional<CorpusEntry> find_corpus_entry(const std::string& name);
/// Known names closest to `name` (edit distance <= 3, or sharing a prefix).
std::vector<std::string> suggest_corpus_names(const std::string& name);

}  // namespace jetcheck
