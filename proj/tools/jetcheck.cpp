// jetcheck: sufficiency of r-jets from the command line.
//
//   jetcheck analyze  --map "x2*x3+x1*x4; x1*x3-x2*x4" --n 4 --r 2 [--class r|r+1]
//   jetcheck analyze  --corpus hopf --cross-validate --json out.json --csv radii.csv
//   jetcheck corpus   --list | --corpus NAME
//   jetcheck truncate --map FILE|"f1; f2" --n N --r R
//
// Exit codes: 0 sufficient, 1 insufficient, 2 inconclusive, 64 usage,
// 65 bad input (parse error with line and column, unreadable file).

#include "jetcheck/corpus.hpp"
#include "jetcheck/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace jetcheck;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInput = 65;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MapText {
  std::vector<std::string> components;
  std::vector<std::pair<std::size_t, std::size_t>> origin;  // (line, column offset)
  std::string source;
};

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

// A path to an existing file is read line by line ('#' starts a comment
// line); anything else is an inline list separated by ';'.
MapText read_map(const std::string& arg) {
  MapText out;
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read " + arg);
    out.source = arg;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out.components.push_back(line);
      out.origin.emplace_back(no, 0);
    }
    if (in.bad()) throw InputError("cannot read " + arg);
  } else {
    out.source = "inline";
    std::size_t start = 0;
    while (start <= arg.size()) {
      std::size_t end = arg.find(';', start);
      if (end == std::string::npos) end = arg.size();
      std::string part = arg.substr(start, end - start);
      if (!blank(part)) {
        out.components.push_back(part);
        out.origin.emplace_back(1, start);
      }
      start = end + 1;
    }
  }
  if (out.components.empty()) throw InputError("no components in --map");
  return out;
}

std::vector<Polynomial> parse_components(const MapText& text, std::size_t n) {
  std::vector<Polynomial> polys;
  for (std::size_t j = 0; j < text.components.size(); ++j) {
    try {
      polys.push_back(parse_poly(text.components[j], n));
    } catch (const ParseError& e) {
      const auto [line, offset] = text.origin[j];
      std::ostringstream os;
      os << text.source << ":" << line << ":" << offset + e.column() << ": " << e.what();
      throw InputError(os.str());
    }
  }
  return polys;
}

unsigned env_threads() {
  const char* v = std::getenv("JETCHECK_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  const long t = std::strtol(v, &end, 10);
  if (*end != '\0' || t < 0) throw UsageError("JETCHECK_THREADS must be a nonnegative integer");
  return static_cast<unsigned>(t);
}

std::string unknown_corpus_message(const std::string& name) {
  std::string msg = "unknown corpus entry '" + name + "'";
  const auto hints = suggest_corpus_names(name);
  if (!hints.empty()) {
    msg += "; did you mean";
    for (std::size_t i = 0; i < hints.size(); ++i) msg += (i ? ", " : " ") + hints[i];
    msg += "?";
  } else {
    msg += "; known entries:";
    for (const auto& e : builtin_corpus()) msg += " " + e.name;
  }
  return msg;
}

int exit_code(Status s) {
  switch (s) {
    case Status::Sufficient: return 0;
    case Status::Insufficient: return 1;
    case Status::Inconclusive: return 2;
  }
  return 2;
}

struct AnalyzeArgs {
  std::string map, corpus, klass = "r", kind = "R", json_path, csv_path;
  std::size_t n = 0, m = 0;
  unsigned r = 0, p = 2;
  bool cross = false, timings = false;
  SamplerConfig cfg;
};

int cmd_analyze(const AnalyzeArgs& a) {
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point t0) {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  std::map<std::string, double> timings;
  auto t0 = clock::now();

  MapText text;
  std::size_t n = a.n;
  unsigned r = a.r;
  if (!a.corpus.empty()) {
    if (!a.map.empty()) throw UsageError("--corpus and --map are mutually exclusive");
    const auto entry = find_corpus_entry(a.corpus);
    if (!entry) throw UsageError(unknown_corpus_message(a.corpus));
    text.components = entry->components;
    text.origin.assign(entry->components.size(), {1, 0});
    text.source = "corpus:" + entry->name;
    if (n != 0 && n != entry->n) throw UsageError("--n conflicts with the corpus entry");
    n = entry->n;
    if (r == 0) r = entry->r;
  } else {
    if (a.map.empty()) throw UsageError("analyze needs --map or --corpus");
    if (n == 0) throw UsageError("--n is required with --map");
    if (r == 0) throw UsageError("--r is required with --map");
    text = read_map(a.map);
  }
  if (a.m != 0 && a.m != text.components.size())
    throw UsageError("--m " + std::to_string(a.m) + " but the map has " +
                     std::to_string(text.components.size()) + " components");

  JetProblem problem;
  problem.f = PolyMap(parse_components(text, n));
  problem.r = r;
  problem.smoothness = parse_smoothness(a.klass);
  problem.p = a.p;
  problem.kind = parse_quantity_kind(a.kind);
  problem.validate();
  timings["parse"] = seconds(t0);

  SamplerConfig cfg = a.cfg;
  cfg.threads = env_threads();
  cfg.validate();

  t0 = clock::now();
  const SufficiencyVerdict verdict = analyze_jet(problem, cfg);
  timings["analyze"] = seconds(t0);

  std::optional<AgreementReport> cross;
  if (a.cross) {
    t0 = clock::now();
    cross = cross_validate(problem.f, problem.r, cfg);
    timings["cross_validate"] = seconds(t0);
  }

  AnalysisReport report = make_report(problem, text.components, text.source, cfg, verdict, cross);
  if (a.timings) report.timings = timings;
  const std::string doc = serialize(report);
  std::cout << doc;
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path, std::ios::binary);
    out << doc;
    if (!out) throw InputError("cannot write " + a.json_path);
  }
  if (!a.csv_path.empty()) {
    std::ofstream out(a.csv_path, std::ios::binary);
    write_csv(out, report);
    if (!out) throw InputError("cannot write " + a.csv_path);
  }
  return exit_code(verdict.status);
}

int cmd_corpus(bool list, const std::string& name) {
  if (list) {
    for (const auto& e : builtin_corpus()) std::cout << e.name << "\t" << e.description << "\n";
    return 0;
  }
  if (name.empty()) throw UsageError("corpus needs --list or --corpus NAME");
  const auto e = find_corpus_entry(name);
  if (!e) throw UsageError(unknown_corpus_message(name));
  std::cout << "name: " << e->name << "\n"
            << "description: " << e->description << "\n"
            << "n: " << e->n << "\nm: " << e->m() << "\nr: " << e->r << "\n";
  if (e->name == "hopf") std::cout << "variables: (tau, lambda, xi, eta) = (x1, x2, x3, x4)\n";
  for (std::size_t j = 0; j < e->m(); ++j)
    std::cout << "f" << j + 1 << ": " << e->components[j] << "\n";
  return 0;
}

int cmd_truncate(const std::string& map, std::size_t n, unsigned r) {
  const MapText text = read_map(map);
  for (const auto& p : parse_components(text, n)) std::cout << to_string(truncate_jet(p, r)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sufficiency of r-jets via growth exponents of R/T test quantities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "estimate the growth exponent and decide sufficiency");
  analyze->add_option("--map", aa.map, "file with one component per line, or \"f1; f2; ...\"");
  analyze->add_option("--corpus", aa.corpus, "use a built-in problem instead of --map");
  analyze->add_option("--n", aa.n, "number of variables")->check(CLI::PositiveNumber);
  analyze->add_option("--m", aa.m, "number of components (checked against --map)")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--r", aa.r, "jet order")->check(CLI::PositiveNumber);
  analyze->add_option("--class", aa.klass, "smoothness class")
      ->check(CLI::IsMember({"r", "r+1"}))
      ->capture_default_str();
  analyze->add_option("--p", aa.p, "exponent p")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--kind", aa.kind, "test quantity")
      ->check(CLI::IsMember({"R", "T"}))
      ->capture_default_str();
  analyze->add_option("--eps0", aa.cfg.eps0, "largest radius")->capture_default_str();
  analyze->add_option("--rho", aa.cfg.rho, "radius ratio")->capture_default_str();
  analyze->add_option("--nradii", aa.cfg.nradii, "number of radii")->capture_default_str();
  analyze->add_option("--starts", aa.cfg.nstarts, "multistart count per radius")
      ->capture_default_str();
  analyze->add_option("--local-steps", aa.cfg.local_steps, "local search sweeps per start")
      ->capture_default_str();
  analyze->add_option("--seed", aa.cfg.seed, "random seed")->capture_default_str();
  analyze->add_option("--tail", aa.cfg.tail, "radii used in the fit")->capture_default_str();
  analyze->add_option("--json", aa.json_path, "also write the report here");
  analyze->add_option("--csv", aa.csv_path, "write per-radius minima here");
  analyze->add_flag("--cross-validate", aa.cross, "also run R, T and Kuo and compare");
  analyze->add_flag("--timings", aa.timings, "include wall-clock timings in the report");

  bool list = false;
  std::string corpus_name;
  auto* corpus = app.add_subcommand("corpus", "list or show built-in problems");
  corpus->add_flag("--list", list, "list entries");
  corpus->add_option("--corpus,name", corpus_name, "entry to show");

  std::string tmap;
  std::size_t tn = 0;
  unsigned tr = 0;
  auto* truncate = app.add_subcommand("truncate", "print the r-jet of each component");
  truncate->add_option("--map", tmap, "file or \"f1; f2; ...\"")->required();
  truncate->add_option("--n", tn, "number of variables")->required()->check(CLI::PositiveNumber);
  truncate->add_option("--r", tr, "jet order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(aa);
    if (corpus->parsed()) return cmd_corpus(list, corpus_name);
    if (truncate->parsed()) return cmd_truncate(tmap, tn, tr);
  } catch (const InputError& e) {
    std::cerr << "jetcheck: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "jetcheck: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "jetcheck: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "jetcheck: internal error: " << e.what() << "\n";
    return 70;
  }
  return kExitUsage;
}
