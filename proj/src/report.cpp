#include "jetcheck/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace jetcheck {

using json = nlohmann::ordered_json;

namespace {

json num(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw std::invalid_argument("report: expected a number, got " + j.dump());
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

std::vector<double> to_doubles(const VectorR& v) {
  std::vector<double> out;
  for (const auto& c : v) out.push_back(static_cast<double>(c));
  return out;
}

json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double d : v) a.push_back(num(d));
  return a;
}

std::vector<double> get_num_array(const json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(get_num(e));
  return out;
}

json sample_json(const SampleRecord& s) {
  json j = {{"radius", num(s.radius)},
            {"min_value", num(s.min_value)},
            {"sample_max", num(s.sample_max)},
            {"argmin_x", num_array(s.argmin_x)},
            {"found", s.found},
            {"zero", s.zero}};
  if (s.argmin_y) j["argmin_y"] = num_array(*s.argmin_y);
  return j;
}

SampleRecord sample_from(const json& j) {
  SampleRecord s;
  s.radius = get_num(j.at("radius"));
  s.min_value = get_num(j.at("min_value"));
  s.sample_max = get_num(j.at("sample_max"));
  s.argmin_x = get_num_array(j.at("argmin_x"));
  if (j.contains("argmin_y")) s.argmin_y = get_num_array(j.at("argmin_y"));
  s.found = j.at("found").get<bool>();
  s.zero = j.at("zero").get<bool>();
  return s;
}

json verdict_json(const VerdictRecord& v) {
  json j = {{"status", to_string(v.status)}, {"criterion", v.criterion},
            {"kappa_hat", num(v.kappa_hat)}, {"threshold", num(v.threshold)},
            {"tolerance", num(v.tolerance)}, {"margin", num(v.margin)},
            {"note", v.note}};
  j["witness"] = v.witness ? sample_json(*v.witness) : json(nullptr);
  return j;
}

VerdictRecord verdict_from(const json& j) {
  VerdictRecord v;
  v.status = parse_status(j.at("status").get<std::string>());
  v.criterion = j.at("criterion").get<std::string>();
  v.kappa_hat = get_num(j.at("kappa_hat"));
  v.threshold = get_num(j.at("threshold"));
  v.tolerance = get_num(j.at("tolerance"));
  v.margin = get_num(j.at("margin"));
  v.note = j.at("note").get<std::string>();
  if (!j.at("witness").is_null()) v.witness = sample_from(j.at("witness"));
  return v;
}

}  // namespace

SampleRecord to_record(const SphereMinimum& s) {
  SampleRecord r;
  r.radius = s.radius;
  r.min_value = static_cast<double>(s.min_value);
  r.sample_max = static_cast<double>(s.sample_max);
  r.argmin_x = to_doubles(s.argmin_x);
  if (s.argmin_y) r.argmin_y = to_doubles(*s.argmin_y);
  r.found = s.found;
  r.zero = s.zero;
  return r;
}

EstimateRecord to_record(const ExponentEstimate& e) {
  EstimateRecord r;
  r.kappa_hat = e.kappa_hat;
  r.intercept = e.intercept;
  r.std_error = e.std_error;
  r.residual_max = e.residual_max;
  r.degenerate = e.degenerate;
  r.fitted = e.fitted;
  for (const auto& s : e.samples) r.samples.push_back(to_record(s));
  return r;
}

VerdictRecord to_record(const SufficiencyVerdict& v) {
  VerdictRecord r;
  r.status = v.status;
  r.criterion = v.criterion;
  r.kappa_hat = v.kappa_hat;
  r.threshold = v.threshold;
  r.tolerance = v.tolerance;
  r.margin = v.margin;
  r.note = v.note;
  if (v.witness) r.witness = to_record(*v.witness);
  return r;
}

AnalysisReport make_report(const JetProblem& problem, std::vector<std::string> input,
                           std::string source, const SamplerConfig& cfg,
                           const SufficiencyVerdict& verdict,
                           const std::optional<AgreementReport>& cross) {
  AnalysisReport rep;
  rep.problem.n = problem.n();
  rep.problem.m = problem.m();
  rep.problem.r = problem.r;
  rep.problem.smoothness = problem.smoothness;
  rep.problem.p = problem.p;
  rep.problem.kind = problem.kind;
  rep.problem.input = std::move(input);
  rep.problem.source = std::move(source);
  rep.config = cfg;
  rep.estimate = to_record(verdict.estimate);
  rep.verdict = to_record(verdict);
  if (cross)
    rep.cross_validation = CrossRecord{to_record(cross->r_verdict), to_record(cross->t_verdict),
                                       to_record(cross->kuo_verdict), cross->agree};
  return rep;
}

json to_json(const AnalysisReport& rep) {
  json j;
  j["schema"] = kReportSchema;
  j["tool_version"] = rep.tool_version;
  const auto& p = rep.problem;
  j["problem"] = {{"n", p.n},
                  {"m", p.m},
                  {"r", p.r},
                  {"smoothness", to_string(p.smoothness)},
                  {"p", p.p},
                  {"kind", to_string(p.kind)},
                  {"input", p.input},
                  {"source", p.source}};
  const auto& c = rep.config;
  j["config"] = {{"eps0", c.eps0},     {"rho", c.rho},   {"nradii", c.nradii},
                 {"nstarts", c.nstarts}, {"local_steps", c.local_steps},
                 {"seed", c.seed},     {"tail", c.tail}};
  const auto& e = rep.estimate;
  json samples = json::array();
  for (const auto& s : e.samples) samples.push_back(sample_json(s));
  j["estimate"] = {{"kappa_hat", num(e.kappa_hat)},
                   {"intercept", num(e.intercept)},
                   {"stderr", num(e.std_error)},
                   {"residual_max", num(e.residual_max)},
                   {"degenerate", e.degenerate},
                   {"fitted", e.fitted},
                   {"samples", samples}};
  j["verdict"] = verdict_json(rep.verdict);
  if (rep.cross_validation) {
    const auto& x = *rep.cross_validation;
    j["cross_validation"] = {{"R", verdict_json(x.r)},
                             {"T", verdict_json(x.t)},
                             {"kuo", verdict_json(x.kuo)},
                             {"agree", x.agree}};
  }
  if (rep.timings) {
    json t = json::object();
    for (const auto& [k, v] : *rep.timings) t[k] = num(v);
    j["timings"] = t;
  }
  return j;
}

AnalysisReport report_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != kReportSchema)
    throw std::invalid_argument("report: unsupported schema " + j.at("schema").dump());
  AnalysisReport rep;
  rep.tool_version = j.at("tool_version").get<std::string>();
  const auto& p = j.at("problem");
  rep.problem.n = p.at("n").get<std::size_t>();
  rep.problem.m = p.at("m").get<std::size_t>();
  rep.problem.r = p.at("r").get<unsigned>();
  rep.problem.smoothness = parse_smoothness(p.at("smoothness").get<std::string>());
  rep.problem.p = p.at("p").get<unsigned>();
  rep.problem.kind = parse_quantity_kind(p.at("kind").get<std::string>());
  rep.problem.input = p.at("input").get<std::vector<std::string>>();
  rep.problem.source = p.at("source").get<std::string>();
  const auto& c = j.at("config");
  rep.config.eps0 = c.at("eps0").get<double>();
  rep.config.rho = c.at("rho").get<double>();
  rep.config.nradii = c.at("nradii").get<int>();
  rep.config.nstarts = c.at("nstarts").get<int>();
  rep.config.local_steps = c.at("local_steps").get<int>();
  rep.config.seed = c.at("seed").get<std::uint64_t>();
  rep.config.tail = c.at("tail").get<int>();
  const auto& e = j.at("estimate");
  rep.estimate.kappa_hat = get_num(e.at("kappa_hat"));
  rep.estimate.intercept = get_num(e.at("intercept"));
  rep.estimate.std_error = get_num(e.at("stderr"));
  rep.estimate.residual_max = get_num(e.at("residual_max"));
  rep.estimate.degenerate = e.at("degenerate").get<bool>();
  rep.estimate.fitted = e.at("fitted").get<int>();
  for (const auto& s : e.at("samples")) rep.estimate.samples.push_back(sample_from(s));
  rep.verdict = verdict_from(j.at("verdict"));
  if (j.contains("cross_validation")) {
    const auto& x = j.at("cross_validation");
    rep.cross_validation = CrossRecord{verdict_from(x.at("R")), verdict_from(x.at("T")),
                                       verdict_from(x.at("kuo")), x.at("agree").get<bool>()};
  }
  if (j.contains("timings")) {
    std::map<std::string, double> t;
    for (const auto& [k, v] : j.at("timings").items()) t[k] = get_num(v);
    rep.timings = std::move(t);
  }
  return rep;
}

std::string serialize(const AnalysisReport& report) { return to_json(report).dump(2) + "\n"; }

namespace {

struct Checker {
  std::vector<std::string> errors;

  const json* field(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) {
      errors.push_back("missing " + path + key);
      return nullptr;
    }
    return &obj.at(key);
  }
  void number(const json& obj, const std::string& path, const std::string& key) {
    if (const json* v = field(obj, path, key)) {
      const bool ok = v->is_number() ||
                      (v->is_string() && (*v == "NaN" || *v == "Infinity" || *v == "-Infinity"));
      if (!ok) errors.push_back(path + key + " is not a number");
    }
  }
  void integer(const json& obj, const std::string& path, const std::string& key, long min) {
    if (const json* v = field(obj, path, key)) {
      if (!v->is_number_integer() || v->get<long long>() < min)
        errors.push_back(path + key + " must be an integer >= " + std::to_string(min));
    }
  }
  void boolean(const json& obj, const std::string& path, const std::string& key) {
    if (const json* v = field(obj, path, key))
      if (!v->is_boolean()) errors.push_back(path + key + " is not a boolean");
  }
  void oneof(const json& obj, const std::string& path, const std::string& key,
             std::initializer_list<const char*> allowed) {
    if (const json* v = field(obj, path, key)) {
      bool ok = false;
      if (v->is_string())
        for (const char* a : allowed) ok = ok || *v == a;
      if (!ok) errors.push_back(path + key + " has an unexpected value " + v->dump());
    }
  }
  void sample(const json& s, const std::string& path) {
    for (const char* k : {"radius", "min_value", "sample_max"}) number(s, path, k);
    if (const json* x = field(s, path, "argmin_x"))
      if (!x->is_array()) errors.push_back(path + "argmin_x is not an array");
    boolean(s, path, "found");
    boolean(s, path, "zero");
  }
  void verdict(const json& v, const std::string& path) {
    oneof(v, path, "status", {"SUFFICIENT", "INSUFFICIENT", "INCONCLUSIVE"});
    for (const char* k : {"kappa_hat", "threshold", "tolerance", "margin"}) number(v, path, k);
    if (const json* c = field(v, path, "criterion"))
      if (!c->is_string()) errors.push_back(path + "criterion is not a string");
    if (const json* c = field(v, path, "note"))
      if (!c->is_string()) errors.push_back(path + "note is not a string");
    if (const json* w = field(v, path, "witness"))
      if (!w->is_null()) sample(*w, path + "witness.");
  }
};

}  // namespace

std::vector<std::string> validate_report(const json& j) {
  Checker c;
  if (!j.is_object()) return {"report is not an object"};
  if (const json* s = c.field(j, "", "schema"))
    if (*s != kReportSchema) c.errors.push_back("schema is not " + std::string(kReportSchema));
  if (const json* v = c.field(j, "", "tool_version"))
    if (!v->is_string()) c.errors.push_back("tool_version is not a string");

  if (const json* p = c.field(j, "", "problem")) {
    c.integer(*p, "problem.", "n", 1);
    c.integer(*p, "problem.", "m", 1);
    c.integer(*p, "problem.", "r", 1);
    c.integer(*p, "problem.", "p", 1);
    c.oneof(*p, "problem.", "smoothness", {"r", "r+1"});
    c.oneof(*p, "problem.", "kind", {"R", "T", "Rstar", "Tstar", "Thom"});
    if (const json* in = c.field(*p, "problem.", "input"))
      if (!in->is_array()) c.errors.push_back("problem.input is not an array");
    if (const json* s = c.field(*p, "problem.", "source"))
      if (!s->is_string()) c.errors.push_back("problem.source is not a string");
  }
  if (const json* cfg = c.field(j, "", "config")) {
    c.number(*cfg, "config.", "eps0");
    c.number(*cfg, "config.", "rho");
    c.integer(*cfg, "config.", "nradii", 4);
    c.integer(*cfg, "config.", "nstarts", 1);
    c.integer(*cfg, "config.", "local_steps", 0);
    c.integer(*cfg, "config.", "seed", 0);
    c.integer(*cfg, "config.", "tail", 2);
  }
  const json* est = c.field(j, "", "estimate");
  if (est) {
    for (const char* k : {"kappa_hat", "intercept", "stderr", "residual_max"})
      c.number(*est, "estimate.", k);
    c.boolean(*est, "estimate.", "degenerate");
    c.integer(*est, "estimate.", "fitted", 0);
    if (const json* ss = c.field(*est, "estimate.", "samples")) {
      if (!ss->is_array()) {
        c.errors.push_back("estimate.samples is not an array");
      } else {
        for (std::size_t i = 0; i < ss->size(); ++i)
          c.sample(ss->at(i), "estimate.samples[" + std::to_string(i) + "].");
      }
    }
  }
  if (const json* v = c.field(j, "", "verdict")) {
    c.verdict(*v, "verdict.");
    if (est && est->contains("kappa_hat") && v->contains("kappa_hat") &&
        v->at("kappa_hat") != est->at("kappa_hat"))
      c.errors.push_back("verdict.kappa_hat does not match estimate.kappa_hat");
  }
  if (j.contains("cross_validation")) {
    const json& x = j.at("cross_validation");
    for (const char* k : {"R", "T", "kuo"})
      if (const json* v = c.field(x, "cross_validation.", k))
        c.verdict(*v, "cross_validation." + std::string(k) + ".");
    c.boolean(x, "cross_validation.", "agree");
  }
  if (j.contains("timings")) {
    const json& t = j.at("timings");
    if (!t.is_object()) c.errors.push_back("timings is not an object");
    else
      for (const auto& [k, v] : t.items()) c.number(t, "timings.", k);
  }
  return c.errors;
}

void write_csv(std::ostream& out, const AnalysisReport& rep) {
  const std::size_t n = rep.problem.n;
  std::size_t ny = 0;
  for (const auto& s : rep.estimate.samples)
    if (s.argmin_y) ny = std::max(ny, s.argmin_y->size());
  out << "radius,min_value";
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= ny; ++i) out << ",y" << i;
  out << "\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (const auto& s : rep.estimate.samples) {
    put(s.radius);
    out << ",";
    put(s.found ? s.min_value : std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
      out << ",";
      put(i < s.argmin_x.size() ? s.argmin_x[i] : std::numeric_limits<double>::quiet_NaN());
    }
    for (std::size_t i = 0; i < ny; ++i) {
      out << ",";
      put(s.argmin_y && i < s.argmin_y->size() ? (*s.argmin_y)[i]
                                                : std::numeric_limits<double>::quiet_NaN());
    }
    out << "\n";
  }
}

bool operator==(const SampleRecord& a, const SampleRecord& b) {
  if (a.argmin_y.has_value() != b.argmin_y.has_value()) return false;
  if (a.argmin_y && !same(*a.argmin_y, *b.argmin_y)) return false;
  return same(a.radius, b.radius) && same(a.min_value, b.min_value) &&
         same(a.sample_max, b.sample_max) && same(a.argmin_x, b.argmin_x) &&
         a.found == b.found && a.zero == b.zero;
}

bool operator==(const EstimateRecord& a, const EstimateRecord& b) {
  return same(a.kappa_hat, b.kappa_hat) && same(a.intercept, b.intercept) &&
         same(a.std_error, b.std_error) && same(a.residual_max, b.residual_max) &&
         a.degenerate == b.degenerate && a.fitted == b.fitted && a.samples == b.samples;
}

bool operator==(const VerdictRecord& a, const VerdictRecord& b) {
  return a.status == b.status && a.criterion == b.criterion && same(a.kappa_hat, b.kappa_hat) &&
         same(a.threshold, b.threshold) && same(a.tolerance, b.tolerance) &&
         same(a.margin, b.margin) && a.note == b.note && a.witness == b.witness;
}

bool operator==(const CrossRecord& a, const CrossRecord& b) {
  return a.r == b.r && a.t == b.t && a.kuo == b.kuo && a.agree == b.agree;
}

bool operator==(const ProblemRecord& a, const ProblemRecord& b) {
  return a.n == b.n && a.m == b.m && a.r == b.r && a.smoothness == b.smoothness && a.p == b.p &&
         a.kind == b.kind && a.input == b.input && a.source == b.source;
}

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  const auto& x = a.config;
  const auto& y = b.config;
  const bool cfg = x.eps0 == y.eps0 && x.rho == y.rho && x.nradii == y.nradii &&
                   x.nstarts == y.nstarts && x.local_steps == y.local_steps && x.seed == y.seed &&
                   x.tail == y.tail;
  bool timings = a.timings.has_value() == b.timings.has_value();
  if (timings && a.timings) {
    timings = a.timings->size() == b.timings->size();
    for (auto it = a.timings->begin(), jt = b.timings->begin(); timings && it != a.timings->end();
         ++it, ++jt)
      timings = it->first == jt->first && same(it->second, jt->second);
  }
  return a.tool_version == b.tool_version && a.problem == b.problem && cfg &&
         a.estimate == b.estimate && a.verdict == b.verdict &&
         a.cross_validation == b.cross_validation && timings;
}

}  // namespace jetcheck
