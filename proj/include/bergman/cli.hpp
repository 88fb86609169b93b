#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bergman/checks.hpp"
#include "bergman/experiments.hpp"
#include "bergman/report.hpp"

namespace bergman {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"levi",      "lemma1a",   "lemma1b",  "lemma2",   "lemma3",
                                                 "embedding", "theorem1",  "theorem2", "reproduce"};
  return names;
}

/// One experiment invocation. Optional parameters left unset take the
/// command's built-in default at run time.
struct ExperimentConfig {
  std::string command;
  std::string out;
  std::string format = "json";
  int threads = 1;
  std::uint64_t seed = 1;

  std::optional<std::string> variant;  // literal | classical
  std::optional<std::string> family;
  std::optional<std::string> kind;     // embedding: prop1 | cor1 | prop2
  std::optional<std::string> reading;  // lemma3: negative_exponent | positive_power
  std::optional<std::string> domain;   // levi
  std::optional<std::string> function; // reproduce

  std::optional<double> alpha, beta, p, q, t, sigma, delta, r0, s, kernel_type;
  std::optional<double> q0, q1, p0, p1, delta0;
  std::optional<double> p_second, alpha_second, beta_second;
  std::optional<double> inner, scale, step, tol;
  std::optional<double> sweep_hi, sweep_lo, slope_tol, stability_tol;
  std::optional<int> max_k, dimension, count, degree, n_radial, n_angular, sweep_points;
  std::optional<std::vector<double>> radii;
  bool violate = false;

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

using FieldRef = std::variant<std::string ExperimentConfig::*, int ExperimentConfig::*,
                              std::uint64_t ExperimentConfig::*, bool ExperimentConfig::*,
                              std::optional<std::string> ExperimentConfig::*, std::optional<double> ExperimentConfig::*,
                              std::optional<int> ExperimentConfig::*,
                              std::optional<std::vector<double>> ExperimentConfig::*>;

struct FieldInfo {
  const char* name;
  FieldRef ref;
  const char* help;
  std::vector<std::string> commands;  // empty: every command
};

inline const std::vector<std::string> kSweepCommands = {"lemma1a", "lemma1b", "lemma2", "lemma3",
                                                        "embedding", "theorem1", "theorem2"};

}  // namespace detail

/// Every config field: JSON key, CLI flag (--name) and the commands that read it.
inline const std::vector<detail::FieldInfo>& config_fields() {
  using C = ExperimentConfig;
  const auto& sweep = detail::kSweepCommands;
  static const std::vector<detail::FieldInfo> fields = {
      {"out", &C::out, "report path (stdout when empty)", {}},
      {"format", &C::format, "report format: json | csv", {}},
      {"threads", &C::threads, "worker cap; results do not depend on it", {}},
      {"seed", &C::seed, "seed for random members and sample points", {}},
      {"variant", &C::variant, "weight variant: literal (1-|z|)^a | classical (1-|z|^2)^a",
       {"embedding", "theorem1", "theorem2"}},
      {"family", &C::family, "test family (lemma3: monomials|extremal|all; theorem1: monomials|extremal|all; "
                             "theorem2: tensor|nonanalytic|all)",
       {"lemma3", "theorem1", "theorem2"}},
      {"kind", &C::kind, "embedding: prop1 | cor1 | prop2", {"embedding"}},
      {"reading", &C::reading, "lemma3 kernel factor: negative_exponent | positive_power", {"lemma3"}},
      {"domain", &C::domain, "levi domain: ball | shell_inner | shell_outer | disk", {"levi"}},
      {"function", &C::function, "reproduce: one | z | cubic | random | all", {"reproduce"}},
      {"alpha", &C::alpha, "weight alpha", {"embedding", "theorem1", "theorem2"}},
      {"beta", &C::beta, "target weight beta", {"embedding", "theorem1", "theorem2"}},
      {"p", &C::p, "exponent p", {"lemma3", "embedding", "theorem1", "theorem2"}},
      {"q", &C::q, "exponent q", {"embedding", "theorem1"}},
      {"t", &C::t, "kernel exponent t", {"lemma1a", "lemma1b", "lemma2", "reproduce"}},
      {"sigma", &C::sigma, "lemma1b exponent sigma", {"lemma1b"}},
      {"delta", &C::delta, "delta", {"lemma2", "embedding"}},
      {"r0", &C::r0, "lemma2 upper limit r0", {"lemma2"}},
      {"s", &C::s, "lemma3 weight exponent s", {"lemma3"}},
      {"kernel_type", &C::kernel_type, "lemma3 kernel type (defaults to s)", {"lemma3"}},
      {"q0", &C::q0, "prop2 source q0", {"embedding"}},
      {"q1", &C::q1, "prop2 target q1", {"embedding"}},
      {"p0", &C::p0, "prop1 source p0", {"embedding"}},
      {"p1", &C::p1, "prop1 target p1", {"embedding"}},
      {"delta0", &C::delta0, "prop1 source delta0", {"embedding"}},
      {"p_second", &C::p_second, "theorem2: p of the second variable (defaults to p)", {"theorem2"}},
      {"alpha_second", &C::alpha_second, "theorem2: alpha of the second variable", {"theorem2"}},
      {"beta_second", &C::beta_second, "theorem2: beta of the second variable", {"theorem2"}},
      {"inner", &C::inner, "levi shell inner radius squared", {"levi"}},
      {"scale", &C::scale, "levi: multiply rho by this positive constant", {"levi"}},
      {"step", &C::step, "levi finite-difference step", {"levi"}},
      {"tol", &C::tol, "reproduce residual tolerance", {"reproduce"}},
      {"sweep_hi", &C::sweep_hi, "largest boundary distance", sweep},
      {"sweep_lo", &C::sweep_lo, "smallest boundary distance", sweep},
      {"sweep_points", &C::sweep_points, "log-spaced sweep points", sweep},
      {"slope_tol", &C::slope_tol, "tail-slope tolerance", sweep},
      {"stability_tol", &C::stability_tol, "grid-stability tolerance", sweep},
      {"max_k", &C::max_k, "largest monomial degree", {"lemma3", "embedding", "theorem1", "theorem2"}},
      {"dimension", &C::dimension, "levi complex dimension", {"levi"}},
      {"count", &C::count, "levi boundary points", {"levi"}},
      {"degree", &C::degree, "reproduce random polynomial degree", {"reproduce"}},
      {"n_radial", &C::n_radial, "quadrature radial nodes", {"theorem1", "reproduce"}},
      {"n_angular", &C::n_angular, "quadrature angular nodes", {"theorem1", "reproduce"}},
      {"radii", &C::radii, "extremal radii |a| (comma separated)", {"theorem1", "theorem2"}},
      {"violate", &C::violate, "lemma1b: run the hypothesis-violation probe", {"lemma1b"}},
  };
  return fields;
}

inline bool field_applies(const detail::FieldInfo& f, const std::string& command) {
  return f.commands.empty() || std::find(f.commands.begin(), f.commands.end(), command) != f.commands.end();
}

namespace detail {

inline LabError usage(const std::string& what) { return LabError(ErrorCode::InvalidArgument, what); }

template <class T>
bool is_set(const T& v) {
  if constexpr (requires { v.has_value(); }) {
    return v.has_value();
  } else {
    return true;
  }
}

inline bool field_is_default(const ExperimentConfig& c, const FieldInfo& f) {
  static const ExperimentConfig defaults;
  return std::visit([&](auto ptr) { return c.*ptr == defaults.*ptr; }, f.ref);
}

inline double parse_number(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw usage("--" + name + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw usage("--" + name + ": '" + text + "' is not a number");
  return v;
}

inline long long parse_integer(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw usage("--" + name + ": '" + text + "' is not an integer");
  }
  if (used != text.size()) throw usage("--" + name + ": '" + text + "' is not an integer");
  return v;
}

inline std::vector<double> parse_list(const std::string& text, const std::string& name) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, name));
  if (out.empty()) throw usage("--" + name + " needs at least one value");
  return out;
}

}  // namespace detail

/// Sets one field from its flag text.
inline void set_field_from_text(ExperimentConfig& c, const detail::FieldInfo& f, const std::string& text) {
  const std::string name = f.name;
  std::visit(
      [&](auto ptr) {
        using T = std::remove_reference_t<decltype(c.*ptr)>;
        if constexpr (std::is_same_v<T, std::string> || std::is_same_v<T, std::optional<std::string>>) {
          c.*ptr = text;
        } else if constexpr (std::is_same_v<T, std::optional<double>>) {
          c.*ptr = detail::parse_number(text, name);
        } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::optional<int>>) {
          c.*ptr = static_cast<int>(detail::parse_integer(text, name));
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          const long long v = detail::parse_integer(text, name);
          if (v < 0) throw detail::usage("--" + name + " must be non-negative");
          c.*ptr = static_cast<std::uint64_t>(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          if (text != "true" && text != "false") throw detail::usage("--" + name + " expects true or false");
          c.*ptr = text == "true";
        } else {
          c.*ptr = detail::parse_list(text, name);
        }
      },
      f.ref);
}

/// Canonical JSON: command first, then every field that is set.
inline Json to_json(const ExperimentConfig& c) {
  Json j = Json::object();
  j["command"] = c.command;
  for (const auto& f : config_fields()) {
    std::visit(
        [&](auto ptr) {
          const auto& v = c.*ptr;
          if constexpr (requires { v.has_value(); }) {
            if (v.has_value()) j[f.name] = *v;
          } else {
            j[f.name] = v;
          }
        },
        f.ref);
  }
  return j;
}

/// Inverse of to_json. Unknown keys, wrong types and a missing command are errors.
inline ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw detail::usage("config must be a JSON object");
  ExperimentConfig c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "command") {
      if (!it.value().is_string()) throw detail::usage("command must be a string");
      c.command = it.value().get<std::string>();
      continue;
    }
    const auto& fields = config_fields();
    const auto f = std::find_if(fields.begin(), fields.end(), [&](const auto& x) { return it.key() == x.name; });
    if (f == fields.end()) throw detail::usage("unknown config field '" + it.key() + "'");
    try {
      std::visit(
          [&](auto ptr) {
            using T = std::remove_reference_t<decltype(c.*ptr)>;
            if constexpr (requires { typename T::value_type; } && !std::is_same_v<T, std::string>) {
              using V = typename T::value_type;
              if constexpr (std::is_same_v<V, double>) {
                if (!it.value().is_number()) throw detail::usage("field '" + it.key() + "' must be a number");
              } else if constexpr (std::is_same_v<V, int>) {
                if (!it.value().is_number_integer()) throw detail::usage("field '" + it.key() + "' must be an integer");
              }
              c.*ptr = it.value().template get<V>();
            } else {
              if constexpr (std::is_same_v<T, bool>) {
                if (!it.value().is_boolean()) throw detail::usage("field '" + it.key() + "' must be a boolean");
              } else if constexpr (std::is_same_v<T, std::uint64_t>) {
                if (!it.value().is_number_unsigned()) throw detail::usage("field '" + it.key() + "' must be non-negative");
              } else if constexpr (std::is_arithmetic_v<T>) {
                if (!it.value().is_number_integer()) throw detail::usage("field '" + it.key() + "' must be an integer");
              }
              c.*ptr = it.value().template get<T>();
            }
          },
          f->ref);
    } catch (const nlohmann::json::exception&) {
      throw detail::usage("field '" + it.key() + "' has the wrong type");
    }
  }
  if (c.command.empty()) throw detail::usage("config needs a command");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw detail::usage("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw detail::usage("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

/// Command known, fields applicable to it, enumerations in range.
inline void validate(const ExperimentConfig& c) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), c.command) == names.end())
    throw detail::usage("unknown command '" + c.command + "'");
  for (const auto& f : config_fields()) {
    if (field_applies(f, c.command)) continue;
    const bool set = std::visit([&](auto ptr) { return detail::is_set(c.*ptr); }, f.ref);
    if (set && !detail::field_is_default(c, f))
      throw detail::usage(std::string("field '") + f.name + "' does not apply to " + c.command);
  }
  if (c.format != "json" && c.format != "csv") throw detail::usage("format must be json or csv");
  if (c.threads < 1) throw detail::usage("threads must be at least 1");
  if (c.variant && *c.variant != "literal" && *c.variant != "classical")
    throw detail::usage("variant must be literal or classical");
}

namespace detail {

inline WeightVariant variant_or(const ExperimentConfig& c, WeightVariant fallback) {
  if (!c.variant) return fallback;
  return *c.variant == "classical" ? WeightVariant::OneMinusModSq : WeightVariant::OneMinusMod;
}

inline SweepSpec sweep_for(const ExperimentConfig& c, double hi, double lo, int points) {
  SweepSpec sw;
  const int n = c.sweep_points.value_or(points);
  if (n < 2) throw usage("sweep_points must be at least 2");
  sw.distances = log_space_down(c.sweep_hi.value_or(hi), c.sweep_lo.value_or(lo), static_cast<std::size_t>(n));
  sw.slope_tol = c.slope_tol.value_or(sw.slope_tol);
  sw.stability_tol = c.stability_tol.value_or(sw.stability_tol);
  sw.seed = c.seed;
  sw.exec.threads = static_cast<unsigned>(c.threads);
  return sw;
}

inline std::string family_or(const ExperimentConfig& c, const std::string& fallback,
                             const std::vector<std::string>& allowed) {
  const std::string f = c.family.value_or(fallback);
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
    throw usage("family '" + f + "' is not available for " + c.command);
  return f;
}

inline std::vector<SampledFunction> filter_group(std::vector<SampledFunction> all, const std::string& family) {
  if (family == "all") return all;
  std::vector<SampledFunction> out;
  for (auto& f : all) {
    const bool is_monomial = family_group(f.description) == "z";
    if ((family == "monomials") == is_monomial) out.push_back(std::move(f));
  }
  return out;
}

inline BoundednessReport dispatch(const ExperimentConfig& c) {
  const Execution exec{static_cast<unsigned>(c.threads)};
  const std::string& cmd = c.command;
  if (cmd == "levi") {
    LeviExperiment e;
    e.domain = levi_domain_from_string(c.domain.value_or("ball"));
    e.dimension = c.dimension.value_or(2);
    const int count = c.count.value_or(100);
    if (count < 1) throw LabError(ErrorCode::InvalidCount, "count must be positive");
    e.count = static_cast<std::size_t>(count);
    e.seed = c.seed;
    e.inner = c.inner.value_or(0.5);
    e.scale = c.scale.value_or(1.0);
    e.options.h = c.step.value_or(e.options.h);
    return levi_experiment(e, exec);
  }
  if (cmd == "reproduce") {
    ReproduceExperiment e;
    e.function = reproduce_function_from_string(c.function.value_or("all"));
    if (c.t) e.t = {*c.t};
    e.degree = c.degree.value_or(8);
    e.seed = c.seed;
    e.tol = c.tol.value_or(1e-6);
    e.grid = {static_cast<std::size_t>(c.n_radial.value_or(256)), static_cast<std::size_t>(c.n_angular.value_or(512))};
    return reproducing_experiment(e, exec);
  }
  if (cmd == "lemma1a") return verify_lemma1a(c.t.value_or(0.0), sweep_for(c, 1e-1, 1e-4, 20));
  if (cmd == "lemma1b")
    return verify_lemma1b(c.t.value_or(2.0), c.sigma.value_or(1.0), sweep_for(c, 1e-1, 1e-4, 20), c.violate);
  if (cmd == "lemma2")
    return verify_lemma2(c.delta.value_or(1.0), c.t.value_or(3.0), c.r0.value_or(1.0), sweep_for(c, 1e-1, 1e-4, 20));
  if (cmd == "lemma3") {
    Lemma3Params prm;
    prm.p = c.p.value_or(0.5);
    prm.s = c.s.value_or(1.0);
    if (c.kernel_type) prm.kernel_type = *c.kernel_type;
    const std::string reading = c.reading.value_or("negative_exponent");
    if (reading == "positive_power") prm.reading = Lemma3Reading::PositivePower;
    else if (reading != "negative_exponent") throw usage("unknown reading '" + reading + "'");
    const auto sw = sweep_for(c, 1e-1, 1e-2, 10);
    const std::string fam = family_or(c, "monomials", {"monomials", "extremal", "all"});
    std::vector<SampledFunction> members;
    if (fam != "extremal") members = generate(FamilySpec::monomials(c.max_k.value_or(16)));
    if (fam != "monomials") {
      const auto ex = extremal_exponents_bergman(prm.p, prm.t());
      std::vector<double> radii;
      for (double d : sw.distances) radii.push_back(1.0 - d);
      for (auto& f : generate(FamilySpec::extremal(ex.s, ex.m, radii))) members.push_back(std::move(f));
    }
    return verify_lemma3(prm, members, sw);
  }
  if (cmd == "embedding") {
    const std::string k = c.kind.value_or("prop2");
    EmbeddingKind kind;
    EmbeddingParams e;
    e.variant = variant_or(c, e.variant);
    if (k == "prop1") {
      kind = EmbeddingKind::Prop1;
      e.p0 = c.p0.value_or(1.0);
      e.p1 = c.p1.value_or(2.0);
      e.q = c.q.value_or(1.0);
      e.delta0 = c.delta0.value_or(1.0);
      if (c.delta) e.delta0_prime = *c.delta;
    } else if (k == "cor1") {
      kind = EmbeddingKind::Cor1;
      e.p = c.p.value_or(0.5);
      e.alpha = c.alpha.value_or(0.0);
      if (c.beta) e.beta = *c.beta;
    } else if (k == "prop2") {
      kind = EmbeddingKind::Prop2;
      e.p = c.p.value_or(2.0);
      e.q0 = c.q0.value_or(1.0);
      e.q1 = c.q1.value_or(2.0);
      e.delta = c.delta.value_or(1.0);
    } else {
      throw usage("unknown embedding kind '" + k + "'");
    }
    const auto sw = sweep_for(c, 1e-1, 1e-4, 20);
    return verify_embedding(kind, e, embedding_family(kind, e, sw, c.max_k.value_or(16)), sw);
  }
  if (cmd == "theorem1") {
    Theorem1Params prm;
    prm.alpha = c.alpha.value_or(prm.alpha);
    prm.p = c.p.value_or(prm.p);
    prm.q = c.q.value_or(prm.q);
    prm.beta = c.beta.value_or(prm.beta);
    prm.variant = variant_or(c, prm.variant);
    const std::string fam = family_or(c, "all", {"monomials", "extremal", "all"});
    const auto radii = c.radii.value_or(std::vector<double>{0.9, 0.99, 0.999, 0.9999});
    const auto members = filter_group(theorem1_family(prm, c.max_k.value_or(12), radii), fam);
    const GridSize grid{static_cast<std::size_t>(c.n_radial.value_or(256)),
                        static_cast<std::size_t>(c.n_angular.value_or(512))};
    return boundedness_theorem1(prm, members, sweep_for(c, 1e-1, 1e-4, 20), grid);
  }
  if (cmd == "theorem2") {
    Theorem2Params prm;
    const double p = c.p.value_or(2.0), alpha = c.alpha.value_or(0.0);
    prm.p = {p, c.p_second.value_or(p)};
    prm.alpha = {alpha, c.alpha_second.value_or(alpha)};
    if (c.beta) prm.beta = {*c.beta, c.beta_second.value_or(*c.beta)};
    else if (c.beta_second) prm.beta = {alpha, *c.beta_second};
    prm.variant = variant_or(c, prm.variant);
    const auto sw = sweep_for(c, 1e-1, 1e-3, 10);
    const std::string fam = family_or(c, "all", {"tensor", "nonanalytic", "all"});
    std::vector<BivariateFunction> members;
    if (fam != "nonanalytic") members = theorem2_tensor_family(prm, sw, c.max_k.value_or(3));
    if (fam != "tensor") {
      auto extra = c.radii ? theorem2_nonanalytic_family(prm, *c.radii) : theorem2_nonanalytic_family(prm);
      for (auto& f : extra) members.push_back(std::move(f));
    }
    return boundedness_theorem2(prm, members, sw);
  }
  throw usage("unknown command '" + cmd + "'");
}

}  // namespace detail

/// 0: Bounded / Pass, 2: GrowthDetected / Fail, 3: Inconclusive.
inline int exit_status(Verdict v) {
  switch (v) {
    case Verdict::Bounded:
    case Verdict::Pass: return 0;
    case Verdict::GrowthDetected:
    case Verdict::Fail: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 3;
}

inline constexpr int kUsageStatus = 1;

/// Runs the experiment; the report config carries the command, the seed and
/// the experiment's resolved parameters. threads, out and format are not
/// echoed, so reports agree across worker counts and output paths.
inline BoundednessReport run_experiment(const ExperimentConfig& c) {
  validate(c);
  const auto start = std::chrono::steady_clock::now();
  BoundednessReport rep = detail::dispatch(c);
  const auto stop = std::chrono::steady_clock::now();
  Json config = Json::object();
  config["command"] = c.command;
  config["seed"] = c.seed;
  for (auto it = rep.config.begin(); it != rep.config.end(); ++it) config[it.key()] = it.value();
  rep.config = std::move(config);
  rep.walltime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rep;
}

inline std::string render(const BoundednessReport& rep, const std::string& format) {
  return format == "csv" ? to_csv(rep) : to_json(rep).dump(2) + "\n";
}

struct RunResult {
  int status = kUsageStatus;
  std::optional<BoundednessReport> report;
  std::string error;
};

/// Runs, writes the report and maps the outcome to an exit status. Hypothesis
/// and argument errors are usage errors; numerical failures are inconclusive.
inline RunResult run(const ExperimentConfig& c) {
  RunResult r;
  try {
    r.report = run_experiment(c);
  } catch (const LabError& e) {
    r.error = e.what();
    switch (e.code()) {
      case ErrorCode::DivergenceSuspected:
      case ErrorCode::GradientVanishes: r.status = 3; break;
      default: r.status = kUsageStatus;
    }
    return r;
  }
  const std::string text = render(*r.report, c.format);
  if (c.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream out(c.out, std::ios::binary);
    if (!out || !(out << text)) {
      r.error = "cannot write '" + c.out + "'";
      r.status = kUsageStatus;
      return r;
    }
  }
  r.status = exit_status(r.report->verdict);
  return r;
}

}  // namespace bergman
