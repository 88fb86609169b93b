#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bergman/families.hpp"
#include "bergman/geometry.hpp"
#include "bergman/operators.hpp"
#include "bergman/report.hpp"
#include "bergman/verifiers.hpp"

namespace bergman {

enum class LeviDomain { Ball, ShellInner, ShellOuter, Disk };

inline const char* to_string(LeviDomain d) {
  switch (d) {
    case LeviDomain::Ball: return "ball";
    case LeviDomain::ShellInner: return "shell_inner";
    case LeviDomain::ShellOuter: return "shell_outer";
    case LeviDomain::Disk: return "disk";
  }
  return "ball";
}

inline LeviDomain levi_domain_from_string(const std::string& s) {
  if (s == "ball") return LeviDomain::Ball;
  if (s == "shell_inner") return LeviDomain::ShellInner;
  if (s == "shell_outer") return LeviDomain::ShellOuter;
  if (s == "disk") return LeviDomain::Disk;
  throw LabError(ErrorCode::InvalidArgument, "unknown Levi domain '" + s + "'");
}

struct LeviExperiment {
  LeviDomain domain = LeviDomain::Ball;
  int dimension = 2;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  double inner = 0.5;  // shell: inner < |z|^2 < 1
  double scale = 1.0;  // rho -> scale * rho
  LeviOptions options{};
};

/// Levi form at seeded boundary points. Pass iff every point is pseudoconvex;
/// grid_stability compares min eigenvalues at step h and h/2.
inline BoundednessReport levi_experiment(const LeviExperiment& e, Execution exec = {}) {
  require(e.scale > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
  const bool planar = e.domain == LeviDomain::Disk;
  const int n = planar ? 1 : e.dimension;
  require(planar || n >= 2, ErrorCode::InvalidArgument, "ball and shell need dimension >= 2");
  DefiningFunction rho = planar                             ? defining::disk()
                         : e.domain == LeviDomain::Ball ? defining::ball(n)
                                                            : defining::shell(n, e.inner);
  if (e.scale != 1.0) rho = rho.scaled(e.scale);

  auto points = sample_boundary(planar ? DomainModel::unit_disk() : DomainModel::unit_ball(n), e.count, e.seed);
  if (e.domain == LeviDomain::ShellInner)
    for (auto& p : points)
      for (auto& c : p) c *= std::sqrt(e.inner);

  LeviOptions fine = e.options;
  fine.h *= 0.5;
  struct Row {
    LeviReport coarse, fine;
  };
  const auto rows = parallel_map<Row>(
      points.size(), [&](std::size_t i) { return Row{levi_check(rho, points[i], e.options), levi_check(rho, points[i], fine)}; },
      exec);

  BoundednessReport rep;
  rep.experiment = "levi";
  rep.config = {{"domain", to_string(e.domain)}, {"dimension", n},      {"count", e.count},
                {"seed", e.seed},                {"inner", e.inner},    {"scale", e.scale},
                {"h", e.options.h},              {"tol_psd", e.options.tol_psd}};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, tangency = 0.0;
  std::vector<double> a, b;
  bool all = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].coarse;
    rep.samples.push_back({{{"point", static_cast<double>(i)}, {"abs_z1", std::abs(r.point[0])}}, r.min_eigenvalue,
                           r.pseudoconvex ? "pseudoconvex" : "not_pseudoconvex"});
    lo = std::min(lo, r.min_eigenvalue);
    for (double v : r.levi_eigenvalues) hi = std::max(hi, v);
    tangency = std::max(tangency, r.max_tangency_residual());
    all = all && r.pseudoconvex;
    if (std::isfinite(r.min_eigenvalue)) {
      a.push_back(r.min_eigenvalue);
      b.push_back(rows[i].fine.min_eigenvalue);
    }
  }
  rep.max_ratio = max_finite(rep.samples);
  rep.grid_stability = a.empty() ? 0.0 : relative_change(a, b);
  rep.verdict = all ? Verdict::Pass : Verdict::Fail;
  rep.metrics = {{"min_eigenvalue", lo}, {"max_eigenvalue", planar ? lo : hi}, {"max_tangency_residual", tangency}};
  if (planar) rep.notes.push_back("n = 1: the complex tangent space is trivial, every boundary point passes");
  return rep;
}

enum class ReproduceFunction { One, Z, Cubic, Random, All };

inline ReproduceFunction reproduce_function_from_string(const std::string& s) {
  if (s == "one") return ReproduceFunction::One;
  if (s == "z") return ReproduceFunction::Z;
  if (s == "cubic") return ReproduceFunction::Cubic;
  if (s == "random") return ReproduceFunction::Random;
  if (s == "all") return ReproduceFunction::All;
  throw LabError(ErrorCode::InvalidArgument, "unknown test function '" + s + "'");
}

struct ReproduceExperiment {
  ReproduceFunction function = ReproduceFunction::All;
  std::vector<double> t{1.0, 3.0};
  int degree = 8;  // random polynomial
  std::uint64_t seed = 1;
  double tol = 1e-6;
  GridSize grid{};
};

inline std::vector<SampledFunction> reproduce_functions(const ReproduceExperiment& e) {
  std::vector<SampledFunction> out;
  const bool all = e.function == ReproduceFunction::All;
  if (all || e.function == ReproduceFunction::One) out.push_back(monomial(0));
  if (all || e.function == ReproduceFunction::Z) out.push_back(monomial(1));
  if (all || e.function == ReproduceFunction::Cubic) out.push_back(polynomial({0.0, 2.0, 0.0, 1.0}, "z^3+2z"));
  if (all || e.function == ReproduceFunction::Random)
    for (auto& f : generate(FamilySpec::random_poly(e.degree, 1, e.seed))) out.push_back(std::move(f));
  return out;
}

/// Max probe residual of the reproducing identity for each (f, t). Pass iff all are below tol.
inline BoundednessReport reproducing_experiment(const ReproduceExperiment& e, Execution exec = {}) {
  require(!e.t.empty(), ErrorCode::InvalidArgument, "need at least one t");
  const auto functions = reproduce_functions(e);
  std::vector<QuadGrid> grids;
  for (double t : e.t) grids.push_back(disk_grid(e.grid.n_radial, e.grid.n_angular, t, WeightVariant::OneMinusModSq));
  const std::size_t nf = functions.size();
  const auto residuals = parallel_map<double>(
      nf * e.t.size(), [&](std::size_t i) { return reproducing_residual(functions[i % nf], e.t[i / nf], grids[i / nf]); },
      exec);

  BoundednessReport rep;
  rep.experiment = "reproduce";
  rep.config = {{"t", e.t},         {"degree", e.degree}, {"seed", e.seed},
                {"tol", e.tol},     {"n_radial", e.grid.n_radial}, {"n_angular", e.grid.n_angular}};
  for (std::size_t i = 0; i < residuals.size(); ++i)
    rep.samples.push_back({{{"t", e.t[i / nf]}}, residuals[i], functions[i % nf].description});
  rep.max_ratio = max_finite(rep.samples);
  rep.verdict = rep.max_ratio < e.tol ? Verdict::Pass : Verdict::Fail;
  rep.metrics = {{"max_residual", rep.max_ratio}};
  return rep;
}

}  // namespace bergman
