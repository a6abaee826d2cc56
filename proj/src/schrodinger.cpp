#include "zlab/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace zlab {

MeasureData MeasureData::from_density(Field f) {
  MeasureData mu;
  mu.density = std::move(f);
  return mu;
}

MeasureData MeasureData::from_atom(Point p, double weight) {
  MeasureData mu;
  mu.atoms.push_back({p, weight});
  return mu;
}

double MeasureData::total_mass(const Grid& g) const {
  double m = 0.0;
  if (density) m += integrate(g, *density);
  for (const auto& a : atoms) m += a.weight;
  return m;
}

Field assemble_rhs(const Grid& g, const MeasureData& mu) {
  Field b(g);
  if (mu.density) {
    require_same_grid(g, *mu.density, "measure density");
    double floor = -1e-12 * std::max(1.0, norm_linf(*mu.density));
    for (std::size_t i = 0; i < g.size(); ++i) {
      double v = (*mu.density)[i];
      if (v < floor) fail(Errc::invalid_measure, "invalid-measure: density must be nonnegative");
      b[i] = std::max(v, 0.0);
    }
  }
  for (const auto& a : mu.atoms) {
    if (!(a.weight > 0.0)) fail(Errc::invalid_measure, "invalid-measure: atom weight must be positive");
    if (!g.spec.contains(a.where))
      fail(Errc::invalid_measure, "invalid-measure: atom outside the domain");
    if (mu.mode == Mollify::discrete_delta) {
      b[static_cast<std::size_t>(g.nearest(a.where))] += a.weight / g.cell();
    } else {
      double r = mu.moll_radius;
      if (!(r > 0.0)) fail(Errc::invalid_measure, "invalid-measure: mollification radius must be positive");
      // C^2 bump (1 - t^2)^3, normalized so the discrete mass equals the weight.
      std::vector<double> raw(g.size(), 0.0);
      double mass = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double t = dist(g.node[i], a.where) / r;
        if (t < 1.0) {
          double s = 1.0 - t * t;
          raw[i] = s * s * s;
          mass += raw[i];
        }
      }
      mass *= g.cell();
      if (!(mass > 0.0))
        fail(Errc::invalid_measure, "invalid-measure: mollification radius below grid resolution");
      double scale = a.weight / mass;
      for (std::size_t i = 0; i < g.size(); ++i) b[i] += scale * raw[i];
    }
  }
  return b;
}

Field solve_truncated(const Grid& g, const Potential& V, const Field& f, double k,
                      const SolveOptions& opts, const Field* warm) {
  Field W = truncate_to_field(V, g, k);
  auto [u, stats] = cg_solve(g, W, f, opts, warm);
  (void)stats;
  return u;
}

namespace {

std::pair<Field, LadderReport> run_ladder(const Grid& g, const Potential& V, const Field& b,
                                          const TruncationLadder& ladder,
                                          const SolveOptions& opts) {
  require_same_grid(g, b, "ladder data");
  auto levels = ladder.levels();
  LadderReport rep;
  Field u(g);
  bool have_prev = false;
  Field prev(g);

  for (std::size_t j = 0; j < levels.size(); ++j) {
    double k = levels[j];
    Field W = truncate_to_field(V, g, k);
    auto [uj, stats] = cg_solve(g, W, b, opts, have_prev ? &prev : nullptr);
    if (!stats.converged) rep.cg_failed = true;

    RungRecord rec;
    rec.rung = static_cast<int>(j) + 1;
    rec.k = k;
    rec.cg = stats;
    if (have_prev) {
      double change = 0.0, viol = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        double d = uj[i] - prev[i];
        change += std::abs(d);
        viol = std::max(viol, d);
      }
      change *= g.cell();
      rec.l1_change = change;
      rep.monotone_violation = std::max(rep.monotone_violation, viol);
      rep.rungs.push_back(rec);
      rep.final_k = k;
      double rel = change / std::max(norm_l1(uj), 1e-300);
      u = uj;
      if (rel <= ladder.stop_tol) {
        rep.converged = true;
        return {std::move(u), std::move(rep)};
      }
    } else {
      rec.l1_change = norm_l1(uj);
      rep.rungs.push_back(rec);
      rep.final_k = k;
      u = uj;
    }
    prev = u;
    have_prev = true;
  }
  rep.converged = false;
  return {std::move(u), std::move(rep)};
}

}  // namespace

std::pair<Field, LadderReport> solve_ladder(const Grid& g, const Potential& V, const Field& f,
                                            const TruncationLadder& ladder,
                                            const SolveOptions& opts) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] < 0.0) fail(Errc::invalid_argument, "ladder data must be nonnegative");
  return run_ladder(g, V, f, ladder, opts);
}

Field torsion(const Grid& g, const SolveOptions& opts) {
  Field one(g, 1.0);
  Field W(g, 0.0);
  auto [theta, stats] = cg_solve(g, W, one, opts);
  (void)stats;
  return theta;
}

std::pair<Field, LadderReport> solve_measure(const Grid& g, const Potential& V,
                                             const MeasureData& mu,
                                             const TruncationLadder& ladder,
                                             const SolveOptions& opts) {
  Field b = assemble_rhs(g, mu);
  return run_ladder(g, V, b, ladder, opts);
}

EstimateReport verify_estimates(const Grid& g, const Potential& V, const MeasureData& mu,
                                const Field& u, double final_k, const SolveOptions& opts) {
  require_same_grid(g, u, "verify_estimates");
  EstimateReport out;
  Field W = truncate_to_field(V, g, final_k);
  double mass = mu.total_mass(g);
  out.absorption_margin = mass - l1_weighted(u, W);
  double w11 = norm_l1(u) + grad_l1(g, u);
  out.sobolev_ratio = mass > 0.0 ? w11 / mass : 0.0;

  out.domination_applicable = mu.atoms.empty() && mu.density.has_value();
  if (out.domination_applicable) {
    double finf = norm_linf(*mu.density);
    Field one(g, 1.0);
    Field zeta1 = solve_truncated(g, V, one, final_k, opts);
    double margin = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < g.size(); ++i)
      margin = std::min(margin, finf * zeta1[i] - std::abs(u[i]));
    out.domination_margin = margin;
  } else {
    out.domination_margin = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

void dump_ladder_csv(std::ostream& os, const LadderReport& rep) {
  os << "rung,k,l1_change,cg_iters,residual\n";
  char buf[160];
  for (const auto& r : rep.rungs) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%d,%.12g\n", r.rung, r.k, r.l1_change,
                  r.cg.iterations, r.cg.rel_residual);
    os << buf;
  }
}

}  // namespace zlab
