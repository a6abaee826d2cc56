#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "zlab/linsolve.hpp"
#include "zlab/potential.hpp"

namespace zlab {

struct Atom {
  Point where;
  double weight = 1.0;
};

enum class Mollify { discrete_delta, mollified };

/// Finite nonnegative measure: an optional density plus weighted atoms.
/// Atoms enter the discrete right-hand side either as weight/h^N at the
/// nearest node or as a normalized smooth bump of the given radius.
struct MeasureData {
  std::optional<Field> density;
  std::vector<Atom> atoms;
  Mollify mode = Mollify::discrete_delta;
  double moll_radius = 0.0;

  static MeasureData from_density(Field f);
  static MeasureData from_atom(Point p, double weight);
  double total_mass(const Grid& g) const;
};

/// Discrete right-hand side realizing the measure on the grid.
Field assemble_rhs(const Grid& g, const MeasureData& mu);

struct RungRecord {
  int rung = 0;
  double k = 0.0;
  double l1_change = 0.0;
  SolveStats cg;
};

struct LadderReport {
  std::vector<RungRecord> rungs;
  bool converged = false;
  double final_k = 0.0;
  double monotone_violation = 0.0;  // max over nodes/rungs of (u_{j+1} - u_j)^+
  bool cg_failed = false;
};

/// Minimizer of the truncated energy: one solve of (-Lap + T_k(V)) u = f.
Field solve_truncated(const Grid& g, const Potential& V, const Field& f, double k,
                      const SolveOptions& opts = {}, const Field* warm = nullptr);

/// Truncation ladder for nonnegative data: solves at increasing levels k_j,
/// warm-starting each rung from the previous one, until the relative L1
/// change between consecutive rungs drops below the stop tolerance. The rung
/// fields are non-increasing in k up to solver tolerance; violations are
/// recorded, not fatal. If the ladder is exhausted the last rung is still
/// returned with converged = false.
std::pair<Field, LadderReport> solve_ladder(const Grid& g, const Potential& V, const Field& f,
                                            const TruncationLadder& ladder = {},
                                            const SolveOptions& opts = {});

/// Torsion function of the Laplacian: -Lap theta = 1, zero boundary data.
Field torsion(const Grid& g, const SolveOptions& opts = {});

/// Ladder solution for measure data.
std::pair<Field, LadderReport> solve_measure(const Grid& g, const Potential& V,
                                             const MeasureData& mu,
                                             const TruncationLadder& ladder = {},
                                             const SolveOptions& opts = {});

struct EstimateReport {
  double absorption_margin = 0.0;   // ||mu|| - ||T_K(V) u||_L1, should be >= -tol
  double sobolev_ratio = 0.0;       // ||u||_W11 / ||mu||, informational
  double domination_margin = 0.0;   // min of ||f||_inf zeta_1 - |u|; NaN for atomic data
  bool domination_applicable = false;
};

/// Absorption and domination estimates for a ladder solution u of the data
/// mu at final truncation level final_k. The domination check compares
/// against the torsion solution at the same truncation level.
EstimateReport verify_estimates(const Grid& g, const Potential& V, const MeasureData& mu,
                                const Field& u, double final_k, const SolveOptions& opts = {});

/// CSV: "rung,k,l1_change,cg_iters,residual".
void dump_ladder_csv(std::ostream& os, const LadderReport& rep);

}  // namespace zlab
