#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "zlab/zeroset.hpp"

namespace zlab {

/// Parameters of the comparison function H(t) = ((alpha-1)/(C alpha)) *
/// min(t^alpha, 1) with C the sup of the torsion function.
struct ComparisonParams {
  double alpha = 2.0;
  double C = 0.5;
};

double comparison_H(double t, const ComparisonParams& params);

/// Computes u for the measure mu, then the bounded-data solution w with data
/// H(u), and returns min(u - w) over the nodes. Nonnegative up to solver
/// tolerance: measure-data solutions dominate their own H-companion.
double check_comparison(const Grid& g, const Potential& V, const MeasureData& mu,
                        const TruncationLadder& ladder, const ComparisonParams& params,
                        const SolveOptions& opts = {});

enum class AlternativeState { positive, zero, violation };

struct ComponentVerdict {
  int id = 0;
  AlternativeState state = AlternativeState::zero;
  double min_value = 0.0;
  double max_value = 0.0;
};

/// Per-component dichotomy of a solution with nonnegative data: strictly
/// positive throughout a component or vanishing throughout it, with a decade
/// of separation between the thresholds so a genuine dichotomy cannot
/// straddle both.
std::vector<ComponentVerdict> check_alternative(const Field& u, const ZeroSetReport& report,
                                                double tau_pos = 1e-3, double tau_zero = 1e-2);

struct HopfResult {
  bool diverges = false;
  double value = 0.0;               // sum of the computed shell integrals
  std::vector<double> shell_sums;   // dyadic shells toward the endpoint
};

/// Divergence test for the integral of V(x) (x - c) on (c, c+L): composite
/// quadrature on dyadic shells [c + L 2^{-j-1}, c + L 2^{-j}]; divergence is
/// declared when the last five shell sums are non-decreasing and positive.
HopfResult hopf_criterion_1d(const std::function<double(double)>& V, double c, double L);
HopfResult hopf_criterion_1d(const Potential& V, double c, double L);

enum class Regime { Z_empty, Z_everything, Z_point };

struct RegimeResult {
  Regime joint = Regime::Z_empty;
  Regime pde = Regime::Z_empty;
  Regime quad = Regime::Z_empty;
  bool consistent = false;
  double near_ratio_coarse = 0.0;  // staggered-grid value nearest the singularity / max
  double near_ratio_fine = 0.0;
  double defect_coarse = 0.0;      // singular-grid defect at the origin
  double defect_fine = 0.0;
};

/// Joint classification of V = |x|^(-alpha) on (-1, 1): a PDE-based verdict
/// from the zero-set machinery cross-checked against quadrature tests
/// (summability of V near 0 and the divergence of the weighted integral).
RegimeResult oned_regime_classifier(double alpha, const TruncationLadder& ladder = {}, int n = 129,
                                    const SolveOptions& opts = {});

const char* to_string(Regime r);
const char* to_string(AlternativeState s);

/// CSV: "experiment,component,verdict,min,max".
void dump_verdicts_csv(std::ostream& os, const std::string& experiment,
                       const std::vector<ComponentVerdict>& verdicts);

}  // namespace zlab
