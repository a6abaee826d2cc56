#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

/// Nonnegative Borel potential on the domain, evaluated pointwise in the
/// extended reals: singular kinds return +infinity where the formula blows
/// up. Evaluation is deterministic and the object is immutable.
class Potential {
 public:
  Potential();  // zero potential

  static Potential zero();
  static Potential point_singularity(Point a, double alpha);
  static Potential hyperplane(int axis, double offset, double alpha);  // axis 0 = x1, 1 = x2
  static Potential sum(std::vector<Potential> terms);
  static Potential distance_to_set(DomainSpec obstacle, double alpha);
  static Potential indicator_infinite(DomainSpec region);
  static Potential tabulated(Field values);
  static Potential custom(std::function<double(Point)> f, std::string label);

  double operator()(Point p) const { return eval_(p); }
  double eval(Point p) const { return eval_(p); }
  const std::string& describe() const { return label_; }

 private:
  Potential(std::function<double(Point)> f, std::string label);
  std::function<double(Point)> eval_;
  std::string label_;
};

/// Node samples of min(V, k); +infinity clamps to k. No smoothing: the value
/// at a node on the singular set is the truncation level itself.
Field truncate_to_field(const Potential& V, const Grid& g, double k);

/// Geometric truncation schedule k_j = k0 * ratio^j with a relative-L1 stop
/// rule for the ladder of solves.
struct TruncationLadder {
  double k0 = 1.0;
  double ratio = 2.0;
  int max_rungs = 24;
  double stop_tol = 1e-6;

  std::vector<double> levels() const;
};

/// Parse a potential descriptor, e.g.
///   "zero"
///   "point 0 0 alpha=3"
///   "hyperplane x1 c=-0.3 alpha=2 + hyperplane x1 c=0.4 alpha=1.5"
///   "distset disk 0 0 r=0.3 alpha=2"
/// 1D forms drop the second coordinate: "point 0 alpha=3",
/// "distset interval -0.2 0.2 alpha=2".
Potential parse_potential(const std::string& text, int dim);

}  // namespace zlab
