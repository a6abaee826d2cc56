#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace zlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist(Point a, Point b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

enum class Errc {
  resolution_too_coarse,
  empty_domain,
  incompatible_field,
  invalid_weight,
  sources_too_close,
  invalid_measure,
  invalid_bump,
  invalid_source,
  degenerate_torsion,
  invalid_argument,
  config_error,
  parse_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace zlab
