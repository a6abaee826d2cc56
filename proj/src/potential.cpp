#include "zlab/potential.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace zlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// pow(0, -alpha) follows the extended-real convention: +inf for alpha > 0,
// 1 for alpha == 0, 0 for alpha < 0.
double inverse_power(double r, double alpha) { return std::pow(r, -alpha); }

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace

Potential::Potential() : Potential([](Point) { return 0.0; }, "zero") {}

Potential::Potential(std::function<double(Point)> f, std::string label)
    : eval_(std::move(f)), label_(std::move(label)) {}

Potential Potential::zero() { return Potential(); }

Potential Potential::point_singularity(Point a, double alpha) {
  std::string label = "point " + fmt(a.x) + " " + fmt(a.y) + " alpha=" + fmt(alpha);
  return Potential([a, alpha](Point p) { return inverse_power(dist(p, a), alpha); }, label);
}

Potential Potential::hyperplane(int axis, double offset, double alpha) {
  if (axis != 0 && axis != 1) fail(Errc::invalid_argument, "hyperplane axis must be 0 or 1");
  std::string label = std::string("hyperplane ") + (axis == 0 ? "x1" : "x2") +
                      " c=" + fmt(offset) + " alpha=" + fmt(alpha);
  return Potential(
      [axis, offset, alpha](Point p) {
        double t = (axis == 0 ? p.x : p.y) - offset;
        return inverse_power(std::abs(t), alpha);
      },
      label);
}

Potential Potential::sum(std::vector<Potential> terms) {
  std::string label;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) label += " + ";
    label += terms[i].describe();
  }
  if (terms.empty()) label = "zero";
  auto shared = std::make_shared<std::vector<Potential>>(std::move(terms));
  return Potential(
      [shared](Point p) {
        double s = 0.0;
        for (const auto& t : *shared) s += t(p);
        return s;
      },
      label);
}

Potential Potential::distance_to_set(DomainSpec obstacle, double alpha) {
  std::string label = "distset " + obstacle.describe() + " alpha=" + fmt(alpha);
  return Potential(
      [obstacle, alpha](Point p) { return inverse_power(obstacle.distance_to_closure(p), alpha); },
      label);
}

Potential Potential::indicator_infinite(DomainSpec region) {
  std::string label = "infwell " + region.describe();
  return Potential([region](Point p) { return region.contains_closed(p) ? kInf : 0.0; }, label);
}

Potential Potential::tabulated(Field values) {
  auto shared = std::make_shared<Field>(std::move(values));
  return Potential(
      [shared](Point p) { return (*shared)[static_cast<std::size_t>(shared->g->nearest(p))]; },
      "tabulated");
}

Potential Potential::custom(std::function<double(Point)> f, std::string label) {
  return Potential(std::move(f), std::move(label));
}

Field truncate_to_field(const Potential& V, const Grid& g, double k) {
  if (!(k > 0.0)) fail(Errc::invalid_argument, "truncation level must be positive");
  Field w(g);
  for (std::size_t r = 0; r < g.size(); ++r) {
    double v = V(g.node[r]);
    if (std::isnan(v) || v < 0.0)
      fail(Errc::invalid_argument, "potential must evaluate to a nonnegative extended real");
    w[r] = std::min(v, k);
  }
  return w;
}

std::vector<double> TruncationLadder::levels() const {
  if (!(k0 > 0.0) || !(ratio > 1.0) || max_rungs < 1 || !(stop_tol > 0.0))
    fail(Errc::invalid_argument, "truncation ladder requires k0 > 0, ratio > 1, stop_tol > 0");
  std::vector<double> ks;
  double k = k0;
  for (int j = 0; j < max_rungs; ++j) {
    ks.push_back(k);
    k *= ratio;
  }
  return ks;
}

namespace {

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double num(const std::string& t, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    fail(Errc::parse_error, "expected number in " + ctx + ", got '" + t + "'");
  }
}

double keyed(const std::vector<std::string>& toks, std::size_t i, const char* key,
             const std::string& ctx) {
  if (i >= toks.size()) fail(Errc::parse_error, "missing " + std::string(key) + "= in " + ctx);
  std::string want = std::string(key) + "=";
  if (toks[i].rfind(want, 0) != 0)
    fail(Errc::parse_error, "expected " + want + " in " + ctx + ", got '" + toks[i] + "'");
  return num(toks[i].substr(want.size()), ctx);
}

Potential parse_term(const std::vector<std::string>& toks, int dim) {
  if (toks.empty()) fail(Errc::parse_error, "empty potential term");
  const std::string& kind = toks[0];
  const std::string ctx = "potential term '" + kind + "'";

  if (kind == "zero") {
    if (toks.size() != 1) fail(Errc::parse_error, "zero takes no arguments");
    return Potential::zero();
  }
  if (kind == "point") {
    std::size_t coords = dim == 1 ? 1 : 2;
    if (toks.size() != coords + 2) fail(Errc::parse_error, ctx + ": expected coordinates and alpha=");
    Point a{num(toks[1], ctx), dim == 1 ? 0.0 : num(toks[2], ctx)};
    double alpha = keyed(toks, coords + 1, "alpha", ctx);
    return Potential::point_singularity(a, alpha);
  }
  if (kind == "hyperplane") {
    if (toks.size() != 4) fail(Errc::parse_error, ctx + ": expected axis, c=, alpha=");
    int axis;
    if (toks[1] == "x1")
      axis = 0;
    else if (toks[1] == "x2")
      axis = 1;
    else
      fail(Errc::parse_error, ctx + ": axis must be x1 or x2");
    double c = keyed(toks, 2, "c", ctx);
    double alpha = keyed(toks, 3, "alpha", ctx);
    return Potential::hyperplane(axis, c, alpha);
  }
  if (kind == "distset") {
    if (toks.size() < 2) fail(Errc::parse_error, ctx + ": expected obstacle");
    if (toks[1] == "disk") {
      if (toks.size() != 6) fail(Errc::parse_error, ctx + ": expected disk cx cy r= alpha=");
      double cx = num(toks[2], ctx), cy = num(toks[3], ctx);
      double r = keyed(toks, 4, "r", ctx);
      double alpha = keyed(toks, 5, "alpha", ctx);
      DomainSpec ob = DomainSpec::disk(cx, cy, r, 3);
      return Potential::distance_to_set(ob, alpha);
    }
    if (toks[1] == "interval") {
      if (toks.size() != 5) fail(Errc::parse_error, ctx + ": expected interval a b alpha=");
      double a = num(toks[2], ctx), b = num(toks[3], ctx);
      double alpha = keyed(toks, 4, "alpha", ctx);
      DomainSpec ob = DomainSpec::interval(a, b, 3);
      return Potential::distance_to_set(ob, alpha);
    }
    fail(Errc::parse_error, ctx + ": obstacle must be disk or interval");
  }
  fail(Errc::parse_error, "unknown potential kind '" + kind + "'");
}

}  // namespace

Potential parse_potential(const std::string& text, int dim) {
  auto toks = tokens_of(text);
  if (toks.empty()) fail(Errc::parse_error, "empty potential descriptor");
  std::vector<Potential> terms;
  std::vector<std::string> cur;
  for (const auto& t : toks) {
    if (t == "+") {
      terms.push_back(parse_term(cur, dim));
      cur.clear();
    } else {
      cur.push_back(t);
    }
  }
  terms.push_back(parse_term(cur, dim));
  if (terms.size() == 1) return terms.front();
  return Potential::sum(std::move(terms));
}

}  // namespace zlab
