#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "zlab/principles.hpp"

using namespace zlab;

namespace {

TruncationLadder deep() {
  TruncationLadder lad;
  lad.stop_tol = 1e-12;
  return lad;
}

}  // namespace

TEST_CASE("comparison function H") {
  ComparisonParams p{2.0, 0.5};
  CHECK(comparison_H(0.0, p) == 0.0);
  CHECK(comparison_H(3.0, p) == doctest::Approx(1.0));
  CHECK(comparison_H(0.5, p) == doctest::Approx(0.25));
  CHECK_THROWS_AS(comparison_H(-0.1, p), Error);
}

TEST_CASE("H is nondecreasing and capped") {
  ComparisonParams p{2.0, 0.5};
  double cap = (p.alpha - 1.0) / (p.C * p.alpha);
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double t = 3.0 * i / 1000.0;
    double v = comparison_H(t, p);
    CHECK(v >= prev - 1e-15);
    CHECK(v <= cap + 1e-15);
    prev = v;
  }
}

TEST_CASE("comparison margin: trivial and analytic cases") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 33));
  Field theta = torsion(g);
  ComparisonParams p{2.0, norm_linf(theta)};

  Field zero(g);
  double m0 = check_comparison(g, Potential::zero(), MeasureData::from_density(zero), {}, p);
  CHECK(m0 == doctest::Approx(0.0).scale(1e-12));

  Field one(g, 1.0);
  double m1 = check_comparison(g, Potential::zero(), MeasureData::from_density(one), {}, p);
  CHECK(m1 >= -1e-9);
}

TEST_CASE("comparison margin for a Dirac mass off the singularity") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 65));
  Potential V = Potential::point_singularity({0.0, 0.0}, 3.0);
  Field theta = torsion(g);
  ComparisonParams p{2.0, norm_linf(theta)};
  double m = check_comparison(g, V, MeasureData::from_atom({0.4, 0.2}, 1.0), deep(), p);
  CHECK(m >= -1e-6);
}

TEST_CASE("alternative verdicts: single positive component for V = 0") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 33));
  Field one(g, 1.0);
  auto [u, rep] = solve_ladder(g, Potential::zero(), one);
  NodeMask S = detect_S(u, 1e-3);
  ComponentLabels labels = components(g, S);
  ZeroSetReport zr = classify_and_build_Z(g, Potential::zero(), S, labels);
  auto verdicts = check_alternative(u, zr);
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].state == AlternativeState::positive);

  Field zero(g);
  auto v2 = check_alternative(zero, zr);
  CHECK(v2[0].state == AlternativeState::zero);
}

TEST_CASE("alternative verdicts for the twin-plane middle indicator") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 65));
  Potential V = Potential::sum(
      {Potential::hyperplane(0, -0.3, 3.0), Potential::hyperplane(0, 0.4, 3.0)});
  Field one(g, 1.0);
  auto [zeta1, rep] = solve_ladder(g, V, one, deep());
  NodeMask S = detect_S(zeta1, 1e-3);
  ComponentLabels labels = components(g, S);
  REQUIRE(labels.count == 3);
  ZeroSetReport zr = classify_and_build_Z(g, V, S, labels, deep());

  int mid = labels.label[static_cast<std::size_t>(g.nearest({0.05, 0.0}))];
  Field chi(g);
  for (std::size_t i = 0; i < g.size(); ++i) chi[i] = labels.label[i] == mid ? 1.0 : 0.0;
  auto [u, urep] = solve_ladder(g, V, chi, deep());
  auto verdicts = check_alternative(u, zr);
  int positives = 0, zeros = 0;
  for (const auto& v : verdicts) {
    if (v.state == AlternativeState::positive) ++positives;
    if (v.state == AlternativeState::zero) ++zeros;
  }
  CHECK(positives == 1);
  CHECK(zeros == 2);
  CHECK(verdicts[static_cast<std::size_t>(mid)].state == AlternativeState::positive);
}

TEST_CASE("endpoint integral: divergent, convergent and trivial cases") {
  Potential V25 = Potential::point_singularity({0.0, 0.0}, 2.5);
  CHECK(hopf_criterion_1d(V25, 0.0, 0.5).diverges);

  Potential V15 = Potential::point_singularity({0.0, 0.0}, 1.5);
  HopfResult r = hopf_criterion_1d(V15, 0.0, 0.5);
  CHECK_FALSE(r.diverges);
  CHECK(r.value == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-5));

  HopfResult z = hopf_criterion_1d(Potential::zero(), 0.0, 0.5);
  CHECK_FALSE(z.diverges);
  CHECK(z.value == 0.0);
}

TEST_CASE("endpoint integral divergence flips exactly at exponent 2") {
  for (double alpha : {1.0, 1.5, 1.9, 2.0, 2.5, 3.0}) {
    Potential V = Potential::point_singularity({0.0, 0.0}, alpha);
    CHECK(hopf_criterion_1d(V, 0.0, 0.5).diverges == (alpha >= 2.0));
  }
}

TEST_CASE("integrand singular away from the endpoint is a configuration error") {
  auto v = [](double x) { return 1.0 / std::abs(x - 0.3) / std::abs(x - 0.3); };
  CHECK_THROWS_AS(hopf_criterion_1d(v, 0.0, 0.5), Error);
}

TEST_CASE("1D regime classification matches the analytic sweep") {
  struct Case {
    double alpha;
    Regime want;
  };
  for (auto c : {Case{0.5, Regime::Z_empty}, Case{1.5, Regime::Z_everything},
                 Case{2.5, Regime::Z_point}}) {
    RegimeResult r = oned_regime_classifier(c.alpha, {}, 129);
    CHECK(r.joint == c.want);
    CHECK(r.consistent);
    CHECK(r.pde == r.quad);
  }
}

TEST_CASE("verdict csv schema") {
  std::vector<ComponentVerdict> v{{0, AlternativeState::positive, 0.1, 0.5}};
  std::ostringstream os;
  dump_verdicts_csv(os, "demo", v);
  std::string s = os.str();
  CHECK(s.rfind("experiment,component,verdict,min,max\n", 0) == 0);
  CHECK(s.find("demo,0,positive,0.1,0.5") != std::string::npos);
}
