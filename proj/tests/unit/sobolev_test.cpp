#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlab/constructions.hpp"
#include "dlab/error.hpp"
#include "dlab/form.hpp"
#include "dlab/sobolev.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dlab::Error thrown";
  return ErrorCode::InvalidArgument;
}

FormMatrix single_vertex(double c, double m) { return assemble(Graph::build(1, {}, {c}), MeasureSpace({m})); }

// path 0-1, unit edge, c = [1, 0]
FormMatrix killed_edge(double m0 = 1.0, double m1 = 1.0) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  return assemble(Graph::build(2, e, {1.0, 0.0}), MeasureSpace({m0, m1}));
}

// Exhaustive search over the angle of u = (cos th, sin th); the ratio is
// 0-homogeneous so this covers every direction.
double grid_search_two_point(const FormMatrix& fm, double p, int steps) {
  double best = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double th = M_PI * i / steps;
    VertexFunction u(2);
    u << std::cos(th), std::sin(th);
    best = std::max(best, sobolev_ratio(fm, u, p, 0.0, {}));
  }
  return best;
}

}  // namespace

TEST(SobolevInfinity, SpecExamples) {
  const auto a = sobolev_infty(single_vertex(2.0, 1.0));
  EXPECT_DOUBLE_EQ(a.value, 0.5);
  EXPECT_EQ(a.kind, EstimateKind::Exact);

  const auto b = sobolev_infty(single_vertex(0.0, 1.0), 3.0, 0);
  EXPECT_NEAR(b.value, 1.0 / 3.0, 1e-15);

  const auto c = sobolev_infty(killed_edge());
  EXPECT_NEAR(c.value, 2.0, 1e-14);
  EXPECT_EQ(c.maximizer, 1);
}

TEST(SobolevInfinity, SingularForm) {
  const std::vector<Edge> e{{0, 1, 1.0}};
  const FormMatrix free = assemble(Graph::build(2, e), MeasureSpace::uniform(2));
  EXPECT_EQ(code_of([&] { sobolev_infty(free); }), ErrorCode::SingularForm);
  EXPECT_EQ(code_of([&] { sobolev_p(free, 4.0); }), ErrorCode::SingularForm);
  // an anchor repairs it
  EXPECT_NEAR(sobolev_infty(free, 1.0, 0).value, 2.0, 1e-14);
}

TEST(SobolevInfinity, MatchesGaussJordanOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = oracle::random_definite(rng, 40);
    const FormMatrix fm(inst.graph(), inst.measure());
    const double alpha = trial % 2 == 0 ? 0.0 : 1.0;
    const std::optional<Index> anchor = alpha > 0 ? std::optional<Index>(trial % fm.size()) : std::nullopt;
    const auto est = sobolev_infty(fm, alpha, anchor);
    const auto ref = oracle::s_infinity(inst, alpha, anchor);
    ASSERT_TRUE(ref.has_value());
    ASSERT_NEAR(est.value, static_cast<double>(*ref), 1e-10 * static_cast<double>(*ref));
    // the Green column attains the value
    ASSERT_NEAR(sobolev_ratio(fm, est.witness, kInfinity, alpha, anchor), est.value, 1e-10 * est.value);
  }
}

TEST(SobolevInfinity, MeasureIndependentBitForBit) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = oracle::random_definite(rng, 60);
    const Graph g = inst.graph();
    const double reference = sobolev_infty(FormMatrix(g, inst.measure())).value;
    for (int k = 0; k < 10; ++k) {
      const auto m = oracle::random_measure(rng, inst);
      ASSERT_EQ(sobolev_infty(FormMatrix(g, MeasureSpace(m))).value, reference);
    }
  }
}

TEST(SobolevInfinity, NonincreasingInAlpha) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracle::random_definite(rng, 30);
    const FormMatrix fm(inst.graph(), inst.measure());
    const Index o = trial % fm.size();
    double previous = std::numeric_limits<double>::infinity();
    for (double alpha : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
      const double v = sobolev_infty(fm, alpha, o).value;
      ASSERT_LE(v, previous * (1 + 1e-14));
      previous = v;
    }
  }
}

TEST(SobolevP, OnePointClosedForms) {
  const auto a = sobolev_p(single_vertex(2.0, 3.0), 4.0);
  EXPECT_NEAR(a.value, std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_EQ(a.kind, EstimateKind::Lower);
  for (double p : {2.5, 3.0, 4.0, 6.0, 50.0}) {
    EXPECT_NEAR(sobolev_p(single_vertex(2.0, 1.0), p).value, 0.5, 1e-14);
  }
}

TEST(SobolevP, TwoPointMatchesGridSearch) {
  const auto fm = killed_edge();
  const double grid = grid_search_two_point(fm, 4.0, 200000);
  const auto lower = sobolev_p(fm, 4.0);
  const auto upper = sobolev_upper(sobolev_infty(fm), fm.measure(), 4.0);
  // a dense angular grid differs from the maximum by O(step^2)
  EXPECT_NEAR(lower.value, grid, 1e-8);
  EXPECT_GE(lower.value, grid - 1e-9);
  EXPECT_LE(lower.value, upper.value + 1e-9);
  // one-hot floor: max_x m(x)^{2/p} / K(x,x)
  EXPECT_GE(lower.value, std::max(1.0 / 2.0, 1.0 / 1.0) - 1e-12);
}

TEST(SobolevP, GridSearchWithGradedMeasure) {
  const auto fm = killed_edge(0.2, 3.0);
  for (double p : {3.0, 4.0, 6.0}) {
    const double grid = grid_search_two_point(fm, p, 200000);
    EXPECT_NEAR(sobolev_p(fm, p).value, grid, 1e-8 * grid) << "p=" << p;
  }
}

TEST(SobolevP, Rejections) {
  EXPECT_EQ(code_of([] { sobolev_p(single_vertex(1.0, 1.0), 2.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { sobolev_p(single_vertex(1.0, 1.0), 1.5); }), ErrorCode::InvalidArgument);
}

TEST(SobolevP, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(44);
  SobolevOptions opt;
  opt.restarts = 4;
  for (int trial = 0; trial < 120; ++trial) {
    const auto inst = oracle::random_definite(rng, 30);
    const FormMatrix fm(inst.graph(), inst.measure());
    const double alpha = trial % 3 == 0 ? 1.0 : 0.0;
    const std::optional<Index> anchor = alpha > 0 ? std::optional<Index>(0) : std::nullopt;
    const Eigen::MatrixXd a = Eigen::MatrixXd(fm.augmented(alpha, anchor));
    for (double p : {3.0, 4.0, 6.0}) {
      opt.seed = static_cast<std::uint64_t>(trial);
      const auto lower = sobolev_p(fm, p, alpha, anchor, opt);
      ASSERT_GT(lower.value, 0.0);
      // witness reproduces the value, in long double too
      ASSERT_NEAR(sobolev_ratio(fm, lower.witness, p, alpha, anchor), lower.value, 1e-10 * lower.value);
      std::vector<oracle::Real> w(lower.witness.data(), lower.witness.data() + lower.witness.size());
      ASSERT_NEAR(static_cast<double>(oracle::sobolev_ratio(inst, w, p, alpha, anchor)), lower.value,
                  1e-10 * lower.value);
      // one-hot floor
      double floor = 0.0;
      for (Index x = 0; x < fm.size(); ++x) floor = std::max(floor, std::pow(fm.mass()[x], 2.0 / p) / a(x, x));
      ASSERT_GE(lower.value, floor - 1e-12);
      if (alpha == 0.0) {
        const auto upper = sobolev_upper(sobolev_infty(fm), fm.measure(), p);
        ASSERT_LE(lower.value, upper.value + 1e-9);
      }
    }
  }
}

TEST(SobolevP, DeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(45);
  const auto inst = oracle::random_definite(rng, 50);
  const FormMatrix fm(inst.graph(), inst.measure());
  SobolevOptions one;
  one.seed = 99;
  SobolevOptions four = one;
  four.threads = 4;
  const auto a = sobolev_p(fm, 4.0, 0.0, {}, one);
  const auto b = sobolev_p(fm, 4.0, 0.0, {}, four);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.seed, 99u);
}

TEST(SobolevUpper, SpecExamples) {
  const auto half = sobolev_infty(single_vertex(2.0, 1.0));
  EXPECT_DOUBLE_EQ(sobolev_upper(half, MeasureSpace({1.0}), 4.0).value, 0.5);

  SobolevEstimate two;
  two.value = 2.0;
  const auto u = sobolev_upper(two, MeasureSpace::uniform(4, 4.0), 4.0);
  EXPECT_DOUBLE_EQ(u.value, 4.0);
  EXPECT_EQ(u.kind, EstimateKind::Upper);

  const MeasureSpace heavy = MeasureSpace::uniform(3, 10.0);
  EXPECT_NEAR(sobolev_upper(two, heavy, 1e9).value, 2.0, 1e-8);
  EXPECT_EQ(sobolev_upper(two, heavy, kInfinity).value, 2.0);
}

TEST(SobolevUpper, WrongKind) {
  SobolevEstimate lower;
  lower.kind = EstimateKind::Lower;
  lower.value = 1.0;
  EXPECT_EQ(code_of([&] { sobolev_upper(lower, MeasureSpace({1.0}), 4.0); }), ErrorCode::WrongKind);
  SobolevEstimate anchored;
  anchored.value = 1.0;
  anchored.alpha = 1.0;
  anchored.anchor = 0;
  EXPECT_EQ(code_of([&] { sobolev_upper(anchored, MeasureSpace({1.0}), 4.0); }), ErrorCode::WrongKind);
  SobolevEstimate finite;
  finite.value = 1.0;
  finite.p = 4.0;
  EXPECT_EQ(code_of([&] { sobolev_upper(finite, MeasureSpace({1.0}), 4.0); }), ErrorCode::WrongKind);
}
