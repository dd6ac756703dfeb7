#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace hardy;
using namespace std::complex_literals;

TEST(TupleDistance, Examples) {
  const std::vector<Complex> u{0.1, 0.2};
  const std::vector<Complex> v{0.2, 0.1 + 0.1i};
  EXPECT_NEAR(tuple_distance(u, v), 0.1, 1e-15);
  EXPECT_EQ(tuple_distance(u, u), 0.0);
  const std::vector<Complex> w{0.3i, -0.5, 0.2 + 0.2i};
  std::vector<Complex> p = w;
  std::reverse(p.begin(), p.end());
  EXPECT_EQ(tuple_distance(w, p), 0.0);
  EXPECT_THROW(tuple_distance(u, w), ValidationError);
}

TEST(TupleDistance, Pseudometric) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto a = oracle::random_tuple(rng, n, 0.9, 0.0);
    const auto b = oracle::random_tuple(rng, n, 0.9, 0.0);
    const auto c = oracle::random_tuple(rng, n, 0.9, 0.0);
    const double ab = tuple_distance(a, b), ba = tuple_distance(b, a);
    EXPECT_GE(ab, 0.0);
    EXPECT_NEAR(ab, ba, 1e-15);
    EXPECT_LE(ab, tuple_distance(a, c) + tuple_distance(c, b) + 1e-14);
    EXPECT_GT(ab, 0.0);
  }
}

TEST(TupleDistance, AssignmentMatchesBruteForce) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = oracle::random_tuple(rng, n, 0.9, 0.0);
    const auto b = oracle::random_tuple(rng, n, 0.9, 0.0);
    EXPECT_NEAR(tuple_distance(a, b, DistanceMethod::assignment), tuple_distance(a, b, DistanceMethod::brute_force),
                1e-12);
  }
  // Above the exhaustive range: a permuted copy is at distance zero.
  auto a = oracle::random_tuple(rng, 12, 0.9, 0.0);
  auto b = a;
  std::shuffle(b.begin(), b.end(), rng);
  EXPECT_NEAR(tuple_distance(a, b), 0.0, 1e-15);
}

TEST(L2RelativeError, Examples) {
  const auto f = require_target("ex5_1_f1").sample(64);
  EXPECT_EQ(l2_relative_error(f, f), 0.0);
  const Signal zero(std::vector<Complex>(64, 0.0));
  EXPECT_NEAR(l2_relative_error(f, zero), 1.0, 1e-15);
  EXPECT_THROW(l2_relative_error(zero, f), ValidationError);
}

TEST(RandomForm, DeterministicAndConstrained) {
  const auto a = random_blaschke_form(1, 9);
  EXPECT_EQ(a.tuple.size(), 1u);
  EXPECT_LE(std::abs(a.tuple[0]), 0.9);
  const auto x = random_blaschke_form(6, 123), y = random_blaschke_form(6, 123);
  EXPECT_EQ(x.tuple, y.tuple);
  EXPECT_EQ(x.coeffs, y.coeffs);
  std::set<std::vector<double>> seen;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto form = random_blaschke_form(5, s);
    EXPECT_GE(form.tuple.min_separation(), 0.05);
    std::vector<double> key;
    for (const auto& p : form.tuple.poles()) {
      EXPECT_LE(std::abs(p), 0.9);
      key.push_back(p.real());
      key.push_back(p.imag());
    }
    for (const auto& c : form.coeffs) {
      EXPECT_LE(std::abs(c.real()), 1.0);
      EXPECT_LE(std::abs(c.imag()), 1.0);
    }
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), 20u);
  EXPECT_THROW(random_blaschke_form(0, 1), ValidationError);
  EXPECT_THROW(random_blaschke_form(2000, 1), Error);
}

TEST(Targets, Registry) {
  EXPECT_TRUE(find_target("ex5_2_f3"));
  EXPECT_FALSE(find_target("nope"));
  EXPECT_THROW(require_target("nope"), ValidationError);
  EXPECT_EQ(require_target("ex5_3").default_degree, 5u);
  EXPECT_EQ(require_target("ex5_2_f3").default_degree, 30u);
  const auto t = require_target("tau_pow_3");
  EXPECT_NEAR(std::abs(t.fn(0.5) - 0.125), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(require_target("ex5_2_f1").fn(0.0) - (1.0 + 1.0 / 3.0)), 0.0, 1e-15);
}

TEST(Pipeline, SingleBasisElement) {
  const Complex b = 0.43 - 0.21i;
  const auto f = synthesize(BlaschkeModel(PoleTuple({b}), {0.7 + 0.2i}, 0.0), 1024);
  RunConfig cfg;
  const auto m = cafd_cgd(f, 1, cfg);
  EXPECT_LE(std::abs(m.tuple[0] - b), 1e-6);
}

TEST(Pipeline, Example53) {
  const auto target = require_target("ex5_3");
  const auto f = target.sample(1024);
  RunConfig cfg;
  const auto run = cafd_cgd_run(f, 5, cfg);
  const double err = l2_relative_error(f, synthesize(run.model, 1024));
  EXPECT_LE(err, 5e-4);
  EXPECT_LE(tuple_distance(run.model.tuple, target.form->tuple), 5e-3);
  // Energy accounting and no regression against the search tuple.
  EXPECT_NEAR(err * err * norm_sq(f), run.model.residual_error, 1e-8 * norm_sq(f));
  EXPECT_LE(run.model.residual_error, run.search_residual + 1e-12);
}

TEST(Pipeline, Example56) {
  const auto target = require_target("ex5_6");
  const auto f = target.sample(1024);
  const auto m = cafd_cgd(f, 4, RunConfig{});
  EXPECT_LE(tuple_distance(m.tuple, target.form->tuple), 0.01);
  EXPECT_LE(l2_relative_error(f, synthesize(m, 1024)), 5e-4);
}

TEST(Pipeline, SeededRunsAreBitIdentical) {
  const auto f = require_target("ex5_1_f2").sample(1024);
  RunConfig cfg;
  cfg.seed = 77;
  cfg.cgd.max_iters = 50;
  const auto a = cafd_cgd(f, 4, cfg), b = cafd_cgd(f, 4, cfg);
  EXPECT_EQ(a.tuple, b.tuple);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_EQ(a.residual_error, b.residual_error);
}

TEST(Pipeline, AccountingOnRandomForms) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto form = random_blaschke_form(3, seed);
    const auto f = synthesize(BlaschkeModel(form.tuple, form.coeffs, 0.0), 1024);
    RunConfig cfg;
    cfg.seed = seed;
    cfg.cgd.max_iters = 100;
    const auto run = cafd_cgd_run(f, 2, cfg);
    const double err = l2_relative_error(f, synthesize(run.model, 1024));
    EXPECT_NEAR(err * err * norm_sq(f), run.model.residual_error, 1e-8 * norm_sq(f));
    EXPECT_LE(run.model.residual_error, run.search_residual + 1e-12);
  }
}
