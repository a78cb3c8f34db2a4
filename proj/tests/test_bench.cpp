#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "glt/quadrature_bench.hpp"

using namespace glt;

namespace {

BenchRecord record(SamplerTag kind, std::int64_t n, std::int64_t trial, double signed_error) {
  return {"synthetic", kind, n, trial, 0, signed_error, std::abs(signed_error)};
}

double midpoint_integral(const Integrand& f, int m) {
  // Tensor midpoint rule, s = 2.
  long double s = 0;
  std::vector<double> x(2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      x[0] = (i + 0.5) / m;
      x[1] = (j + 0.5) / m;
      s += f.evaluate(x);
    }
  return static_cast<double>(s / (static_cast<long double>(m) * m));
}

}  // namespace

TEST(Integrands, ExactIntegrals) {
  EXPECT_EQ(find_integrand("korobov_worst", 2).exact_integral, 1.0);
  EXPECT_EQ(find_integrand("prod_linear", 3).exact_integral, 0.125);
  EXPECT_EQ(find_integrand("prod_sine", 2).exact_integral, 0.0);
  EXPECT_EQ(find_integrand("constant", 4).exact_integral, 1.0);
  EXPECT_NEAR(find_integrand("poisson_residual_surrogate", 2).exact_integral, 0.01 / 4.0, 1e-17);
  EXPECT_EQ(find_integrand("korobov2", 2).name, "korobov_worst");
  EXPECT_EQ(find_integrand("poisson_surrogate", 2).name, "poisson_residual_surrogate");
  EXPECT_THROW(find_integrand("gaussian", 2), std::invalid_argument);
  EXPECT_THROW(builtin_integrands(0), std::invalid_argument);
}

TEST(Integrands, ClosedFormsMatchNumericalIntegration) {
  for (const auto& f : builtin_integrands(2))
    EXPECT_NEAR(midpoint_integral(f, 1000), f.exact_integral, 5e-6) << f.name;
}

TEST(Integrands, Metadata) {
  for (const auto& f : builtin_integrands(3)) {
    EXPECT_EQ(f.dim, 3u);
    EXPECT_EQ(f.periodic, f.name != "prod_linear") << f.name;
  }
  EXPECT_EQ(find_integrand("korobov_worst", 2).smoothness, 2.0);
}

TEST(Schedules, Defaults) {
  EXPECT_EQ(fibonacci_schedule(),
            (std::vector<std::int64_t>{55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181}));
  EXPECT_EQ(power_of_two_schedule(), (std::vector<std::int64_t>{64, 128, 256, 512, 1024, 2048}));
  EXPECT_EQ(grid_schedule({55, 89, 144}, 2), (std::vector<std::int64_t>{49, 81, 144}));
  EXPECT_EQ(default_schedule(SamplerTag::Lhs, 2), fibonacci_schedule());
}

TEST(LatticeFor, PicksFibonacciInTwoDimensions) {
  EXPECT_EQ(lattice_for(144, 2), fibonacci_generating_vector(12));
  EXPECT_EQ(lattice_for(100, 2), korobov_search(100, 2, 2).gv);
  EXPECT_EQ(lattice_for(89, 3).dim(), 3u);
}

TEST(Quadrature, ZeroShiftLatticeIsExactForConstant) {
  const auto f = find_integrand("constant", 2);
  for (int k = 5; k <= 18; ++k) {
    const auto gv = fibonacci_generating_vector(k);
    const auto pts = sample(SamplerKind::good_lattice(gv, false), gv.n(), 2, 0).points;
    EXPECT_EQ(equal_weight_quadrature(f, pts), 1.0) << k;
  }
}

TEST(Quadrature, ZeroShiftLatticeOnProductSine) {
  const auto f = find_integrand("prod_sine", 2);
  const GeneratingVector gv(89, {1, 55});
  const auto pts = sample(SamplerKind::good_lattice(gv, false), 89, 2, 0).points;
  EXPECT_LE(std::abs(equal_weight_quadrature(f, pts)), 1e-12);
}

TEST(Quadrature, KorobovWorstZeroShiftEqualsMeritPlusOne) {
  // Equal-weight rule on the worst-case function is 1 + P_2.
  const auto f = find_integrand("korobov_worst", 2);
  for (int k : {8, 10, 12}) {
    const auto gv = fibonacci_generating_vector(k);
    const auto pts = generate_points(gv).points;
    EXPECT_NEAR(equal_weight_quadrature(f, pts) - 1.0, p_alpha_exact(gv, 2).p_alpha, 1e-13);
  }
}

TEST(Quadrature, TransformChainWeightsByJacobian) {
  const auto f = find_integrand("prod_linear", 2);
  const auto gv = fibonacci_generating_vector(16);
  const auto pts = generate_points(gv).points;
  const auto q = equal_weight_quadrature(f, pts, TransformChain::parse("poly5,poly5"));
  EXPECT_NEAR(q, 0.25, 1e-8);
}

TEST(RunBench, Cardinality) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::UniformRandom, SamplerTag::GoodLattice};
  cfg.trials = 10;
  cfg.seed = 1;
  const auto records = run_bench(find_integrand("korobov2", 2), cfg);
  EXPECT_EQ(records.size(), 2u * fibonacci_schedule().size() * 10u);
  std::set<std::uint64_t> seeds;
  for (const auto& r : records) {
    EXPECT_GE(r.abs_error, 0.0);
    EXPECT_EQ(r.abs_error, std::abs(r.signed_error));
    seeds.insert(r.seed);
  }
  EXPECT_EQ(seeds.size(), records.size());
  EXPECT_EQ(records.front().kind, SamplerTag::UniformRandom);
  EXPECT_EQ(records.back().kind, SamplerTag::GoodLattice);
  EXPECT_EQ(records.back().n, 4181);
  EXPECT_EQ(records.back().trial, 9);
}

TEST(RunBench, DeterministicAcrossWorkers) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::Lhs, SamplerTag::Sobol, SamplerTag::UniformGrid};
  cfg.schedules[SamplerTag::Lhs] = {55, 89};
  cfg.schedules[SamplerTag::Sobol] = {64, 128};
  cfg.schedules[SamplerTag::UniformGrid] = {49, 81};
  cfg.trials = 7;
  cfg.seed = 42;
  const auto f = find_integrand("prod_sine", 2);
  cfg.workers = 1;
  const auto a = run_bench(f, cfg);
  cfg.workers = 3;
  const auto b = run_bench(f, cfg);
  EXPECT_EQ(a, b);
  cfg.seed = 43;
  EXPECT_NE(a, run_bench(f, cfg));
}

TEST(RunBench, ShiftedTrialsDiffer) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::GoodLattice, SamplerTag::UniformGrid};
  cfg.schedules[SamplerTag::GoodLattice] = {89};
  cfg.schedules[SamplerTag::UniformGrid] = {81};
  cfg.trials = 5;
  const auto records = run_bench(find_integrand("korobov_worst", 2), cfg);
  std::set<double> errors;
  for (const auto& r : records) errors.insert(r.signed_error);
  EXPECT_EQ(errors.size(), records.size());
}

TEST(RunBench, ScheduleMismatch) {
  const auto f = find_integrand("korobov_worst", 2);
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::Sobol};
  cfg.schedules[SamplerTag::Sobol] = {64, 100};
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
  cfg.kinds = {SamplerTag::UniformGrid};
  cfg.schedules[SamplerTag::UniformGrid] = {50};
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
  cfg.kinds = {};
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
  cfg.kinds = {SamplerTag::UniformRandom};
  cfg.trials = 0;
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.transforms = TransformChain::parse("circle,id");
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
  cfg.transforms = TransformChain::parse("id");
  EXPECT_THROW(run_bench(f, cfg), std::invalid_argument);
}

TEST(RunBench, GoodLatticeMeanErrorDecreases) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::GoodLattice};
  cfg.schedules[SamplerTag::GoodLattice] = {55, 89, 144, 233, 377, 610, 987};
  cfg.trials = 100;
  cfg.seed = 3;
  const auto rows = summarize(run_bench(find_integrand("korobov_worst", 2), cfg));
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].mean, rows[i - 1].mean) << rows[i].n;
}

TEST(RunBench, ShiftedLatticeIsUnbiased) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::GoodLattice};
  cfg.schedules[SamplerTag::GoodLattice] = {89, 377};
  cfg.trials = 400;
  cfg.seed = 11;
  for (const char* name : {"korobov_worst", "prod_linear", "prod_sine"}) {
    const auto rows = summarize(run_bench(find_integrand(name, 2), cfg));
    for (const auto& r : rows) {
      const double se = r.std / std::sqrt(static_cast<double>(r.count));
      EXPECT_LE(std::abs(r.signed_mean), 3.0 * se) << name << " " << r.n;
    }
  }
}

TEST(RunBench, NonPeriodicIntegrandLosesMostOfTheAdvantage) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::UniformRandom, SamplerTag::GoodLattice};
  cfg.schedules[SamplerTag::UniformRandom] = fibonacci_schedule(10, 18);
  cfg.schedules[SamplerTag::GoodLattice] = fibonacci_schedule(10, 18);
  cfg.trials = 200;
  cfg.seed = 5;
  const auto rows = summarize(run_bench(find_integrand("prod_linear", 2), cfg));
  const double glt = fit_slope(rows, SamplerTag::GoodLattice).slope;
  const double mc = fit_slope(rows, SamplerTag::UniformRandom).slope;
  EXPECT_LT(std::abs(glt - mc), 0.6) << glt << " " << mc;
}

TEST(Summarize, Statistics) {
  const auto rows = summarize({record(SamplerTag::UniformRandom, 10, 0, 1.0), record(SamplerTag::UniformRandom, 10, 1, 3.0)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean, 2.0);
  EXPECT_EQ(rows[0].std, 1.0);
  EXPECT_EQ(rows[0].max, 3.0);
  EXPECT_EQ(rows[0].count, 2);

  const auto single = summarize({record(SamplerTag::Lhs, 5, 0, 0.7)});
  EXPECT_EQ(single[0].std, 0.0);
  const auto same = summarize({record(SamplerTag::Lhs, 5, 0, 0.7), record(SamplerTag::Lhs, 5, 1, 0.7)});
  EXPECT_EQ(same[0].std, 0.0);
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Summarize, StdIsOverSignedError) {
  const auto rows = summarize({record(SamplerTag::Sobol, 8, 0, -1.0), record(SamplerTag::Sobol, 8, 1, 1.0)});
  EXPECT_EQ(rows[0].std, 1.0);
  EXPECT_EQ(rows[0].mean, 1.0);
  EXPECT_EQ(rows[0].signed_mean, 0.0);
}

TEST(Summarize, DeterministicOrdering) {
  std::vector<BenchRecord> rs{record(SamplerTag::GoodLattice, 89, 0, 0.1), record(SamplerTag::UniformRandom, 89, 0, 0.2),
                              record(SamplerTag::GoodLattice, 55, 0, 0.3), record(SamplerTag::UniformRandom, 55, 0, 0.4)};
  const auto a = summarize(rs);
  std::reverse(rs.begin(), rs.end());
  const auto b = summarize(rs);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].n, b[i].n);
  }
  EXPECT_EQ(a[0].kind, SamplerTag::UniformRandom);
  EXPECT_EQ(a[0].n, 55);
}

TEST(FitSlope, ExactPowerLaws) {
  std::vector<std::int64_t> ns{55, 89, 144, 233, 377, 610};
  std::vector<double> half, two;
  for (auto n : ns) {
    half.push_back(std::pow(static_cast<double>(n), -0.5));
    two.push_back(3.0 * std::pow(static_cast<double>(n), -2.0));
  }
  const auto a = fit_slope(ns, half);
  EXPECT_NEAR(a.slope, -0.5, 1e-12);
  EXPECT_NEAR(a.intercept, 0.0, 1e-12);
  EXPECT_LT(a.residual, 1e-12);
  const auto b = fit_slope(ns, two);
  EXPECT_NEAR(b.slope, -2.0, 1e-12);
  EXPECT_NEAR(b.intercept, std::log(3.0), 1e-12);
}

TEST(FitSlope, Errors) {
  const std::vector<std::int64_t> ns{1, 2, 3, 4};
  EXPECT_THROW(fit_slope(ns, std::vector<double>{1, 1, 0, 1}), std::domain_error);
  EXPECT_THROW(fit_slope(ns, std::vector<double>{1, 1, -1, 1}), std::domain_error);
  EXPECT_THROW(fit_slope(std::vector<std::int64_t>{1, 2, 3, 3}, std::vector<double>{1, 1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(fit_slope(ns, std::vector<double>{1, 1, 1}), std::invalid_argument);
}

TEST(FitSlope, MonteCarloRate) {
  BenchConfig cfg;
  cfg.kinds = {SamplerTag::UniformRandom};
  cfg.schedules[SamplerTag::UniformRandom] = fibonacci_schedule(10, 18);
  cfg.trials = 200;
  cfg.seed = 2024;
  const auto fit = fit_slope(summarize(run_bench(find_integrand("korobov_worst", 2), cfg)), SamplerTag::UniformRandom);
  EXPECT_GE(fit.slope, -0.65);
  EXPECT_LE(fit.slope, -0.35);
}
