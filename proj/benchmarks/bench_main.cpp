#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "toric_cy/correspondence.hpp"
#include "toric_cy/fixtures.hpp"
#include "toric_cy/polytope.hpp"

using namespace toric_cy;

namespace {

GoodCone cone(const std::string& name) { return fixture_cone(find_fixture(name)); }

RationalVector regular_reeb(std::size_t dim) {
  RationalVector xi(dim, Rational(0));
  xi.back() = Rational(static_cast<long>(dim));
  return xi;
}

void BM_CheckGood(benchmark::State& state) {
  std::vector<IntVector> normals = cone("dp3").normals();
  for (auto _ : state) benchmark::DoNotOptimize(check_good(normals));
}
BENCHMARK(BM_CheckGood);

void BM_MomentsExact(benchmark::State& state) {
  GoodCone c = cone("dp3");
  RationalVector xi = regular_reeb(3);
  for (auto _ : state) benchmark::DoNotOptimize(TransversalPolytope<Rational>(c, xi).moments());
}
BENCHMARK(BM_MomentsExact);

void BM_ReebToAnglesExact(benchmark::State& state) {
  GoodCone c = cone("dp2");
  RationalVector xi = regular_reeb(3);
  for (auto _ : state) benchmark::DoNotOptimize(reeb_to_angles(c, xi));
}
BENCHMARK(BM_ReebToAnglesExact);

void BM_ReebToAnglesDouble(benchmark::State& state) {
  GoodCone c = cone("dp2");
  std::vector<double> xi{0.1, -0.2, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(reeb_to_angles(c, xi));
}
BENCHMARK(BM_ReebToAnglesDouble);

void BM_AnglesToReeb(benchmark::State& state) {
  GoodCone c = cone("dp1");
  RationalVector beta{Rational(1), Rational(1), Rational(1), Rational(1)};
  for (auto _ : state) benchmark::DoNotOptimize(angles_to_reeb(c, beta));
}
BENCHMARK(BM_AnglesToReeb);

void BM_VolumeFunction(benchmark::State& state) {
  GoodCone c = cone("conifold");
  for (auto _ : state) benchmark::DoNotOptimize(build_volume_function(c));
}
BENCHMARK(BM_VolumeFunction);

}  // namespace

BENCHMARK_MAIN();
