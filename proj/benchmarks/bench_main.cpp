#include <random>

#include <benchmark/benchmark.h>

#include "degen/descent.hpp"
#include "degen/dual_graph.hpp"
#include "degen/genus4.hpp"
#include "degen/hyperelliptic.hpp"
#include "degen/oracle.hpp"
#include "degen/parse.hpp"
#include "degen/smith.hpp"

using namespace degen;

namespace {

HyperellipticCurve split_cubic(std::uint64_t q) {
  HyperellipticInput in;
  in.q = q;
  in.g = parse_univariate("x^3-x");
  in.h = parse_univariate("x+2");
  return validate_hyperelliptic(in);
}

Genus4Curve eps0(std::uint64_t q) {
  Genus4Input in;
  in.q = q;
  in.eps = parse_cubic_form("X^3+Y^3+W*Z^2");
  return validate_genus4(in);
}

}  // namespace

static void BM_FieldMultiply(benchmark::State& state) {
  auto f = make_field_of_order(static_cast<std::uint64_t>(state.range(0)));
  auto g = f.primitive_element();
  auto x = f.one();
  for (auto _ : state) {
    x = x * g;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FieldMultiply)->Arg(49)->Arg(3125)->Arg(59049);

static void BM_Factor(benchmark::State& state) {
  auto f = make_field_of_order(static_cast<std::uint64_t>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<FieldElement> c(13);
  for (auto& x : c) x = f.element(rng() % f.q());
  c.back() = f.one();
  Poly p(f, c);
  for (auto _ : state) benchmark::DoNotOptimize(factor(p));
}
BENCHMARK(BM_Factor)->Arg(7)->Arg(49)->Arg(127);

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  IntMatrix a(n, IntVector(n));
  for (auto& row : a)
    for (auto& x : row) x = Int(static_cast<int>(rng() % 41) - 20);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_ComponentGroupBanana(benchmark::State& state) {
  auto m = intersection_matrix(banana_graph(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(component_group(m));
}
BENCHMARK(BM_ComponentGroupBanana)->Arg(3)->Arg(8)->Arg(16);

static void BM_ThetaClosedForm(benchmark::State& state) {
  auto c = split_cubic(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(theta_bd(c));
}
BENCHMARK(BM_ThetaClosedForm)->Arg(23)->Arg(199);

static void BM_DescentVerdict(benchmark::State& state) {
  auto c = split_cubic(static_cast<std::uint64_t>(state.range(0)));
  auto ctx = bd_context(c);
  auto k = bd_canonical_divisor(c, ctx.fiber.working);
  for (auto _ : state) benchmark::DoNotOptimize(divisibility_verdict(ctx, k, 2));
}
BENCHMARK(BM_DescentVerdict)->Arg(23)->Arg(199);

static void BM_Genus4TableDirect(benchmark::State& state) {
  auto c = eps0(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(genus4_table_direct(c));
}
BENCHMARK(BM_Genus4TableDirect)->Arg(7)->Arg(13);

static void BM_Genus4Torsion(benchmark::State& state) {
  auto c = eps0(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(genus4_torsion(c));
}
BENCHMARK(BM_Genus4Torsion)->Arg(7)->Arg(13);

static void BM_OracleDivisibility(benchmark::State& state) {
  auto c = split_cubic(static_cast<std::uint64_t>(state.range(0)));
  auto ctx = bd_context(c);
  auto k = bd_canonical_divisor(c, ctx.fiber.working);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_divisibility(ctx, k, 2));
}
BENCHMARK(BM_OracleDivisibility)->Arg(5)->Arg(7)->Arg(13);

BENCHMARK_MAIN();
