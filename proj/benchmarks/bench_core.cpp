#include <benchmark/benchmark.h>

#include <random>

#include "cdalg/brown.hpp"
#include "cdalg/isotropy.hpp"
#include "cdalg/levels.hpp"

using namespace cdalg;

namespace {

Algebra grid_algebra(const char* field, int t) {
  const Field f = Field::parse(field);
  std::vector<Element> g;
  for (int j = 0; j < t; ++j) g.push_back(Element::from_int(f, j % 2 ? 2 : -1));
  return build_algebra(f, g);
}

CDElement random_element(const Algebra& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  std::vector<Element> c;
  for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(Element::from_int(a->field(), d(rng)));
  return CDElement(a, std::move(c));
}

void multiply_fp(benchmark::State& state) {
  const Algebra a = grid_algebra("Fp:5", static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const CDElement x = random_element(a, rng), y = random_element(a, rng);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(multiply_fp)->DenseRange(1, 4);

void multiply_q(benchmark::State& state) {
  const Algebra a = grid_algebra("Q", static_cast<int>(state.range(0)));
  std::mt19937_64 rng(1);
  const CDElement x = random_element(a, rng), y = random_element(a, rng);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(multiply_q)->DenseRange(1, 4);

void multiply_brown(benchmark::State& state) {
  const BrownInstance b = build_brown(static_cast<int>(state.range(0)), Field::rationals());
  const CDElement x = sample_element(b.algebra, 2, 7, 0), y = sample_element(b.algebra, 2, 7, 1);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(multiply_brown)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void polynomial_gcd(benchmark::State& state) {
  const Field f = Field::parse("Q(X1..X2)");
  const Polynomial g = Element::parse(f, "X1^3 + 2*X1*X2 - X2^2 + 1").rational_function().num;
  const Polynomial a = g * Element::parse(f, "X1^2 - 3*X2 + 5").rational_function().num;
  const Polynomial b = g * Element::parse(f, "X2^3 + X1 - 7").rational_function().num;
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(polynomial_gcd)->Unit(benchmark::kMicrosecond);

void level_search_f3(benchmark::State& state) {
  const Field f = Field::prime(3);
  const Algebra a = build_algebra(f, {Element::from_int(f, 1), Element::from_int(f, 1)});
  for (auto _ : state) benchmark::DoNotOptimize(compute_levels(a));
}
BENCHMARK(level_search_f3)->Unit(benchmark::kMicrosecond);

void isotropy_q(benchmark::State& state) {
  const Field q = Field::rationals();
  const DiagonalForm phi = DiagonalForm::parse(q, "1,1,1,-7,3");
  for (auto _ : state) benchmark::DoNotOptimize(isotropic(phi));
}
BENCHMARK(isotropy_q)->Unit(benchmark::kMicrosecond);

void brown_certificate(benchmark::State& state) {
  const BrownInstance b = build_brown(static_cast<int>(state.range(0)), Field::rationals());
  for (auto _ : state) benchmark::DoNotOptimize(division_certificate(b));
}
BENCHMARK(brown_certificate)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
