#include <benchmark/benchmark.h>

#include "nefcert/certificate.hpp"
#include "nefcert/surface_lattice.hpp"

using namespace nefcert;

namespace {

Curve curve_over(int p, int k, uint64_t seed) {
  auto F = FiniteField::create(p, k);
  Rng rng(seed);
  for (;;) {
    Poly f = random_poly(F.get(), 5, rng, true);
    if (is_squarefree(f)) return Curve::create(F, f);
  }
}

const Certificate& cert(uint64_t p) {
  static const Certificate c3 = *certificate_build(3, 1).cert;
  static const Certificate c5 = *certificate_build(5, 1).cert;
  return p == 3 ? c3 : c5;
}

}  // namespace

static void BM_FieldMul(benchmark::State& state) {
  auto F = FiniteField::create(3, 7);
  Rng rng(1);
  Fq a = F->random_nonzero(rng), b = F->random_nonzero(rng);
  for (auto _ : state) {
    a = a * b + b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul);

static void BM_CantorAdd(benchmark::State& state) {
  Curve c = curve_over(static_cast<int>(state.range(0)), 2, 3);
  Rng rng(2);
  MumfordClass a = random_class(c, rng), b = random_class(c, rng);
  for (auto _ : state) {
    a = cantor_add(c, a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_CantorAdd)->Arg(3)->Arg(11)->Arg(101);

static void BM_JacobianOrder(benchmark::State& state) {
  Curve c = curve_over(static_cast<int>(state.range(0)), 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_order(c));
}
BENCHMARK(BM_JacobianOrder)->Arg(101)->Arg(1009);

static void BM_RiemannRochSpace(benchmark::State& state) {
  Curve c = curve_over(7, 2, 5);
  Rng rng(6);
  Divisor d = Divisor::of(Place::infinity(), state.range(0));
  for (int i = 0; i < 3; ++i) d.add(c.random_place(rng, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(rr_space(c, d).dim());
}
BENCHMARK(BM_RiemannRochSpace)->Arg(4)->Arg(12)->Arg(24);

static void BM_FrobeniusH1(benchmark::State& state) {
  Curve c = curve_over(5, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_h1(c, Divisor(), std::nullopt).injective());
}
BENCHMARK(BM_FrobeniusH1);

static void BM_BetaFunctional(benchmark::State& state) {
  const Certificate& c = cert(static_cast<uint64_t>(state.range(0)));
  EmbeddingData e = embed_bidegree_2_3(c.curve, c.a_div);
  NormalBundle n = normal_bundle_divisor(e, c.aux);
  for (auto _ : state) benchmark::DoNotOptimize(beta_functional(e, n).values);
}
BENCHMARK(BM_BetaFunctional)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CertificateBuild(benchmark::State& state) {
  uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(certificate_build(static_cast<uint64_t>(state.range(0)), seed++).cert);
}
BENCHMARK(BM_CertificateBuild)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_CertificateVerify(benchmark::State& state) {
  const Certificate& c = cert(static_cast<uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certificate_verify(c).ok());
}
BENCHMARK(BM_CertificateVerify)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_HodgeSignature(benchmark::State& state) {
  SurfaceLattice lat = blowup_lattice(SurfaceBase::P1xP1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hodge_signature(lat));
}
BENCHMARK(BM_HodgeSignature)->Arg(12)->Arg(50);

static void BM_RankinExtremal(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rankin_extremal(3, static_cast<int>(state.range(0)), false));
}
BENCHMARK(BM_RankinExtremal)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
