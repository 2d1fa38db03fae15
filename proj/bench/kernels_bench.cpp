// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "tes/analysis.hpp"
#include "tes/attacks.hpp"
#include "tes/ctr.hpp"
#include "tes/modes.hpp"

namespace {

using namespace tes;

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) ? "parallel" : "serial"); }

void BM_CtrKeystream(benchmark::State& state) {
  const CipherPtr c = make_cipher(CipherKind::aes, Bytes(16, 7));
  std::vector<Block> out(static_cast<std::size_t>(state.range(1)));
  const Block s{};
  for (auto _ : state) {
    xcb_keystream(*c, s, out, exec_of(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(1) * 16);
  label(state);
}
BENCHMARK(BM_CtrKeystream)->ArgsProduct({{0, 1}, {4096, 1 << 16}});

void BM_XcbEncrypt(benchmark::State& state) {
  const TesKeySet k = derive_keys_v2(Bytes(16, 3));
  std::mt19937_64 rng(1);
  Bytes data(static_cast<std::size_t>(state.range(1)));
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  const BitString p = BitString::from_bytes(data);
  ModeOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(xcb_encrypt(XcbVariant::xcbv2(), k, BitString(), p, opts));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(1));
  label(state);
}
BENCHMARK(BM_XcbEncrypt)->ArgsProduct({{0, 1}, {4096, 1 << 20}});

void BM_IncSets(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_inc_sets(12, 4095, exec_of(state)).w_max);
  label(state);
}
BENCHMARK(BM_IncSets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CarryClassW32(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_w32(1u << 10, 0, 1, exec_of(state)).max_w);
  label(state);
}
BENCHMARK(BM_CarryClassW32)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Distinguisher(benchmark::State& state) {
  HctrOracle oracle(make_hctr_keys(Bytes(16, 1), FieldElement(5, 9)), HctrHash::original);
  for (auto _ : state) benchmark::DoNotOptimize(hctr_distinguish(oracle, 10000, 1, exec_of(state)).successes);
  label(state);
}
BENCHMARK(BM_Distinguisher)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
