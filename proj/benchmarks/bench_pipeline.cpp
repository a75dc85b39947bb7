#include <benchmark/benchmark.h>

#include "ofdmclip/channel.hpp"
#include "ofdmclip/clip_filter.hpp"
#include "ofdmclip/constellation.hpp"
#include "ofdmclip/fir_design.hpp"
#include "ofdmclip/harness.hpp"
#include "ofdmclip/ofdm.hpp"

using namespace ofdmclip;

namespace {

std::vector<Complex> random_symbols(ModScheme s, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    Bits bits(128 * static_cast<std::size_t>(s.bits_per_symbol()));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return map_bits(bits, s);
}

void BM_Modulate(benchmark::State& state) {
    const OfdmParams p;
    const auto frame = oversample_extend(FreqFrame{random_symbols({Family::Psk, 4}, 1)}, p.oversample);
    for (auto _ : state) benchmark::DoNotOptimize(ofdm_modulate(frame, p));
}
BENCHMARK(BM_Modulate);

void BM_ComposedFilter(benchmark::State& state) {
    const OfdmParams p;
    const ComposedFilter filt(p, design_equiripple(default_hpf_spec(p)));
    const auto frame = oversample_extend(FreqFrame{random_symbols({Family::Psk, 4}, 2)}, p.oversample);
    const auto x = upconvert(ofdm_modulate(frame, p), p.carrier_hz, p);
    const auto clipped = clip_passband(x, rms(x));
    for (auto _ : state) benchmark::DoNotOptimize(filt(clipped));
}
BENCHMARK(BM_ComposedFilter);

void BM_DesignEquiripple(benchmark::State& state) {
    const OfdmParams p;
    const auto spec = default_hpf_spec(p, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(design_equiripple(spec));
}
BENCHMARK(BM_DesignEquiripple)->Arg(31)->Arg(71)->Arg(101);

void BM_Demap(benchmark::State& state) {
    const ModScheme s = all_schemes().at(static_cast<std::size_t>(state.range(0)));
    const auto y = random_symbols(s, 3);
    for (auto _ : state) benchmark::DoNotOptimize(demap_symbols(y, s));
    state.SetLabel(s.name());
}
BENCHMARK(BM_Demap)->DenseRange(0, 7);

void BM_ReceiveBurst(benchmark::State& state) {
    const ExperimentSpec spec;
    const Link link(spec);
    const auto burst = link.make_burst(link.transmit_symbol(random_symbols({Family::Qam, 16}, 4)));
    for (auto _ : state) benchmark::DoNotOptimize(link.receive_burst(burst));
}
BENCHMARK(BM_ReceiveBurst);

}  // namespace

BENCHMARK_MAIN();
