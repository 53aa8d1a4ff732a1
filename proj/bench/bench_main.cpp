// Compares the serial reference kernels against the OpenMP kernels and
// checks that both produce identical results while timing them.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <vector>

#include "glcs/decoder.hpp"
#include "glcs/harness.hpp"
#include "glcs/parallel.hpp"
#include "glcs/rng.hpp"

using namespace glcs;

namespace {

template <typename F>
double best_seconds(int reps, F&& fn) {
  double best = 1e100;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* kernel, double serial, double parallel) {
  std::printf("%-28s serial %9.4f ms   parallel %9.4f ms   speedup %.2fx\n", kernel,
              serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());

  const Index n = Index{1} << 30;
  const std::uint32_t k = 100, b = 300, d = 3;
  SchemeParams p;
  p.n = n;
  p.k = k;
  p.b = b;
  p.d = d;
  p.c0 = 60;
  p.c1 = 30;
  p.c2 = 60;
  p.sigma2 = std::pow(10.0, -2.5);
  p.alphabet_mode = AlphabetMode::Discrete;
  for (int v = -10; v <= 10; ++v)
    if (v != 0) p.alphabet.push_back(v);
  p.validate();

  const IndexCodec codec(CodecKind::RegularLdpc, n, p.c0, 11);
  const ColumnGenerator gen(codec, p.c1, p.c2, 12);
  const BinHasher hasher(b, d, 13);

  SparseSignal x(n);
  std::set<Index> support;
  std::uint64_t ctr = 0;
  while (support.size() < k) support.insert(rng::bounded(rng::hash(14, ctr++), n));
  std::uint32_t slot = 0;
  for (Index i : support) {
    x.set(i, 1.0 + static_cast<double>(rng::bounded(rng::hash(15, slot), 10)));
    ++slot;
  }

  // measure: per-bin accumulation.
  const double meas_serial = best_seconds(
      30, [&] { (void)measure(x, hasher, gen, 1, p.sigma2, Execution::Serial); });
  const double meas_parallel = best_seconds(
      30, [&] { (void)measure(x, hasher, gen, 1, p.sigma2, Execution::Parallel); });
  report("measure", meas_serial, meas_parallel);

  const auto ms = measure(x, hasher, gen, 1, p.sigma2, Execution::Serial);
  const auto mp = measure(x, hasher, gen, 1, p.sigma2, Execution::Parallel);
  bool same = true;
  for (std::uint32_t j = 0; j < b; ++j) same = same && ms.bins[j].y == mp.bins[j].y;
  std::printf("  results identical: %s\n", same ? "yes" : "NO");

  // peel_decode: the seeding pass dominates and parallelizes over bins.
  const double dec_serial = best_seconds(
      20, [&] { (void)peel_decode(ms, p, codec, gen, hasher, Execution::Serial); });
  const double dec_parallel = best_seconds(
      20, [&] { (void)peel_decode(ms, p, codec, gen, hasher, Execution::Parallel); });
  report("peel_decode", dec_serial, dec_parallel);

  const auto ds = peel_decode(ms, p, codec, gen, hasher, Execution::Serial);
  const auto dp = peel_decode(ms, p, codec, gen, hasher, Execution::Parallel);
  std::printf("  results identical: %s (recovered %zu/%u)\n",
              ds.estimate.entries == dp.estimate.entries ? "yes" : "NO",
              ds.estimate.entries.size(), k);

  // sweep: trials distributed over the worker pool.
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.b = b;
  cfg.d = d;
  cfg.snr_db = {10.0, 25.0};
  cfg.trials = 25;
  cfg.alphabet_mode = AlphabetMode::Discrete;
  cfg.amplitude_kind = AmplitudeKind::FixedAlphabet;
  cfg.master_seed = 3;
  cfg.finalize();
  const double sweep_serial = best_seconds(3, [&] { (void)sweep(cfg, Execution::Serial); });
  const double sweep_parallel = best_seconds(3, [&] { (void)sweep(cfg, Execution::Parallel); });
  report("sweep (50 trials)", sweep_serial, sweep_parallel);
  return 0;
}
