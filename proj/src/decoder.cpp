#include "glcs/decoder.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace glcs {

namespace {

double block_energy(std::span<const double> v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

double numeric_slack(std::uint32_t c2) { return 1e-9 * static_cast<double>(c2); }

}  // namespace

bool zeroton_test(const BinMeasurement& bin, const SchemeParams& params) {
  const double thr = static_cast<double>(params.c2) * (1.0 + params.tau) * params.sigma2 +
                     numeric_slack(params.c2);
  return block_energy(bin.dot()) <= thr;
}

double estimate_value_discrete(std::span<const double> ydot, std::span<const std::int8_t> gdot,
                               std::span<const double> alphabet) {
  if (alphabet.empty()) throw std::invalid_argument("estimate_value_discrete: empty alphabet");
  const double c2 = static_cast<double>(ydot.size());
  double corr = 0.0;
  for (std::size_t t = 0; t < ydot.size(); ++t) corr += gdot[t] * ydot[t];
  // ||y - z g||^2 = ||y||^2 - 2 z corr + z^2 c2; minimize the z-dependent part.
  // Scanning ascending with strict improvement sends ties to the smaller value.
  double best = alphabet[0];
  double best_obj = alphabet[0] * alphabet[0] * c2 - 2.0 * alphabet[0] * corr;
  for (std::size_t a = 1; a < alphabet.size(); ++a) {
    const double obj = alphabet[a] * alphabet[a] * c2 - 2.0 * alphabet[a] * corr;
    if (obj < best_obj) {
      best_obj = obj;
      best = alphabet[a];
    }
  }
  return best;
}

SingletonTestResult singleton_test(const BinMeasurement& bin, const SchemeParams& params,
                                   const IndexCodec& codec, const ColumnGenerator& gen,
                                   const BinHasher& hasher, std::uint32_t bin_index) {
  SingletonTestResult res;
  if (zeroton_test(bin, params)) {
    res.cls = BinClass::Zeroton;
    return res;
  }
  res.cls = BinClass::Multiton;

  // Sign estimate; the sign block of every column is all ones.
  double bar_sum = 0.0;
  for (double v : bin.bar()) bar_sum += v;
  const int s = sgn(bar_sum);

  // Index estimate: decode the sign-compensated coded block.
  const auto tilde = bin.tilde();
  std::vector<std::int8_t> obs(params.c0);
  for (std::uint32_t t = 0; t < params.c0; ++t)
    obs[t] = static_cast<std::int8_t>(sgn(s * tilde[t]));
  const auto idx = codec.decode(obs);
  if (!idx) return res;
  if (!hasher.contains(*idx, bin_index)) return res;

  // Verification against the Rademacher block.
  const auto gdot = gen.rademacher_block(*idx);
  const auto ydot = bin.dot();
  double corr = 0.0;
  for (std::uint32_t t = 0; t < params.c2; ++t) corr += gdot[t] * ydot[t];
  const double zp = corr / static_cast<double>(params.c2);
  double resid = 0.0;
  for (std::uint32_t t = 0; t < params.c2; ++t) {
    const double r = ydot[t] - zp * gdot[t];
    resid += r * r;
  }
  const double thr = static_cast<double>(params.c2 - 1) * (1.0 + params.tau) * params.sigma2 +
                     numeric_slack(params.c2);
  if (resid > thr) return res;

  double value;
  if (params.alphabet_mode == AlphabetMode::Discrete) {
    value = estimate_value_discrete(ydot, gdot, params.alphabet);
  } else {
    const auto col = gen.column(*idx);
    double full = 0.0;
    for (std::uint32_t t = 0; t < gen.c(); ++t) full += col[t] * bin.y[t];
    value = full / static_cast<double>(gen.c());
  }
  if (value == 0.0) return res;  // nothing to subtract; keep the bin in the pool

  res.cls = BinClass::Singleton;
  res.index = *idx;
  res.value = value;
  res.sign = s;
  res.point_estimate = zp;
  return res;
}

DecodeResult peel_decode(MeasurementSet meas, const SchemeParams& params, const IndexCodec& codec,
                         const ColumnGenerator& gen, const BinHasher& hasher, Execution exec) {
  const std::uint32_t b = params.b;
  if (meas.bins.size() != b) throw std::invalid_argument("peel_decode: bin count != params.b");
  if (gen.c0() != params.c0 || gen.c1() != params.c1 || gen.c2() != params.c2)
    throw std::invalid_argument("peel_decode: column generator dims disagree with params");
  if (codec.n() != params.n) throw std::invalid_argument("peel_decode: codec range != params.n");

  DecodeResult out;
  out.estimate = SparseSignal(params.n);

  // Seeding pass: test every bin. The tests are independent, so the parallel
  // kernel and the serial reference agree bin for bin.
  std::vector<SingletonTestResult> seed(b);
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(b); ++j)
      seed[j] = singleton_test(meas.bins[j], params, codec, gen, hasher,
                               static_cast<std::uint32_t>(j));
  } else {
    for (std::uint32_t j = 0; j < b; ++j)
      seed[j] = singleton_test(meas.bins[j], params, codec, gen, hasher, j);
  }
  out.singleton_tests += b;

  std::vector<char> removed(b, 0);
  std::unordered_map<Index, std::uint32_t> depth;  // recovered index -> iteration
  std::deque<Index> worklist;

  auto declare = [&](std::uint32_t bin, const SingletonTestResult& r, std::uint32_t t) {
    removed[bin] = 1;
    if (depth.count(r.index)) return;  // already recovered through another bin
    depth.emplace(r.index, t);
    out.estimate.set(r.index, r.value);
    out.trace.push_back({t, r.index, bin, r.value});
    out.iterations = std::max(out.iterations, t);
    worklist.push_back(r.index);
  };

  for (std::uint32_t j = 0; j < b; ++j)
    if (seed[j].cls == BinClass::Singleton) declare(j, seed[j], 1);

  while (!worklist.empty()) {
    const Index i = worklist.front();
    worklist.pop_front();
    const std::uint32_t t = depth.at(i);
    const double xi = out.estimate.entries.at(i);
    for (std::uint32_t j : hasher.bins_of(i)) {
      if (removed[j]) continue;
      subtract_contribution(meas.bins[j], xi, i, gen);
      out.subtractions.push_back({i, j});
      const auto r = singleton_test(meas.bins[j], params, codec, gen, hasher, j);
      ++out.singleton_tests;
      if (r.cls == BinClass::Singleton) declare(j, r, t + 1);
    }
  }

  for (std::uint32_t j = 0; j < b; ++j)
    if (!removed[j] && !zeroton_test(meas.bins[j], params)) ++out.unresolved_bins;
  return out;
}

}  // namespace glcs
