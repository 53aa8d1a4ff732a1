#include "glcs/columns.hpp"

#include <cmath>
#include <stdexcept>

#include "glcs/rng.hpp"

namespace glcs {

ColumnGenerator::ColumnGenerator(const IndexCodec& codec, std::uint32_t c1, std::uint32_t c2,
                                 std::uint64_t column_seed)
    : codec_(&codec), c1_(c1), c2_(c2), seed_(column_seed) {
  if (c1 < 1 || c2 < 1) throw std::invalid_argument("columns: need c1 >= 1 and c2 >= 1");
}

void ColumnGenerator::rademacher_into(Index i, std::int8_t* out) const {
  for (std::uint32_t t = 0; t < c2_; ++t)
    out[t] = rng::rademacher(rng::hash(seed_, rng::kColumnStream, i, t));
}

std::vector<std::int8_t> ColumnGenerator::rademacher_block(Index i) const {
  std::vector<std::int8_t> out(c2_);
  rademacher_into(i, out.data());
  return out;
}

std::vector<std::int8_t> ColumnGenerator::column(Index i) const {
  std::vector<std::int8_t> out(c());
  codec_->encode_into(i, out.data());
  for (std::uint32_t t = 0; t < c1_; ++t) out[c0() + t] = 1;
  rademacher_into(i, out.data() + c0() + c1_);
  return out;
}

double noise_at(std::uint64_t noise_seed, std::uint32_t bin, std::uint32_t pos) {
  return rng::gaussian(rng::hash(noise_seed, rng::kNoiseStream, bin, 2ull * pos),
                       rng::hash(noise_seed, rng::kNoiseStream, bin, 2ull * pos + 1));
}

namespace {

struct SupportData {
  std::vector<Index> indices;                      // ascending
  std::vector<double> values;                      // aligned with indices
  std::vector<std::vector<std::int8_t>> columns;   // aligned with indices
  std::vector<std::vector<std::uint32_t>> bin_members;  // bin -> support slots, ascending
};

SupportData gather_support(const SparseSignal& x, const BinHasher& hasher,
                           const ColumnGenerator& gen) {
  SupportData s;
  s.indices.reserve(x.entries.size());
  s.values.reserve(x.entries.size());
  for (const auto& [i, v] : x.entries) {  // std::map iterates ascending
    s.indices.push_back(i);
    s.values.push_back(v);
  }
  s.columns.resize(s.indices.size());
  for (std::size_t slot = 0; slot < s.indices.size(); ++slot)
    s.columns[slot] = gen.column(s.indices[slot]);
  s.bin_members.resize(hasher.b());
  for (std::uint32_t slot = 0; slot < s.indices.size(); ++slot)
    for (std::uint32_t bin : hasher.bins_of(s.indices[slot]))
      s.bin_members[bin].push_back(slot);
  return s;
}

void fill_bin(BinMeasurement& bin, std::uint32_t bin_index, const SupportData& s,
              std::uint64_t noise_seed, double sigma, std::uint32_t c) {
  bin.y.assign(c, 0.0);
  for (std::uint32_t slot : s.bin_members[bin_index]) {
    const double v = s.values[slot];
    const auto& col = s.columns[slot];
    for (std::uint32_t t = 0; t < c; ++t) bin.y[t] += v * col[t];
  }
  if (sigma > 0.0)
    for (std::uint32_t t = 0; t < c; ++t) bin.y[t] += sigma * noise_at(noise_seed, bin_index, t);
}

}  // namespace

MeasurementSet measure(const SparseSignal& x, const BinHasher& hasher, const ColumnGenerator& gen,
                       std::uint64_t noise_seed, double sigma2, Execution exec) {
  if (sigma2 < 0.0) throw std::invalid_argument("measure: sigma2 < 0");
  const double sigma = std::sqrt(sigma2);
  const std::uint32_t b = hasher.b();
  const std::uint32_t c = gen.c();

  const SupportData s = gather_support(x, hasher, gen);

  MeasurementSet out;
  out.bins.resize(b);
  for (auto& bin : out.bins) {
    bin.c0 = gen.c0();
    bin.c1 = gen.c1();
    bin.c2 = gen.c2();
  }

  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(b); ++j)
      fill_bin(out.bins[j], static_cast<std::uint32_t>(j), s, noise_seed, sigma, c);
  } else {
    // Serial reference path.
    for (std::uint32_t j = 0; j < b; ++j) fill_bin(out.bins[j], j, s, noise_seed, sigma, c);
  }
  return out;
}

std::vector<double> dense_odot(const std::vector<std::vector<std::uint8_t>>& H,
                               const ColumnGenerator& gen) {
  const std::size_t b = H.size();
  if (b == 0) throw std::invalid_argument("dense_odot: empty H");
  const std::size_t n = H[0].size();
  const std::size_t c = gen.c();
  const std::size_t m = b * c;
  if (m * n > 100'000'000ull) throw std::invalid_argument("dense_odot: m*n exceeds guard");

  std::vector<double> A(m * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    const auto col = gen.column(i);
    for (std::size_t j = 0; j < b; ++j) {
      if (H[j].size() != n) throw std::invalid_argument("dense_odot: ragged H");
      if (!H[j][i]) continue;
      for (std::size_t t = 0; t < c; ++t) A[(j * c + t) * n + i] = col[t];
    }
  }
  return A;
}

std::vector<double> dense_matrix(const BinHasher& hasher, const ColumnGenerator& gen, Index n) {
  const std::uint64_t m = static_cast<std::uint64_t>(hasher.b()) * gen.c();
  if (m * n > 100'000'000ull) throw std::invalid_argument("dense_matrix: m*n exceeds guard");
  std::vector<std::vector<std::uint8_t>> H(hasher.b(), std::vector<std::uint8_t>(n, 0));
  for (Index i = 0; i < n; ++i)
    for (std::uint32_t bin : hasher.bins_of(i)) H[bin][i] = 1;
  return dense_odot(H, gen);
}

void subtract_contribution(BinMeasurement& bin, double value, Index i,
                           const ColumnGenerator& gen) {
  const auto col = gen.column(i);
  for (std::size_t t = 0; t < col.size(); ++t) bin.y[t] -= value * col[t];
}

}  // namespace glcs
