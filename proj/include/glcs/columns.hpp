#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glcs/graph.hpp"
#include "glcs/parallel.hpp"
#include "glcs/scheme.hpp"
#include "glcs/subcode.hpp"

namespace glcs {

/// On-demand generation of measurement columns g_i = [coded index bits,
/// all-ones sign block, seeded Rademacher verification block]. Any single
/// entry is computable in O(1); nothing is stored per index.
class ColumnGenerator {
 public:
  ColumnGenerator(const IndexCodec& codec, std::uint32_t c1, std::uint32_t c2,
                  std::uint64_t column_seed);

  std::uint32_t c0() const { return codec_->c0(); }
  std::uint32_t c1() const { return c1_; }
  std::uint32_t c2() const { return c2_; }
  std::uint32_t c() const { return c0() + c1_ + c2_; }
  std::uint64_t seed() const { return seed_; }
  const IndexCodec& codec() const { return *codec_; }

  std::vector<std::int8_t> column(Index i) const;
  std::vector<std::int8_t> rademacher_block(Index i) const;
  void rademacher_into(Index i, std::int8_t* out) const;

 private:
  const IndexCodec* codec_;
  std::uint32_t c1_;
  std::uint32_t c2_;
  std::uint64_t seed_;
};

/// One bin's c-dimensional measurement with views onto its three blocks.
struct BinMeasurement {
  std::vector<double> y;
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;
  std::uint32_t c2 = 0;

  std::span<const double> tilde() const { return {y.data(), c0}; }
  std::span<const double> bar() const { return {y.data() + c0, c1}; }
  std::span<const double> dot() const { return {y.data() + c0 + c1, c2}; }
};

struct MeasurementSet {
  std::vector<BinMeasurement> bins;
};

/// Unit-variance noise entry shared by the measurement operator, the dense
/// oracle and the error-propagation analysis.
double noise_at(std::uint64_t noise_seed, std::uint32_t bin, std::uint32_t pos);

/// y_j = sum over support of H_{ij} x_i g_i + z_j, computed bin-wise in
/// O(|support| d c + b c) independent of n. Serial and Parallel produce
/// bit-identical results (fixed ascending summation order per bin).
MeasurementSet measure(const SparseSignal& x, const BinHasher& hasher, const ColumnGenerator& gen,
                       std::uint64_t noise_seed, double sigma2,
                       Execution exec = Execution::Parallel);

/// Block layout of H (*) G for an explicit 0/1 matrix H given in row-major
/// b-by-n form; returns the m-by-n matrix row-major.
std::vector<double> dense_odot(const std::vector<std::vector<std::uint8_t>>& H,
                               const ColumnGenerator& gen);

/// Materializes the full measurement matrix for small n (guard: m*n <= 1e8).
std::vector<double> dense_matrix(const BinHasher& hasher, const ColumnGenerator& gen, Index n);

/// bin.y -= value * column(i), in place.
void subtract_contribution(BinMeasurement& bin, double value, Index i,
                           const ColumnGenerator& gen);

}  // namespace glcs
