#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace glcs {

using Index = std::uint64_t;

enum class AlphabetMode { Discrete, Arbitrary };
enum class CodecKind { Repetition, RegularLdpc };

/// Sign convention used throughout: sgn(0) = +1.
int sgn(double x) noexcept;

/// MSB-first binary representation of i with bits 0/1 mapped to +1/-1.
std::vector<std::int8_t> index_bits(Index i, unsigned nbits);

/// Inverse of index_bits; entries must be +/-1.
Index bits_index(std::span<const std::int8_t> v);

/// Upper-tail probability of the standard normal distribution.
double q_function(double x) noexcept;

/// ceil(log2(n)) for n >= 1.
unsigned bits_for(Index n) noexcept;

/// k-sparse signal: a map from index to nonzero value.
struct SparseSignal {
  Index n = 0;
  std::map<Index, double> entries;

  SparseSignal() = default;
  explicit SparseSignal(Index dim) : n(dim) {}

  void set(Index i, double value);  // throws on zero value or i >= n
  std::size_t size() const { return entries.size(); }
  double norm2() const;
};

/// All scheme dimensions, thresholds and seeds. c = c0 + c1 + c2 is the
/// per-bin measurement length, m = b * c the total measurement count.
struct SchemeParams {
  Index n = 0;
  std::uint32_t k = 0;
  std::uint32_t b = 0;
  std::uint32_t d = 0;
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;
  std::uint32_t c2 = 0;
  double sigma2 = 0.0;
  double tau = 0.5;
  AlphabetMode alphabet_mode = AlphabetMode::Arbitrary;
  std::vector<double> alphabet;  // decoder alphabet for Discrete mode, sorted ascending
  double min_amplitude = 1.0;
  CodecKind code_kind = CodecKind::RegularLdpc;
  std::uint32_t code_max_iters = 50;
  std::uint64_t graph_seed = 0;
  std::uint64_t column_seed = 0;
  std::uint64_t code_seed = 0;
  std::uint64_t noise_seed = 0;

  std::uint32_t c() const { return c0 + c1 + c2; }
  std::uint64_t m() const { return static_cast<std::uint64_t>(b) * c(); }
  unsigned nbits() const { return bits_for(n); }

  void validate() const;  // throws std::invalid_argument on any broken invariant
};

}  // namespace glcs
