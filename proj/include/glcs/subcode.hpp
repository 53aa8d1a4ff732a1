#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "glcs/scheme.hpp"

namespace glcs {

/// Analytical per-symbol sign-flip probability of a +/-1 symbol with
/// amplitude `amplitude` observed in Gaussian noise of std `noise_std`.
double bsc_crossover(double amplitude, double noise_std);

/// Regular random LDPC code over GF(2) with a systematic encoder derived by
/// Gaussian elimination and a hard-decision parallel bit-flip decoder.
/// Codewords are laid out [information bits | parity bits].
class RegularLdpcCode {
 public:
  RegularLdpcCode(unsigned n_info, unsigned n_code, std::uint64_t seed, unsigned max_iters);

  unsigned n_info() const { return nbits_; }
  unsigned n_code() const { return c0_; }
  unsigned n_checks() const { return checks_; }

  /// info_word holds codeword positions 0..n_info-1 in its low bits.
  void encode_bits(std::uint64_t info_word, std::uint8_t* out) const;
  std::optional<std::uint64_t> decode_bits(std::span<const std::uint8_t> bits) const;
  bool is_codeword(std::span<const std::uint8_t> bits) const;

  const std::vector<std::vector<std::uint32_t>>& check_cols() const { return check_cols_; }
  const std::vector<std::vector<std::uint32_t>>& col_checks() const { return col_checks_; }

 private:
  bool try_build(std::uint64_t seed);

  unsigned nbits_;
  unsigned c0_;
  unsigned checks_;
  unsigned max_iters_;
  std::vector<std::vector<std::uint32_t>> check_cols_;  // parity check -> columns
  std::vector<std::vector<std::uint32_t>> col_checks_;  // column -> parity checks
  std::vector<std::uint64_t> parity_mask_;  // parity row -> mask over info positions
};

/// Per-bin index code: maps an index to the +/-1 codeword of its binary
/// representation and decodes hard sign observations.
class IndexCodec {
 public:
  IndexCodec(CodecKind kind, Index n, std::uint32_t c0, std::uint64_t code_seed,
             std::uint32_t max_iters = 50);

  CodecKind kind() const { return kind_; }
  unsigned nbits() const { return nbits_; }
  std::uint32_t c0() const { return c0_; }
  double rate() const { return static_cast<double>(nbits_) / c0_; }
  Index n() const { return n_; }

  std::vector<std::int8_t> encode(Index i) const;
  void encode_into(Index i, std::int8_t* out) const;

  /// Decodes a +/-1 observation of length c0. Returns nullopt when parity
  /// checks stay violated or the decoded index is >= n; callers treat that
  /// as a multiton bin.
  std::optional<Index> decode(std::span<const std::int8_t> obs) const;

  const RegularLdpcCode* ldpc() const { return ldpc_.get(); }

 private:
  CodecKind kind_;
  Index n_;
  unsigned nbits_;
  std::uint32_t c0_;
  std::vector<std::uint32_t> group_offset_;  // repetition: nbits+1 offsets into the codeword
  std::unique_ptr<RegularLdpcCode> ldpc_;
};

}  // namespace glcs
