#include "glcs/subcode.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

#include "glcs/rng.hpp"

namespace glcs {

double bsc_crossover(double amplitude, double noise_std) {
  if (!(noise_std > 0.0)) throw std::invalid_argument("bsc_crossover: noise_std must be > 0");
  return q_function(amplitude / noise_std);
}

namespace {
constexpr unsigned kColumnWeight = 3;
}

RegularLdpcCode::RegularLdpcCode(unsigned n_info, unsigned n_code, std::uint64_t seed,
                                 unsigned max_iters)
    : nbits_(n_info), c0_(n_code), checks_(n_code - n_info), max_iters_(max_iters) {
  if (n_info == 0 || n_info > 63) throw std::invalid_argument("ldpc: need 1 <= n_info <= 63");
  if (n_code < n_info + 4) throw std::invalid_argument("ldpc: need n_code >= n_info + 4");
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    if (try_build(rng::hash(seed, rng::kCodeStream, attempt))) return;
  }
  throw std::runtime_error("ldpc: could not build a full-rank parity-check matrix");
}

bool RegularLdpcCode::try_build(std::uint64_t seed) {
  const unsigned r = checks_;
  const unsigned w = kColumnWeight;

  // Column-regular graph with row loads balanced to ceil/floor of the mean,
  // avoiding 4-cycles while candidates allow it.
  std::vector<std::uint32_t> cap(r), load(r, 0);
  const unsigned total = w * c0_;
  for (unsigned row = 0; row < r; ++row) cap[row] = total / r + (row < total % r ? 1 : 0);

  std::vector<std::vector<std::uint32_t>> col_rows(c0_);
  std::unordered_set<std::uint64_t> used_pairs;
  auto pair_key = [r](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * r + b;
  };

  std::vector<std::uint32_t> order(r);
  for (std::uint32_t v = 0; v < c0_; ++v) {
    auto& picked = col_rows[v];

    // Seeded shuffle, then greedy scans: first a row that keeps the load
    // balanced and creates no 4-cycle, then load-balanced only, then any row.
    for (std::uint32_t t = 0; t < r; ++t) order[t] = t;
    for (std::uint32_t t = r; t > 1; --t)
      std::swap(order[t - 1], order[rng::bounded(rng::hash(seed, v, t), t)]);

    auto taken = [&](std::uint32_t row) {
      return std::find(picked.begin(), picked.end(), row) != picked.end();
    };
    auto makes_cycle = [&](std::uint32_t row) {
      for (std::uint32_t p : picked)
        if (used_pairs.count(pair_key(p, row))) return true;
      return false;
    };
    while (picked.size() < w) {
      std::uint32_t choice = r;
      for (std::uint32_t row : order)
        if (!taken(row) && load[row] < cap[row] && !makes_cycle(row)) { choice = row; break; }
      if (choice == r)
        for (std::uint32_t row : order)
          if (!taken(row) && load[row] < cap[row]) { choice = row; break; }
      if (choice == r)
        for (std::uint32_t row : order)
          if (!taken(row)) { choice = row; break; }
      if (choice == r) return false;
      picked.push_back(choice);
    }
    std::sort(picked.begin(), picked.end());
    for (std::uint32_t a = 0; a < w; ++a) {
      load[picked[a]] += 1;
      for (std::uint32_t bidx = a + 1; bidx < w; ++bidx)
        used_pairs.insert(pair_key(picked[a], picked[bidx]));
    }
  }

  // Gaussian elimination over GF(2); require full rank so that exactly
  // n_info columns stay free.
  const unsigned words = (c0_ + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(r, std::vector<std::uint64_t>(words, 0));
  for (std::uint32_t v = 0; v < c0_; ++v)
    for (std::uint32_t row : col_rows[v]) rows[row][v / 64] |= 1ull << (v % 64);

  auto get_bit = [&](unsigned row, unsigned col) {
    return (rows[row][col / 64] >> (col % 64)) & 1ull;
  };
  std::vector<std::uint32_t> pivots;
  unsigned rank = 0;
  for (unsigned col = 0; col < c0_ && rank < r; ++col) {
    unsigned pivot = rank;
    while (pivot < r && !get_bit(pivot, col)) ++pivot;
    if (pivot == r) continue;
    std::swap(rows[pivot], rows[rank]);
    for (unsigned other = 0; other < r; ++other) {
      if (other != rank && get_bit(other, col))
        for (unsigned wd = 0; wd < words; ++wd) rows[other][wd] ^= rows[rank][wd];
    }
    pivots.push_back(col);
    ++rank;
  }
  if (rank < r) return false;

  // Column permutation: free columns become the information prefix, pivot
  // columns the parity suffix. Adjacency keeps the original regular graph.
  std::vector<std::uint32_t> old2new(c0_);
  std::vector<bool> is_pivot(c0_, false);
  for (std::uint32_t p : pivots) is_pivot[p] = true;
  std::uint32_t next_info = 0, next_parity = nbits_;
  for (std::uint32_t v = 0; v < c0_; ++v) old2new[v] = is_pivot[v] ? next_parity++ : next_info++;

  check_cols_.assign(r, {});
  col_checks_.assign(c0_, {});
  for (std::uint32_t v = 0; v < c0_; ++v) {
    const auto nv = old2new[v];
    for (std::uint32_t row : col_rows[v]) {
      check_cols_[row].push_back(nv);
      col_checks_[nv].push_back(row);
    }
  }
  for (auto& cols : check_cols_) std::sort(cols.begin(), cols.end());

  // Row `rho` of the reduced system pins parity position nbits + rho to a
  // parity of information positions.
  parity_mask_.assign(r, 0);
  for (unsigned rho = 0; rho < r; ++rho) {
    std::uint64_t mask = 0;
    for (std::uint32_t v = 0; v < c0_; ++v) {
      if (!is_pivot[v] && get_bit(rho, v)) mask |= 1ull << old2new[v];
    }
    parity_mask_[rho] = mask;
  }
  return true;
}

void RegularLdpcCode::encode_bits(std::uint64_t info_word, std::uint8_t* out) const {
  for (unsigned q = 0; q < nbits_; ++q) out[q] = (info_word >> q) & 1u;
  for (unsigned rho = 0; rho < checks_; ++rho)
    out[nbits_ + rho] = static_cast<std::uint8_t>(std::popcount(parity_mask_[rho] & info_word) & 1);
}

bool RegularLdpcCode::is_codeword(std::span<const std::uint8_t> bits) const {
  for (const auto& cols : check_cols_) {
    unsigned par = 0;
    for (std::uint32_t v : cols) par ^= bits[v];
    if (par) return false;
  }
  return true;
}

std::optional<std::uint64_t> RegularLdpcCode::decode_bits(
    std::span<const std::uint8_t> bits) const {
  std::vector<std::uint8_t> est(bits.begin(), bits.end());
  std::vector<std::uint8_t> syndrome(checks_, 0);
  auto refresh_syndrome = [&]() {
    bool any = false;
    for (unsigned row = 0; row < checks_; ++row) {
      unsigned par = 0;
      for (std::uint32_t v : check_cols_[row]) par ^= est[v];
      syndrome[row] = static_cast<std::uint8_t>(par);
      any |= par != 0;
    }
    return any;
  };

  bool violated = refresh_syndrome();
  for (unsigned iter = 0; iter < max_iters_ && violated; ++iter) {
    // Gallager-style bit flipping: a bit qualifies when a strict majority of
    // its checks is unsatisfied; among qualifying bits only those with the
    // largest unsatisfied count flip, which keeps short 4-cycles from
    // oscillating at these block lengths.
    std::vector<unsigned> unsat(c0_, 0);
    unsigned worst = 0;
    for (std::uint32_t v = 0; v < c0_; ++v) {
      for (std::uint32_t row : col_checks_[v]) unsat[v] += syndrome[row];
      if (2 * unsat[v] > col_checks_[v].size()) worst = std::max(worst, unsat[v]);
    }
    if (worst == 0) break;  // stalled
    for (std::uint32_t v = 0; v < c0_; ++v)
      if (unsat[v] == worst && 2 * unsat[v] > col_checks_[v].size()) est[v] ^= 1u;
    violated = refresh_syndrome();
  }
  if (violated) return std::nullopt;

  std::uint64_t info = 0;
  for (unsigned q = 0; q < nbits_; ++q) info |= static_cast<std::uint64_t>(est[q]) << q;
  return info;
}

IndexCodec::IndexCodec(CodecKind kind, Index n, std::uint32_t c0, std::uint64_t code_seed,
                       std::uint32_t max_iters)
    : kind_(kind), n_(n), nbits_(bits_for(n)), c0_(c0) {
  if (n < 2) throw std::invalid_argument("codec: n must be >= 2");
  if (c0 < nbits_) throw std::invalid_argument("codec: c0 < ceil(log2 n)");
  if (kind == CodecKind::Repetition) {
    // Symbol-major layout; the first (c0 mod nbits) symbols get one extra copy.
    group_offset_.resize(nbits_ + 1);
    const std::uint32_t base = c0_ / nbits_, rem = c0_ % nbits_;
    group_offset_[0] = 0;
    for (unsigned q = 0; q < nbits_; ++q)
      group_offset_[q + 1] = group_offset_[q] + base + (q < rem ? 1 : 0);
  } else {
    ldpc_ = std::make_unique<RegularLdpcCode>(nbits_, c0, code_seed, max_iters);
  }
}

void IndexCodec::encode_into(Index i, std::int8_t* out) const {
  if (i >= n_) throw std::out_of_range("codec: index out of range");
  if (kind_ == CodecKind::Repetition) {
    for (unsigned q = 0; q < nbits_; ++q) {
      const bool bit = (i >> (nbits_ - 1 - q)) & 1u;
      const std::int8_t sym = bit ? std::int8_t{-1} : std::int8_t{1};
      for (std::uint32_t t = group_offset_[q]; t < group_offset_[q + 1]; ++t) out[t] = sym;
    }
  } else {
    std::uint64_t word = 0;
    for (unsigned q = 0; q < nbits_; ++q)
      word |= (static_cast<std::uint64_t>(i >> (nbits_ - 1 - q)) & 1u) << q;
    std::vector<std::uint8_t> bits(c0_);
    ldpc_->encode_bits(word, bits.data());
    for (std::uint32_t t = 0; t < c0_; ++t) out[t] = bits[t] ? std::int8_t{-1} : std::int8_t{1};
  }
}

std::vector<std::int8_t> IndexCodec::encode(Index i) const {
  std::vector<std::int8_t> out(c0_);
  encode_into(i, out.data());
  return out;
}

std::optional<Index> IndexCodec::decode(std::span<const std::int8_t> obs) const {
  if (obs.size() != c0_) throw std::invalid_argument("codec: observation length != c0");
  Index i = 0;
  if (kind_ == CodecKind::Repetition) {
    for (unsigned q = 0; q < nbits_; ++q) {
      int sum = 0;
      for (std::uint32_t t = group_offset_[q]; t < group_offset_[q + 1]; ++t) sum += obs[t];
      // Majority per symbol group; ties resolve to +1 (bit 0).
      i = (i << 1) | (sum < 0 ? 1u : 0u);
    }
  } else {
    std::vector<std::uint8_t> bits(c0_);
    for (std::uint32_t t = 0; t < c0_; ++t) bits[t] = obs[t] < 0 ? 1u : 0u;
    const auto word = ldpc_->decode_bits(bits);
    if (!word) return std::nullopt;
    for (unsigned q = 0; q < nbits_; ++q) i = (i << 1) | ((*word >> q) & 1u);
  }
  if (i >= n_) return std::nullopt;
  return i;
}

}  // namespace glcs
