#include "glcs/scheme.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace glcs {

int sgn(double x) noexcept { return x >= 0.0 ? 1 : -1; }

std::vector<std::int8_t> index_bits(Index i, unsigned nbits) {
  if (nbits > 63) throw std::invalid_argument("index_bits: nbits > 63");
  if (nbits < 63 && (i >> nbits) != 0)
    throw std::out_of_range("index_bits: index does not fit in nbits");
  std::vector<std::int8_t> out(nbits);
  for (unsigned q = 0; q < nbits; ++q) {
    const bool bit = (i >> (nbits - 1 - q)) & 1u;
    out[q] = bit ? std::int8_t{-1} : std::int8_t{1};
  }
  return out;
}

Index bits_index(std::span<const std::int8_t> v) {
  if (v.size() > 63) throw std::invalid_argument("bits_index: more than 63 bits");
  Index i = 0;
  for (std::int8_t s : v) i = (i << 1) | (s < 0 ? 1u : 0u);
  return i;
}

double q_function(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

unsigned bits_for(Index n) noexcept {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

void SparseSignal::set(Index i, double value) {
  if (value == 0.0) throw std::invalid_argument("SparseSignal: zero value");
  if (i >= n) throw std::out_of_range("SparseSignal: index out of range");
  entries[i] = value;
}

double SparseSignal::norm2() const {
  double s = 0.0;
  for (const auto& [i, v] : entries) s += v * v;
  return s;
}

void SchemeParams::validate() const {
  if (n < 2) throw std::invalid_argument("params: n must be >= 2");
  if (k < 1 || k > n) throw std::invalid_argument("params: need 1 <= k <= n");
  if (d < 1 || d > b) throw std::invalid_argument("params: need 1 <= d <= b");
  if (c0 < nbits()) throw std::invalid_argument("params: c0 < ceil(log2 n)");
  if (c1 < 1 || c2 < 1) throw std::invalid_argument("params: need c1 >= 1 and c2 >= 1");
  if (sigma2 < 0.0) throw std::invalid_argument("params: sigma2 < 0");
  if (!(tau > 0.0)) throw std::invalid_argument("params: tau must be > 0");
  if (!(min_amplitude > 0.0)) throw std::invalid_argument("params: min_amplitude must be > 0");
  if (alphabet_mode == AlphabetMode::Discrete) {
    if (alphabet.empty()) throw std::invalid_argument("params: empty discrete alphabet");
    if (!std::is_sorted(alphabet.begin(), alphabet.end()))
      throw std::invalid_argument("params: alphabet must be sorted ascending");
    for (std::size_t t = 0; t < alphabet.size(); ++t) {
      if (alphabet[t] == 0.0) throw std::invalid_argument("params: alphabet contains zero");
      if (t > 0 && alphabet[t] == alphabet[t - 1])
        throw std::invalid_argument("params: alphabet values must be distinct");
    }
  }
}

}  // namespace glcs
