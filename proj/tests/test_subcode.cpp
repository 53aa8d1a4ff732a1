#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "glcs/rng.hpp"
#include "glcs/scheme.hpp"
#include "glcs/subcode.hpp"

using namespace glcs;

TEST_SUITE_BEGIN("subcode");

TEST_CASE("repetition encode layout") {
  const IndexCodec codec(CodecKind::Repetition, 4, 4, 0);  // nbits = 2, two copies each
  CHECK(codec.encode(2) == std::vector<std::int8_t>{-1, -1, 1, 1});
  CHECK_THROWS_AS(codec.encode(4), std::out_of_range);
}

TEST_CASE("repetition round trip, exhaustive") {
  const Index n = Index{1} << 10;
  const IndexCodec codec(CodecKind::Repetition, n, 30, 0);
  for (Index i = 0; i < n; ++i) {
    const auto obs = codec.encode(i);
    REQUIRE(codec.decode(obs) == i);
  }
}

TEST_CASE("repetition corrects up to 2 flips per symbol group") {
  const Index n = 16;  // nbits = 4, c0/nbits = 5
  const IndexCodec codec(CodecKind::Repetition, n, 20, 0);
  const Index i = 9;
  auto base = codec.encode(i);
  // Flip two positions in every group of five.
  for (unsigned g = 0; g < 4; ++g)
    for (unsigned f : {0u, 3u}) base[g * 5 + f] = static_cast<std::int8_t>(-base[g * 5 + f]);
  CHECK(codec.decode(base) == i);
}

TEST_CASE("repetition majority ties resolve to bit 0") {
  const Index n = 4;  // nbits = 2, groups of 2: a tie is possible
  const IndexCodec codec(CodecKind::Repetition, n, 4, 0);
  const std::vector<std::int8_t> tied{1, -1, -1, -1};  // group 0 tied, group 1 all-one bits
  CHECK(codec.decode(tied) == 1);  // tie -> +1 -> bit 0
}

TEST_CASE("ldpc parity check matrix properties") {
  const IndexCodec codec(CodecKind::RegularLdpc, Index{1} << 16, 32, 77);
  const auto* code = codec.ldpc();
  REQUIRE(code != nullptr);
  CHECK(code->n_info() == 16);
  CHECK(code->n_code() == 32);
  CHECK(code->n_checks() == 16);

  // Column-regular with weight 3; every codeword satisfies every check.
  for (const auto& checks : code->col_checks()) CHECK(checks.size() == 3);
  std::size_t total_edges = 0;
  for (const auto& cols : code->check_cols()) total_edges += cols.size();
  CHECK(total_edges == 3 * 32);

  std::vector<std::uint8_t> bits(32);
  for (std::uint64_t word : {0ull, 1ull, 0xffffull, 0xa5a5ull, 0x1234ull}) {
    code->encode_bits(word, bits.data());
    CHECK(code->is_codeword(bits));
  }
}

TEST_CASE("ldpc systematic prefix carries the index bits") {
  const Index n = 256;  // nbits = 8
  const IndexCodec codec(CodecKind::RegularLdpc, n, 16, 5);
  for (Index i = 0; i < n; ++i) {
    const auto cw = codec.encode(i);
    const auto bits = index_bits(i, 8);
    for (unsigned q = 0; q < 8; ++q) REQUIRE(cw[q] == bits[q]);
    REQUIRE(codec.decode(cw) == i);
  }
}

TEST_CASE("ldpc noiseless round trip at production size") {
  const Index n = 10'000'000'000ull;  // nbits = 34, c0 = 68
  const IndexCodec codec(CodecKind::RegularLdpc, n, 68, 123);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const Index i = rng::bounded(rng::hash(9, t), n);
    REQUIRE(codec.decode(codec.encode(i)) == i);
  }
}

TEST_CASE("ldpc decode failure on out-of-range index") {
  const Index n = 200;  // nbits = 8, codewords can decode to indices >= 200
  const IndexCodec codec(CodecKind::RegularLdpc, n, 16, 5);
  const IndexCodec wide(CodecKind::RegularLdpc, 256, 16, 5);  // same code, full range
  const auto cw = wide.encode(250);
  CHECK_FALSE(codec.decode(cw).has_value());
}

TEST_CASE("ldpc decode is deterministic") {
  const IndexCodec codec(CodecKind::RegularLdpc, Index{1} << 16, 32, 321);
  std::vector<std::int8_t> obs(32);
  for (unsigned t = 0; t < 32; ++t)
    obs[t] = rng::rademacher(rng::hash(5, t));
  const auto a = codec.decode(obs);
  const auto b = codec.decode(obs);
  CHECK(a == b);
}

TEST_CASE("ldpc beats uncoded transmission on a BSC") {
  // Rate 1/2, c0 = 64 versus sending the 32 raw bits at the same p = 0.02.
  const double p = 0.02;
  const Index n = Index{1} << 32;
  const IndexCodec codec(CodecKind::RegularLdpc, n, 64, 2025);
  std::uint32_t coded_errors = 0, uncoded_errors = 0;
  const std::uint32_t trials = 10000;
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    const Index i = rng::bounded(rng::hash(31, trial), n);
    auto obs = codec.encode(i);
    for (unsigned t = 0; t < 64; ++t)
      if (rng::unit(rng::hash(32, trial, t)) < p) obs[t] = static_cast<std::int8_t>(-obs[t]);
    if (codec.decode(obs) != i) ++coded_errors;

    bool flip = false;
    for (unsigned t = 0; t < 32; ++t)
      if (rng::unit(rng::hash(33, trial, t)) < p) flip = true;
    if (flip) ++uncoded_errors;
  }
  MESSAGE("coded block errors: ", coded_errors, ", uncoded: ", uncoded_errors);
  CHECK(coded_errors < uncoded_errors);
}

TEST_CASE("bsc_crossover values") {
  CHECK(bsc_crossover(3.0, 1e-9) == doctest::Approx(0.0));
  CHECK(bsc_crossover(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(std::abs(bsc_crossover(1.0, 1.0) - 0.158655) < 1e-6);
  CHECK_THROWS_AS(bsc_crossover(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("empirical sign flips match the analytical crossover") {
  // sgn(a + w) with w ~ N(0, s^2) flips with probability Q(a/s).
  const double a = 1.5, s = 1.0;
  const std::size_t symbols = 100000;
  std::size_t flips = 0;
  for (std::size_t t = 0; t < symbols; ++t) {
    const double w = s * rng::gaussian(rng::hash(71, 2 * t), rng::hash(71, 2 * t + 1));
    if (sgn(a + w) != 1) ++flips;
  }
  const double expected = bsc_crossover(a, s);
  const double se = std::sqrt(expected * (1.0 - expected) / symbols);
  CHECK(std::abs(static_cast<double>(flips) / symbols - expected) < 3.0 * se);
}

TEST_SUITE_END();
