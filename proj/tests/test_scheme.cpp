#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "glcs/rng.hpp"
#include "glcs/scheme.hpp"

using namespace glcs;

TEST_SUITE_BEGIN("scheme");

TEST_CASE("sgn convention") {
  CHECK(sgn(3.2) == 1);
  CHECK(sgn(0.0) == 1);
  CHECK(sgn(-0.5) == -1);
  CHECK(sgn(-0.0) == 1);  // -0.0 >= 0
}

TEST_CASE("index_bits examples") {
  CHECK(index_bits(2, 3) == std::vector<std::int8_t>{1, -1, 1});
  CHECK(index_bits(0, 4) == std::vector<std::int8_t>{1, 1, 1, 1});
  CHECK(index_bits(7, 3) == std::vector<std::int8_t>{-1, -1, -1});
  CHECK_THROWS_AS(index_bits(8, 3), std::out_of_range);
}

TEST_CASE("bits_index examples") {
  const std::vector<std::int8_t> two{1, -1, 1};
  CHECK(bits_index(two) == 2);
  const std::vector<std::int8_t> zero{1, 1};
  CHECK(bits_index(zero) == 0);
  const std::vector<std::int8_t> seven{-1, -1, -1};
  CHECK(bits_index(seven) == 7);
}

TEST_CASE("index_bits and bits_index are mutually inverse") {
  for (unsigned nbits = 1; nbits <= 12; ++nbits) {
    for (Index i = 0; i < (Index{1} << nbits); ++i) {
      REQUIRE(bits_index(index_bits(i, nbits)) == i);
    }
  }
}

TEST_CASE("q_function values") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(q_function(40.0) < 1e-300);
  CHECK(std::abs(q_function(1.0) - 0.158655) < 1e-6);
}

TEST_CASE("q_function symmetry and monotonicity") {
  for (double x = -6.0; x <= 6.0; x += 0.25)
    CHECK(std::abs(q_function(x) + q_function(-x) - 1.0) < 1e-12);
  for (double x = 0.0; x < 8.0; x += 0.5) CHECK(q_function(x) > q_function(x + 0.5));
}

TEST_CASE("bits_for") {
  CHECK(bits_for(2) == 1);
  CHECK(bits_for(3) == 2);
  CHECK(bits_for(65536) == 16);
  CHECK(bits_for(10'000'000'000ull) == 34);
}

TEST_CASE("SparseSignal invariants") {
  SparseSignal x(16);
  x.set(3, 2.5);
  x.set(3, -1.0);  // overwrite
  CHECK(x.entries.at(3) == -1.0);
  CHECK_THROWS_AS(x.set(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(x.set(16, 1.0), std::out_of_range);
  CHECK(x.norm2() == doctest::Approx(1.0));
}

TEST_CASE("SchemeParams validation") {
  SchemeParams p;
  p.n = 65536;
  p.k = 10;
  p.b = 30;
  p.d = 3;
  p.c0 = 32;
  p.c1 = 16;
  p.c2 = 32;
  CHECK_NOTHROW(p.validate());

  SchemeParams bad = p;
  bad.c0 = 15;  // below ceil(log2 n) = 16
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.d = 31;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = p;
  bad.alphabet_mode = AlphabetMode::Discrete;
  bad.alphabet = {-1.0, 0.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.alphabet = {-1.0, 1.0, 2.0};
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("counter rng determinism and moments") {
  CHECK(rng::hash(1, 2, 3) == rng::hash(1, 2, 3));
  CHECK(rng::hash(1, 2, 3) != rng::hash(1, 3, 2));
  CHECK(rng::hash(1, rng::kGraphStream, 5) != rng::hash(1, rng::kColumnStream, 5));

  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int t = 0; t < n; ++t) {
    const double g = rng::gaussian(rng::hash(42, 0, t), rng::hash(42, 1, t));
    sum += g;
    sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_SUITE_END();
