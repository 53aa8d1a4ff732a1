#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glcs/columns.hpp"
#include "glcs/graph.hpp"
#include "glcs/parallel.hpp"
#include "glcs/scheme.hpp"
#include "glcs/subcode.hpp"

namespace glcs {

enum class BinClass : std::uint8_t { Zeroton, Singleton, Multiton };

struct SingletonTestResult {
  BinClass cls = BinClass::Multiton;
  Index index = 0;
  double value = 0.0;
  int sign = 1;
  double point_estimate = 0.0;  // z' from the verification block
};

struct TraceEntry {
  std::uint32_t iteration = 0;  // 1 = seeding pass, then BFS depth over the worklist
  Index index = 0;
  std::uint32_t bin = 0;  // the bin this index was recovered from
  double value = 0.0;
};

struct Subtraction {
  Index index = 0;
  std::uint32_t bin = 0;
};

struct DecodeResult {
  SparseSignal estimate;
  std::uint32_t iterations = 0;
  std::vector<TraceEntry> trace;            // recovery order
  std::vector<Subtraction> subtractions;    // peel-off events, in order
  std::uint32_t unresolved_bins = 0;        // leftover bins that are not zerotons
  std::uint64_t singleton_tests = 0;
};

/// True iff the verification block carries no more than noise energy:
/// ||y_dot||^2 <= c2 (1+tau) sigma^2 + eps, eps = 1e-9 c2 so the sigma = 0
/// case classifies cleanly.
bool zeroton_test(const BinMeasurement& bin, const SchemeParams& params);

/// Full singleton test: zeroton gate, sign estimate from the all-ones block,
/// index decode from the coded block, then verification against the
/// Rademacher block plus a hash-membership check of the decoded index.
SingletonTestResult singleton_test(const BinMeasurement& bin, const SchemeParams& params,
                                   const IndexCodec& codec, const ColumnGenerator& gen,
                                   const BinHasher& hasher, std::uint32_t bin_index);

/// argmin over the alphabet of ||y_dot - z g_dot||^2; alphabet must be sorted
/// ascending, ties resolve to the smaller value.
double estimate_value_discrete(std::span<const double> ydot, std::span<const std::int8_t> gdot,
                               std::span<const double> alphabet);

/// Iterative peeling: seed with singleton tests on every bin, then repeatedly
/// pop a recovered index (FIFO), subtract its estimate from its remaining
/// bins and re-test them. Serial and Parallel give identical results.
DecodeResult peel_decode(MeasurementSet meas, const SchemeParams& params, const IndexCodec& codec,
                         const ColumnGenerator& gen, const BinHasher& hasher,
                         Execution exec = Execution::Parallel);

}  // namespace glcs
