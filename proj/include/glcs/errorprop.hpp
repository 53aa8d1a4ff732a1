#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "glcs/columns.hpp"
#include "glcs/decoder.hpp"
#include "glcs/graph.hpp"

namespace glcs {

/// Iteration-ordered graph along which point errors accumulate into the
/// residual estimation errors of a completed decode. Node u's parents are
/// the signals whose estimates were subtracted from u's recovery bin before
/// it was consumed.
struct ErrorGraph {
  struct Node {
    Index index = 0;
    std::uint32_t iteration = 0;
    std::uint32_t bin = 0;
    std::vector<std::int8_t> column;       // full measurement column of `index`
    std::vector<std::uint32_t> parents;    // node ids, in subtraction order
    ComponentClass component = ComponentClass::Tree;
  };

  std::vector<Node> nodes;  // recovery order
  std::uint32_t c = 0;

  const Node* find(Index index) const;
  std::uint32_t node_of(Index index) const;  // throws if absent
  std::unordered_map<Index, std::uint32_t> index_to_node;
};

/// Builds the graph from a decode trace; columns come from the generator and
/// component classes from a census of the recovered support.
ErrorGraph build_error_graph(const DecodeResult& dec, const BinHasher& hasher,
                             const ColumnGenerator& gen);

/// Point error -(1/c) g^T z for an explicit noise vector.
double point_error(std::span<const std::int8_t> column, std::span<const double> bin_noise);

/// Point errors of every node with the noise realization regenerated from
/// (noise_seed, bin, position); matches the noise injected by measure().
std::vector<double> point_errors(const ErrorGraph& graph, std::uint64_t noise_seed,
                                 double sigma2);

struct Propagated {
  std::vector<double> p;                                        // per node
  std::unordered_map<std::uint32_t, std::vector<double>> q;     // per consumed bin
};

/// Message-passing rules evaluated in recovery order:
///   q_j = sum over subtracted signals of p_l g_l,
///   p_i = e_i - (1/c) g_i^T q_{m(i)}.
Propagated propagate(const ErrorGraph& graph, std::span<const double> point_errors);

/// All directed paths into `node` grouped by source, with one coefficient
/// per path (the product of -(1/c) g^T g factors along the path).
struct PathExpansion {
  struct SourcePaths {
    std::uint32_t node = 0;
    Index index = 0;
    std::vector<double> coefficients;  // size = number of paths from this source
  };
  std::vector<SourcePaths> sources;
};

/// Throws std::invalid_argument when the node's support component is Complex
/// (the path-count bound only holds for trees and unicyclic components).
PathExpansion path_expansion(const ErrorGraph& graph, std::uint32_t node);

/// (1 + sum over sources of path_count^2) * sigma2 / c.
double variance_bound(const ErrorGraph& graph, std::uint32_t node, double sigma2);

}  // namespace glcs
