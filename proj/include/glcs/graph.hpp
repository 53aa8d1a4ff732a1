#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "glcs/scheme.hpp"

namespace glcs {

/// Seeded hash from a signal index to its d distinct measurement bins.
/// Realizes the left-d-regular bipartite ensemble without storing anything:
/// H_{ij} = 1 iff j is in bins_of(i).
class BinHasher {
 public:
  BinHasher(std::uint32_t b, std::uint32_t d, std::uint64_t seed);

  std::uint32_t b() const { return b_; }
  std::uint32_t d() const { return d_; }
  std::uint64_t seed() const { return seed_; }

  /// d distinct bins in {0..b-1}, sorted ascending; deterministic in (i, seed).
  std::vector<std::uint32_t> bins_of(Index i) const;
  bool contains(Index i, std::uint32_t bin) const;

 private:
  std::uint32_t b_;
  std::uint32_t d_;
  std::uint64_t seed_;
};

/// Bipartite graph restricted to a signal support.
struct SupportGraph {
  std::vector<Index> signals;                       // sorted, distinct
  std::vector<std::vector<std::uint32_t>> signal_bins;  // per signal, sorted bins
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> bin_signals;  // bin -> signal slots
  std::uint32_t b = 0;
  std::uint32_t d = 0;

  std::uint64_t edge_count() const;
};

SupportGraph build_support_graph(std::span<const Index> support, const BinHasher& hasher);

enum class ComponentClass { Tree, Unicyclic, Complex };

struct ComponentInfo {
  std::uint32_t signals = 0;
  std::uint32_t bins = 0;
  std::uint64_t edges = 0;
  ComponentClass cls = ComponentClass::Tree;
};

struct ComponentReport {
  std::vector<ComponentInfo> components;
  std::vector<std::uint32_t> signal_component;  // per signal slot, component id
  std::uint32_t largest_signals = 0;
  std::uint32_t n_tree = 0;
  std::uint32_t n_unicyclic = 0;
  std::uint32_t n_complex = 0;

  bool all_tree_or_unicyclic() const { return n_complex == 0; }
};

/// Exact component classification: a connected component with e edges and
/// v nodes is a Tree iff e = v - 1, Unicyclic iff e = v, Complex otherwise.
ComponentReport component_census(const SupportGraph& g);

}  // namespace glcs
