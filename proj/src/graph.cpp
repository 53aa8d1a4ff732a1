#include "glcs/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "glcs/rng.hpp"

namespace glcs {

BinHasher::BinHasher(std::uint32_t b, std::uint32_t d, std::uint64_t seed)
    : b_(b), d_(d), seed_(seed) {
  if (d < 1 || d > b) throw std::invalid_argument("BinHasher: need 1 <= d <= b");
}

std::vector<std::uint32_t> BinHasher::bins_of(Index i) const {
  std::vector<std::uint32_t> bins;
  bins.reserve(d_);
  // Rejection sampling over a counter stream gives a uniform d-subset.
  std::uint64_t ctr = 0;
  while (bins.size() < d_) {
    const auto h = rng::hash(seed_, rng::kGraphStream, i, ctr++);
    const auto bin = static_cast<std::uint32_t>(rng::bounded(h, b_));
    if (std::find(bins.begin(), bins.end(), bin) == bins.end()) bins.push_back(bin);
  }
  std::sort(bins.begin(), bins.end());
  return bins;
}

bool BinHasher::contains(Index i, std::uint32_t bin) const {
  const auto bins = bins_of(i);
  return std::binary_search(bins.begin(), bins.end(), bin);
}

std::uint64_t SupportGraph::edge_count() const {
  std::uint64_t e = 0;
  for (const auto& bins : signal_bins) e += bins.size();
  return e;
}

SupportGraph build_support_graph(std::span<const Index> support, const BinHasher& hasher) {
  SupportGraph g;
  g.b = hasher.b();
  g.d = hasher.d();
  g.signals.assign(support.begin(), support.end());
  std::sort(g.signals.begin(), g.signals.end());
  g.signals.erase(std::unique(g.signals.begin(), g.signals.end()), g.signals.end());
  g.signal_bins.resize(g.signals.size());
  for (std::uint32_t slot = 0; slot < g.signals.size(); ++slot) {
    g.signal_bins[slot] = hasher.bins_of(g.signals[slot]);
    for (std::uint32_t bin : g.signal_bins[slot]) g.bin_signals[bin].push_back(slot);
  }
  return g;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void join(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ComponentReport component_census(const SupportGraph& g) {
  const auto s = static_cast<std::uint32_t>(g.signals.size());

  // Compact ids: signals first, then the touched bins in ascending order.
  std::vector<std::uint32_t> bins;
  bins.reserve(g.bin_signals.size());
  for (const auto& [bin, slots] : g.bin_signals) bins.push_back(bin);
  std::sort(bins.begin(), bins.end());
  std::unordered_map<std::uint32_t, std::uint32_t> bin_id;
  for (std::uint32_t t = 0; t < bins.size(); ++t) bin_id[bins[t]] = s + t;

  UnionFind uf(s + static_cast<std::uint32_t>(bins.size()));
  for (std::uint32_t slot = 0; slot < s; ++slot)
    for (std::uint32_t bin : g.signal_bins[slot]) uf.join(slot, bin_id[bin]);

  ComponentReport report;
  report.signal_component.resize(s);
  std::unordered_map<std::uint32_t, std::uint32_t> comp_of_root;
  auto component_id = [&](std::uint32_t node) {
    const auto root = uf.find(node);
    auto it = comp_of_root.find(root);
    if (it == comp_of_root.end()) {
      it = comp_of_root.emplace(root, static_cast<std::uint32_t>(report.components.size())).first;
      report.components.emplace_back();
    }
    return it->second;
  };

  for (std::uint32_t slot = 0; slot < s; ++slot) {
    const auto cid = component_id(slot);
    report.signal_component[slot] = cid;
    report.components[cid].signals += 1;
    report.components[cid].edges += g.signal_bins[slot].size();
  }
  for (std::uint32_t t = 0; t < bins.size(); ++t)
    report.components[component_id(s + t)].bins += 1;

  for (auto& comp : report.components) {
    const std::uint64_t nodes = comp.signals + comp.bins;
    if (comp.edges + 1 == nodes)
      comp.cls = ComponentClass::Tree;
    else if (comp.edges == nodes)
      comp.cls = ComponentClass::Unicyclic;
    else
      comp.cls = ComponentClass::Complex;
    switch (comp.cls) {
      case ComponentClass::Tree: report.n_tree += 1; break;
      case ComponentClass::Unicyclic: report.n_unicyclic += 1; break;
      case ComponentClass::Complex: report.n_complex += 1; break;
    }
    report.largest_signals = std::max(report.largest_signals, comp.signals);
  }
  return report;
}

}  // namespace glcs
