#include "glcs/errorprop.hpp"

#include <cmath>
#include <stdexcept>

namespace glcs {

const ErrorGraph::Node* ErrorGraph::find(Index index) const {
  const auto it = index_to_node.find(index);
  return it == index_to_node.end() ? nullptr : &nodes[it->second];
}

std::uint32_t ErrorGraph::node_of(Index index) const {
  const auto it = index_to_node.find(index);
  if (it == index_to_node.end()) throw std::out_of_range("ErrorGraph: index not recovered");
  return it->second;
}

ErrorGraph build_error_graph(const DecodeResult& dec, const BinHasher& hasher,
                             const ColumnGenerator& gen) {
  ErrorGraph g;
  g.c = gen.c();
  g.nodes.reserve(dec.trace.size());

  std::vector<Index> indices;
  indices.reserve(dec.trace.size());
  std::unordered_map<std::uint32_t, std::uint32_t> consumer_of_bin;  // bin -> node id
  for (const auto& entry : dec.trace) {
    ErrorGraph::Node node;
    node.index = entry.index;
    node.iteration = entry.iteration;
    node.bin = entry.bin;
    node.column = gen.column(entry.index);
    const auto id = static_cast<std::uint32_t>(g.nodes.size());
    g.index_to_node.emplace(entry.index, id);
    consumer_of_bin.emplace(entry.bin, id);
    g.nodes.push_back(std::move(node));
    indices.push_back(entry.index);
  }

  // A subtraction l -> j feeds whichever node was recovered from bin j;
  // subtractions into bins never consumed do not enter any estimate.
  for (const auto& sub : dec.subtractions) {
    const auto it = consumer_of_bin.find(sub.bin);
    if (it == consumer_of_bin.end()) continue;
    g.nodes[it->second].parents.push_back(g.index_to_node.at(sub.index));
  }

  const auto support_graph = build_support_graph(indices, hasher);
  const auto census = component_census(support_graph);
  std::unordered_map<Index, ComponentClass> cls_of;
  for (std::uint32_t slot = 0; slot < support_graph.signals.size(); ++slot)
    cls_of[support_graph.signals[slot]] =
        census.components[census.signal_component[slot]].cls;
  for (auto& node : g.nodes) node.component = cls_of.at(node.index);
  return g;
}

double point_error(std::span<const std::int8_t> column, std::span<const double> bin_noise) {
  double dot = 0.0;
  for (std::size_t t = 0; t < column.size(); ++t) dot += column[t] * bin_noise[t];
  return -dot / static_cast<double>(column.size());
}

std::vector<double> point_errors(const ErrorGraph& graph, std::uint64_t noise_seed,
                                 double sigma2) {
  const double sigma = std::sqrt(sigma2);
  std::vector<double> e(graph.nodes.size(), 0.0);
  std::vector<double> z(graph.c);
  for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
    const auto& node = graph.nodes[u];
    for (std::uint32_t t = 0; t < graph.c; ++t)
      z[t] = sigma * noise_at(noise_seed, node.bin, t);
    e[u] = point_error(node.column, z);
  }
  return e;
}

Propagated propagate(const ErrorGraph& graph, std::span<const double> point_errors) {
  if (point_errors.size() != graph.nodes.size())
    throw std::invalid_argument("propagate: point error count != node count");
  Propagated out;
  out.p.resize(graph.nodes.size());
  const double c = static_cast<double>(graph.c);
  for (std::uint32_t u = 0; u < graph.nodes.size(); ++u) {
    const auto& node = graph.nodes[u];
    out.p[u] = point_errors[u];
    if (node.parents.empty()) continue;  // first-iteration node: p = e
    std::vector<double> q(graph.c, 0.0);
    for (std::uint32_t parent : node.parents) {
      const double pl = out.p[parent];  // parents recover strictly earlier
      const auto& gl = graph.nodes[parent].column;
      for (std::uint32_t t = 0; t < graph.c; ++t) q[t] += pl * gl[t];
    }
    double dot = 0.0;
    for (std::uint32_t t = 0; t < graph.c; ++t) dot += node.column[t] * q[t];
    out.p[u] -= dot / c;
    out.q.emplace(node.bin, std::move(q));
  }
  return out;
}

namespace {

double edge_weight(const ErrorGraph& graph, std::uint32_t parent, std::uint32_t child) {
  const auto& gp = graph.nodes[parent].column;
  const auto& gc = graph.nodes[child].column;
  long long dot = 0;
  for (std::uint32_t t = 0; t < graph.c; ++t)
    dot += static_cast<long long>(gp[t]) * gc[t];
  return -static_cast<double>(dot) / static_cast<double>(graph.c);
}

void enumerate_paths(const ErrorGraph& graph, std::uint32_t u, double acc,
                     std::unordered_map<std::uint32_t, std::vector<double>>& per_source) {
  for (std::uint32_t parent : graph.nodes[u].parents) {
    const double coeff = acc * edge_weight(graph, parent, u);
    per_source[parent].push_back(coeff);
    enumerate_paths(graph, parent, coeff, per_source);
  }
}

}  // namespace

PathExpansion path_expansion(const ErrorGraph& graph, std::uint32_t node) {
  if (node >= graph.nodes.size()) throw std::out_of_range("path_expansion: bad node");
  if (graph.nodes[node].component == ComponentClass::Complex)
    throw std::invalid_argument("path_expansion: node lies in a complex component");

  // The recovery order makes the graph acyclic, so plain DFS enumerates
  // every directed path exactly once.
  std::unordered_map<std::uint32_t, std::vector<double>> per_source;
  enumerate_paths(graph, node, 1.0, per_source);

  PathExpansion out;
  out.sources.reserve(per_source.size());
  for (std::uint32_t u = 0; u < graph.nodes.size(); ++u) {
    const auto it = per_source.find(u);
    if (it == per_source.end()) continue;
    out.sources.push_back({u, graph.nodes[u].index, std::move(it->second)});
  }
  return out;
}

double variance_bound(const ErrorGraph& graph, std::uint32_t node, double sigma2) {
  const auto expansion = path_expansion(graph, node);
  double sum = 1.0;
  for (const auto& src : expansion.sources) {
    const double paths = static_cast<double>(src.coefficients.size());
    sum += paths * paths;
  }
  return sum * sigma2 / static_cast<double>(graph.c);
}

}  // namespace glcs
