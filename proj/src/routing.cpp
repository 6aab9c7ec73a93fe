#include "relaynet/routing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "relaynet/cutset.hpp"
#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

bool has_link(const Network& net, Node i, Node j) { return i != j && net.gain(i, j) != Complex{}; }

}  // namespace

Path::Path(const Network& net, std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw ValidationError("path", "needs at least one hop");
  if (nodes_.front() != Network::source()) throw ValidationError("path", "must start at the source");
  if (nodes_.back() != net.destination()) throw ValidationError("path", "must end at the destination");
  std::vector<bool> seen(net.num_nodes(), false);
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const Node v = nodes_[k];
    if (v >= net.num_nodes()) throw ValidationError("path", "node index out of range");
    if (seen[v]) throw ValidationError("path", "node " + std::to_string(v) + " is repeated");
    seen[v] = true;
    if (k > 0 && !has_link(net, nodes_[k - 1], v)) {
      throw ValidationError("path", "hop " + std::to_string(nodes_[k - 1]) + "->" + std::to_string(v) +
                                        " has zero gain");
    }
  }
}

CapacityBits path_capacity(const Network& net, const Path& path) {
  double b = std::numeric_limits<double>::infinity();
  const auto& v = path.nodes();
  for (std::size_t k = 0; k + 1 < v.size(); ++k) b = std::min(b, capacity_of_gain(net.gain(v[k], v[k + 1])));
  return CapacityBits(b);
}

Route best_route(const Network& net) {
  const std::size_t n = net.num_nodes();
  const Node src = Network::source(), dst = net.destination();

  // Widest-path Dijkstra: width[v] is the best bottleneck from the source.
  std::vector<double> cap(n * n, -1.0);
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (has_link(net, i, j)) cap[i * n + j] = capacity_of_gain(net.gain(i, j));

  std::vector<double> width(n, -1.0);
  std::vector<bool> done(n, false);
  width[src] = std::numeric_limits<double>::infinity();
  using Item = std::pair<double, Node>;
  std::priority_queue<Item> heap;
  heap.push({width[src], src});
  while (!heap.empty()) {
    const auto [w, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == dst) break;
    for (Node v = 0; v < n; ++v) {
      const double c = cap[u * n + v];
      if (c < 0.0 || done[v]) continue;
      const double cand = std::min(w, c);
      if (cand > width[v]) {
        width[v] = cand;
        heap.push({cand, v});
      }
    }
  }
  if (width[dst] < 0.0) throw DisconnectedError("no path from source to destination through nonzero links");
  const double best = width[dst];

  // Among links at least as wide as the optimum, take a fewest-hop path and
  // break the remaining ties by picking the smallest next node greedily.
  const std::size_t unreachable = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> to_dst(n, unreachable);
  std::deque<Node> queue{dst};
  to_dst[dst] = 0;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (Node u = 0; u < n; ++u) {
      if (to_dst[u] == unreachable && cap[u * n + v] >= best) {
        to_dst[u] = to_dst[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<Node> nodes{src};
  Node u = src;
  while (u != dst) {
    Node next = unreachable;
    for (Node v = 0; v < n; ++v) {
      if (cap[u * n + v] >= best && to_dst[v] + 1 == to_dst[u]) {
        next = v;
        break;
      }
    }
    nodes.push_back(next);
    u = next;
  }
  Path path(net, std::move(nodes));
  return {path, path_capacity(net, path)};
}

std::vector<Path> enumerate_paths(const Network& net, std::size_t max_hops) {
  if (net.num_relays() > kMaxEnumerationRelays) {
    throw LimitExceeded("path enumeration is capped at N <= " + std::to_string(kMaxEnumerationRelays));
  }
  const std::size_t n = net.num_nodes();
  std::vector<Path> out;
  std::vector<Node> stack{Network::source()};
  std::vector<bool> on_path(n, false);
  on_path[Network::source()] = true;

  auto dfs = [&](auto&& self, Node u) -> void {
    if (u == net.destination()) {
      out.emplace_back(net, stack);
      return;
    }
    if (stack.size() - 1 >= max_hops) return;
    for (Node v = 1; v < n; ++v) {
      if (on_path[v] || !has_link(net, u, v)) continue;
      on_path[v] = true;
      stack.push_back(v);
      self(self, v);
      stack.pop_back();
      on_path[v] = false;
    }
  };
  dfs(dfs, Network::source());
  return out;
}

Guarantee thm1_guarantee(std::size_t num_relays) {
  if (num_relays < 1) throw InvalidArgument("N must be at least 1");
  const double n = static_cast<double>(num_relays);
  return {1.0 / static_cast<double>(num_relays / 2 + 1), 2.0 * std::log2((n + 2.0) / 2.0)};
}

Guarantee thm2_guarantee(std::size_t num_layers, std::size_t relays_per_layer) {
  if (num_layers < 1 || relays_per_layer < 1) throw InvalidArgument("L and N_L must be at least 1");
  const double denom = num_layers % 2 == 1
                           ? static_cast<double>((num_layers - 1) * relays_per_layer + 4)
                           : static_cast<double>(num_layers * relays_per_layer + 2);
  return {2.0 / denom, 2.0 * std::log2(static_cast<double>(relays_per_layer))};
}

GuaranteeReport make_guarantee_report(double route_bits, double capacity_bits, Guarantee g) {
  GuaranteeReport r;
  r.best_route_bits = route_bits;
  r.approx_capacity_bits = capacity_bits;
  r.fraction = g.fraction;
  r.additive_gap_bits = g.gap_bits;
  r.satisfied = route_bits >= r.bound_bits() - kGuaranteeTolerance;
  return r;
}

GuaranteeReport check_route_guarantee(const Network& net) {
  const Route route = best_route(net);
  const ApproxCapacity cap = approx_capacity(net);
  const Guarantee g = net.is_layered()
                          ? thm2_guarantee(net.layering()->num_layers, net.layering()->relays_per_layer)
                          : thm1_guarantee(net.num_relays());
  return make_guarantee_report(route.bits.bits(), cap.bits.bits(), g);
}

}  // namespace relaynet
