#include "relaynet/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "relaynet/errors.hpp"
#include "relaynet/io.hpp"
#include "relaynet/routing.hpp"

namespace relaynet {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::general_odd:
      return "general-odd";
    case Family::general_even:
      return "general-even";
    case Family::layered_odd:
      return "layered-odd";
    case Family::layered_even:
      return "layered-even";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::general_odd, Family::general_even, Family::layered_odd, Family::layered_even}) {
    if (family_name(f) == name) return f;
  }
  throw ValidationError("designed.family", "unknown family '" + std::string(name) + "'");
}

TightExample construct_general_tight(std::size_t num_relays, double weak_bits) {
  if (num_relays < 1) throw InvalidArgument("general construction needs N >= 1");
  if (!(weak_bits > 0.0) || !std::isfinite(weak_bits)) throw InvalidArgument("weak link capacity A must be positive");
  const std::size_t n = num_relays;
  const double weak = weak_bits;
  const double strong = static_cast<double>(n * n) * weak_bits;
  const std::size_t nf = (n - 1) / 2;
  const Node dst = n + 1;

  std::vector<LinkSpec> links{{0, 1, weak}, {1, dst, strong}};
  std::vector<Node> cut{0};
  for (Node i = 2; i <= nf + 1; ++i) {
    links.push_back({0, i, strong});
    links.push_back({i, i + nf, weak});
    cut.push_back(i);
  }
  for (Node i = nf + 2; i <= 2 * nf + 1; ++i) links.push_back({i, dst, strong});
  const bool even = n % 2 == 0;
  if (even) {
    // the extra relay N hangs off the source and destination only
    links.push_back({0, n, strong});
    links.push_back({n, dst, weak});
    cut.push_back(n);
  }
  const double capacity = weak * static_cast<double>(n / 2 + 1);
  return TightExample{network_from_capacities(n, links), capacity, Cut(n, cut), weak,
                      even ? Family::general_even : Family::general_odd};
}

TightExample construct_layered_tight(std::size_t num_layers, std::size_t relays_per_layer, double strong_bits) {
  if (num_layers < 1 || relays_per_layer < 1) throw InvalidArgument("layered construction needs L >= 1 and N_L >= 1");
  if (!(strong_bits > 0.0) || !std::isfinite(strong_bits)) {
    throw InvalidArgument("strong link capacity W must be positive");
  }
  const std::size_t L = num_layers, w = relays_per_layer;
  const bool odd = L % 2 == 1;
  const double fraction = thm2_guarantee(L, w).fraction;
  const double strong = strong_bits;
  const double weak = fraction * strong_bits;
  const Node dst = L * w + 1;
  // node of relay i (1-based) in layer l (1-based)
  auto node = [w](std::size_t l, std::size_t i) -> Node { return (l - 1) * w + i; };

  std::vector<std::vector<double>> bits(L * w + 2, std::vector<double>(L * w + 2, 0.0));

  // stage 0
  for (std::size_t i = 1; i < w; ++i) bits[0][node(1, i)] = strong;
  bits[0][node(1, w)] = weak;

  // inner stages l -> l+1, 1 <= l < L
  for (std::size_t l = 1; l < L; ++l) {
    if (l % 2 == 1) {
      for (std::size_t i = 1; i < w; ++i) bits[node(l, i)][node(l + 1, i)] = weak;
      for (std::size_t i = 1; i <= w; ++i) {
        bits[node(l, w)][node(l + 1, i)] = strong;
        bits[node(l, i)][node(l + 1, w)] = strong;
      }
    } else {
      for (std::size_t i = 1; i <= w; ++i)
        for (std::size_t j = 1; j <= w; ++j) bits[node(l, i)][node(l + 1, j)] = strong;
      bits[node(l, w)][node(l + 1, w)] = weak;
    }
  }

  // stage L
  if (odd) {
    bits[node(L, 1)][dst] = weak;
    bits[node(L, w)][dst] = strong;
  } else {
    for (std::size_t i = 1; i < w; ++i) bits[node(L, i)][dst] = strong;
    bits[node(L, w)][dst] = weak;
  }

  std::vector<LinkSpec> links;
  for (Node i = 0; i < bits.size(); ++i)
    for (Node j = 0; j < bits.size(); ++j)
      if (bits[i][j] > 0.0) links.push_back({i, j, bits[i][j]});

  // Source side: relays 1..N_L-1 of every odd layer and relay N_L of every
  // even layer.
  std::vector<Node> cut{0};
  for (std::size_t l = 1; l <= L; ++l) {
    if (l % 2 == 1) {
      for (std::size_t i = 1; i < w; ++i) cut.push_back(node(l, i));
    } else {
      cut.push_back(node(l, w));
    }
  }

  TightExample ex{network_from_capacities(L * w, links, LayerStructure{L, w}),
                  strong,
                  Cut(L * w, cut),
                  weak,
                  odd ? Family::layered_odd : Family::layered_even};
  ex.degenerate = w == 1;
  return ex;
}

TightExampleReport verify_tight_example(const TightExample& ex) {
  const Network& net = ex.network;
  TightExampleReport rep;

  rep.computed_capacity_bits = approx_capacity(net).bits.bits();
  rep.capacity_matches = std::abs(rep.computed_capacity_bits - ex.designed_capacity_bits) <= kTightTolerance;
  if (!rep.capacity_matches) {
    rep.failures.push_back("approximate capacity " + std::to_string(rep.computed_capacity_bits) +
                           " differs from the designed " + std::to_string(ex.designed_capacity_bits));
  }

  rep.designed_cut_bits = cut_value(net, ex.designed_cut).bits();
  rep.designed_cut_attains = std::abs(rep.designed_cut_bits - rep.computed_capacity_bits) <= kTightTolerance &&
                             std::abs(rep.designed_cut_bits - ex.designed_capacity_bits) <= kTightTolerance;
  if (!rep.designed_cut_attains) {
    rep.failures.push_back("designed cut has value " + std::to_string(rep.designed_cut_bits) +
                           ", not the designed capacity " + std::to_string(ex.designed_capacity_bits));
  }

  if (net.num_relays() <= kMaxEnumerationRelays) {
    const auto paths = enumerate_paths(net, net.num_relays() + 1);
    rep.paths_checked = paths.size();
    for (const Path& p : paths) rep.max_path_bits = std::max(rep.max_path_bits, path_capacity(net, p).bits());
  } else {
    // too many paths to list; the widest path is the maximum over all of them
    try {
      rep.max_path_bits = best_route(net).bits.bits();
    } catch (const DisconnectedError&) {
    }
  }
  rep.paths_bounded = rep.max_path_bits <= ex.designed_route_bound_bits + kTightTolerance;
  if (!rep.paths_bounded) {
    rep.failures.push_back("a path carries " + std::to_string(rep.max_path_bits) + " bits, above the route bound " +
                           std::to_string(ex.designed_route_bound_bits));
  }

  try {
    rep.best_route_bits = best_route(net).bits.bits();
    rep.best_route_attains = std::abs(rep.best_route_bits - ex.designed_route_bound_bits) <= kTightTolerance;
  } catch (const DisconnectedError&) {
    rep.best_route_attains = false;
  }
  if (!rep.best_route_attains) {
    rep.failures.push_back("best route carries " + std::to_string(rep.best_route_bits) +
                           " bits, not the route bound " + std::to_string(ex.designed_route_bound_bits));
  }
  return rep;
}

nlohmann::json tight_example_to_json(const TightExample& ex) {
  nlohmann::json doc = network_to_json(ex.network);
  doc["designed"] = {{"capacity_bits", ex.designed_capacity_bits},
                     {"cut", ex.designed_cut.members()},
                     {"route_bound_bits", ex.designed_route_bound_bits},
                     {"family", family_name(ex.family)}};
  return doc;
}

TightExample tight_example_from_json(const nlohmann::json& doc) {
  Network net = network_from_json(doc);
  if (!doc.contains("designed")) throw ValidationError("designed", "missing");
  const auto& d = doc.at("designed");
  if (!d.is_object()) throw ValidationError("designed", "must be an object");
  for (const auto& [key, _] : d.items()) {
    if (key != "capacity_bits" && key != "cut" && key != "route_bound_bits" && key != "family") {
      throw ValidationError("designed." + key, "unknown key");
    }
  }
  auto number = [&](const char* key) {
    if (!d.contains(key) || !d.at(key).is_number()) {
      throw ValidationError(std::string("designed.") + key, "must be a number");
    }
    return d.at(key).get<double>();
  };
  if (!d.contains("cut") || !d.at("cut").is_array()) throw ValidationError("designed.cut", "must be an array");
  std::vector<Node> members;
  for (const auto& v : d.at("cut")) {
    if (!v.is_number_unsigned()) throw ValidationError("designed.cut", "entries must be node indices");
    members.push_back(v.get<Node>());
  }
  if (!d.contains("family") || !d.at("family").is_string()) {
    throw ValidationError("designed.family", "must be a string");
  }
  const Family family = parse_family(d.at("family").get<std::string>());
  const std::size_t n = net.num_relays();
  const bool degenerate =
      (family == Family::layered_odd || family == Family::layered_even) && net.is_layered() &&
      net.layering()->relays_per_layer == 1;
  return TightExample{std::move(net), number("capacity_bits"), Cut(n, std::move(members)),
                      number("route_bound_bits"), family, degenerate};
}

}  // namespace relaynet
