#pragma once

// Networks on which the best route achieves exactly the guaranteed fraction
// of the approximate capacity. Each generator records its designed minimum
// cut and route bound explicitly so verification is an independent check.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relaynet/cutset.hpp"
#include "relaynet/network.hpp"

namespace relaynet {

enum class Family { general_odd, general_even, layered_odd, layered_even };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

struct TightExample {
  Network network;
  double designed_capacity_bits;
  Cut designed_cut;
  double designed_route_bound_bits;
  Family family;
  // Set for parameter choices that fall outside the family's intended range
  // (layered with one relay per layer); verification is not expected to pass.
  bool degenerate = false;
};

// General N-relay family with weak links of `weak_bits` (A) and strong links
// of N^2 A. Designed capacity A (floor(N/2) + 1), every route bounded by A.
TightExample construct_general_tight(std::size_t num_relays, double weak_bits);

// Layered family with strong links of `strong_bits` (W) and weak links of
// f W, f being the layered guarantee fraction. Designed capacity W.
TightExample construct_layered_tight(std::size_t num_layers, std::size_t relays_per_layer, double strong_bits);

struct TightExampleReport {
  double computed_capacity_bits = 0.0;
  double designed_cut_bits = 0.0;
  double max_path_bits = 0.0;
  double best_route_bits = 0.0;
  std::size_t paths_checked = 0;  // 0 when N is past the enumeration cap
  bool capacity_matches = false;
  bool designed_cut_attains = false;
  bool paths_bounded = false;
  bool best_route_attains = false;
  std::vector<std::string> failures;  // one message per failing claim

  bool ok() const { return failures.empty(); }
};

inline constexpr double kTightTolerance = 1e-9;

TightExampleReport verify_tight_example(const TightExample& ex);

// Network document plus "designed": {capacity_bits, cut, route_bound_bits, family}.
nlohmann::json tight_example_to_json(const TightExample& ex);
TightExample tight_example_from_json(const nlohmann::json& doc);

}  // namespace relaynet
