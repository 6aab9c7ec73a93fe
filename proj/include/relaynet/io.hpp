#pragma once

// JSON encoding of networks. The textual entry points load_network() and
// save_network() live in network.hpp; these are the document-level pieces
// reused by the tight-example sidecar and the CLI.

#include <json.hpp>

#include "relaynet/network.hpp"

namespace relaynet {

nlohmann::json network_to_json(const Network& net);

// Accepts the keys "num_relays", "layers", "gains" | "link_capacities" and
// the optional sidecar "designed" (ignored here). Anything else is rejected.
Network network_from_json(const nlohmann::json& doc);

nlohmann::json parse_json(std::string_view text);

}  // namespace relaynet

#include "relaynet/linalg.hpp"

namespace relaynet {

// {"rows": n_r, "cols": n_t, "entries": [[re, im], ...]} in row-major order.
MimoChannel channel_from_json(const nlohmann::json& doc);
nlohmann::json channel_to_json(const MimoChannel& h);
MimoChannel load_channel(std::string_view json_text);

}  // namespace relaynet
