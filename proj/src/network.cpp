#include "relaynet/network.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "relaynet/errors.hpp"
#include "relaynet/io.hpp"

namespace relaynet {

namespace {

std::string pair_name(Node i, Node j) {
  return "gains[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

CapacityBits::CapacityBits(double bits) : bits_(bits) {
  if (!std::isfinite(bits) || bits < 0.0) {
    throw InvalidArgument("capacity must be finite and nonnegative, got " + std::to_string(bits));
  }
}

Complex make_gain(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) throw InvalidArgument("gain components must be finite");
  return {re, im};
}

Network::Network(std::size_t num_relays, CMatrix gains, std::optional<LayerStructure> layering)
    : num_relays_(num_relays), gains_(std::move(gains)), layering_(layering) {
  if (num_relays_ < 1) throw ValidationError("num_relays", "must be at least 1");
  const std::size_t n = num_nodes();
  if (gains_.rows() != n || gains_.cols() != n) {
    throw ValidationError("gains", "matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (layering_) {
    if (layering_->num_layers < 1) throw ValidationError("layers.L", "must be at least 1");
    if (layering_->relays_per_layer < 1) throw ValidationError("layers.N_L", "must be at least 1");
    if (layering_->num_relays() != num_relays_) {
      throw ValidationError("layers", "L * N_L must equal num_relays");
    }
  }
  const Node dest = destination();
  for (Node i = 0; i < n; ++i) {
    gains_(i, i) = 0.0;
    for (Node j = 0; j < n; ++j) {
      const Complex& h = gains_(i, j);
      if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
        throw ValidationError(pair_name(i, j), "gain is not finite");
      }
      if (h == Complex{}) continue;
      if (j == source()) throw ValidationError(pair_name(i, j), "the source never receives");
      if (i == dest) throw ValidationError(pair_name(i, j), "the destination never transmits");
      if (layering_ && layer_of(j) != layer_of(i) + 1) {
        throw ValidationError(pair_name(i, j), "layered networks only link successive layers");
      }
    }
  }
}

std::size_t Network::layer_of(Node node) const {
  if (!layering_) throw InvalidArgument("network is not layered");
  if (node >= num_nodes()) throw InvalidArgument("node index out of range");
  if (node == source()) return 0;
  if (node == destination()) return layering_->num_layers + 1;
  return (node + layering_->relays_per_layer - 1) / layering_->relays_per_layer;
}

std::vector<Node> Network::layer_nodes(std::size_t l) const {
  if (!layering_) throw InvalidArgument("network is not layered");
  if (l == 0) return {source()};
  if (l == layering_->num_layers + 1) return {destination()};
  if (l > layering_->num_layers) throw InvalidArgument("layer index out of range");
  std::vector<Node> nodes;
  const std::size_t width = layering_->relays_per_layer;
  for (std::size_t i = 1; i <= width; ++i) nodes.push_back((l - 1) * width + i);
  return nodes;
}

double capacity_of_gain(const Complex& h) {
  const double snr = std::norm(h);
  // log1p keeps precision for weak links; log2 is exact on powers of two.
  return snr < 0.5 ? std::log1p(snr) / std::numbers::ln2 : std::log2(1.0 + snr);
}

CapacityBits link_capacity(const Network& net, Node i, Node j) {
  if (i >= net.num_nodes() || j >= net.num_nodes()) throw InvalidArgument("node index out of range");
  if (i == net.destination()) throw InvalidArgument("the destination is not a transmitter");
  if (j == Network::source()) throw InvalidArgument("the source is not a receiver");
  if (i == j) throw InvalidArgument("no self links");
  return CapacityBits(capacity_of_gain(net.gain(i, j)));
}

Complex gain_for_capacity(double bits) {
  if (!std::isfinite(bits) || bits < 0.0) throw InvalidArgument("capacity must be finite and nonnegative");
  return {std::sqrt(std::expm1(bits * std::numbers::ln2)), 0.0};
}

Network network_from_capacities(std::size_t num_relays, std::span<const LinkSpec> links,
                                std::optional<LayerStructure> layering) {
  CMatrix gains(num_relays + 2, num_relays + 2);
  for (const auto& link : links) {
    if (link.from >= gains.rows() || link.to >= gains.cols()) {
      throw ValidationError(pair_name(link.from, link.to), "node index out of range");
    }
    gains(link.from, link.to) = gain_for_capacity(link.bits);
  }
  return Network(num_relays, std::move(gains), layering);
}

// --- JSON -------------------------------------------------------------------

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("document", std::string("malformed JSON: ") + e.what());
  }
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ValidationError(where + key, "unknown key");
  }
}

const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                              const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + key, "missing");
  return obj.at(key);
}

std::size_t require_index(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ValidationError(where + key, "must be an integer");
  const auto i = v.get<std::int64_t>();
  if (i < 0) throw ValidationError(where + key, "must be nonnegative");
  return static_cast<std::size_t>(i);
}

double require_number(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw ValidationError(where + key, "must be a number");
  return v.get<double>();
}

}  // namespace

Network network_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("document", "must be a JSON object");
  reject_unknown_keys(doc, {"num_relays", "layers", "gains", "link_capacities", "designed"}, "");

  const auto& nr = require(doc, "num_relays", "");
  if (!nr.is_number_integer() || nr.get<std::int64_t>() < 1) {
    throw ValidationError("num_relays", "must be an integer >= 1");
  }
  const auto num_relays = static_cast<std::size_t>(nr.get<std::int64_t>());

  std::optional<LayerStructure> layering;
  if (doc.contains("layers")) {
    const auto& layers = doc.at("layers");
    if (!layers.is_object()) throw ValidationError("layers", "must be an object");
    reject_unknown_keys(layers, {"L", "N_L"}, "layers.");
    layering = LayerStructure{require_index(layers, "L", "layers."),
                              require_index(layers, "N_L", "layers.")};
  }

  const bool has_gains = doc.contains("gains");
  const bool has_caps = doc.contains("link_capacities");
  if (has_gains == has_caps) {
    throw ValidationError("gains", "exactly one of \"gains\" or \"link_capacities\" is required");
  }

  const std::size_t n = num_relays + 2;
  CMatrix gains(n, n);
  std::set<std::pair<Node, Node>> seen;
  const std::string list_key = has_gains ? "gains" : "link_capacities";
  const auto& list = doc.at(list_key);
  if (!list.is_array()) throw ValidationError(list_key, "must be an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto& e = list[k];
    const std::string where = list_key + "[" + std::to_string(k) + "].";
    if (!e.is_object()) throw ValidationError(list_key + "[" + std::to_string(k) + "]", "must be an object");
    if (has_gains) {
      reject_unknown_keys(e, {"from", "to", "re", "im"}, where);
    } else {
      reject_unknown_keys(e, {"from", "to", "bits"}, where);
    }
    const Node from = require_index(e, "from", where);
    const Node to = require_index(e, "to", where);
    if (from >= n) throw ValidationError(where + "from", "node index out of range");
    if (to >= n) throw ValidationError(where + "to", "node index out of range");
    if (!seen.emplace(from, to).second) throw ValidationError(where + "to", "duplicate link");
    if (has_gains) {
      const double re = require_number(e, "re", where);
      const double im = require_number(e, "im", where);
      gains(from, to) = Complex{re, im};
    } else {
      const double bits = require_number(e, "bits", where);
      if (bits < 0.0) throw ValidationError(where + "bits", "must be nonnegative");
      gains(from, to) = gain_for_capacity(bits);
    }
  }
  return Network(num_relays, std::move(gains), layering);
}

nlohmann::json network_to_json(const Network& net) {
  nlohmann::json doc;
  doc["num_relays"] = net.num_relays();
  if (const auto& layers = net.layering()) {
    doc["layers"] = {{"L", layers->num_layers}, {"N_L", layers->relays_per_layer}};
  }
  auto gains = nlohmann::json::array();
  for (Node i = 0; i < net.num_nodes(); ++i) {
    for (Node j = 0; j < net.num_nodes(); ++j) {
      const Complex& h = net.gain(i, j);
      if (h == Complex{}) continue;
      gains.push_back({{"from", i}, {"to", j}, {"re", h.real()}, {"im", h.imag()}});
    }
  }
  doc["gains"] = std::move(gains);
  return doc;
}

Network load_network(std::string_view json_text) { return network_from_json(parse_json(json_text)); }

std::string save_network(const Network& net) { return network_to_json(net).dump(2) + "\n"; }

}  // namespace relaynet
