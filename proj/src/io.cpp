#include "relaynet/io.hpp"

#include "relaynet/errors.hpp"

namespace relaynet {

MimoChannel channel_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("channel", "must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "rows" && key != "cols" && key != "entries") throw ValidationError(key, "unknown key");
  }
  auto dim = [&](const char* key) -> std::size_t {
    if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<std::int64_t>() < 1) {
      throw ValidationError(key, "must be an integer >= 1");
    }
    return doc.at(key).get<std::size_t>();
  };
  const std::size_t rows = dim("rows"), cols = dim("cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw ValidationError("entries", "must be an array");
  }
  const auto& entries = doc.at("entries");
  if (entries.size() != rows * cols) {
    throw ValidationError("entries", "expected " + std::to_string(rows * cols) + " entries");
  }
  CMatrix h(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const std::string where = "entries[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ValidationError(where, "must be [re, im]");
    }
    h(k / cols, k % cols) = Complex{e[0].get<double>(), e[1].get<double>()};
  }
  if (!h.all_finite()) throw ValidationError("entries", "must be finite");
  return MimoChannel(std::move(h));
}

nlohmann::json channel_to_json(const MimoChannel& h) {
  auto entries = nlohmann::json::array();
  for (const Complex& z : h.matrix().data()) entries.push_back({z.real(), z.imag()});
  return {{"rows", h.num_rx()}, {"cols", h.num_tx()}, {"entries", std::move(entries)}};
}

MimoChannel load_channel(std::string_view json_text) { return channel_from_json(parse_json(json_text)); }

}  // namespace relaynet
