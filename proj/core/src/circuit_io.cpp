#include <json.hpp>

#include <string>
#include <utility>

#include "qfilter/circuit.hpp"

namespace qfilter {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

std::string element_context(std::size_t index) {
  return "element " + std::to_string(index) + ": ";
}

void reject_unknown_fields(const Json& object,
                           std::initializer_list<const char*> allowed,
                           const std::string& context) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* candidate : allowed) {
      if (key == candidate) {
        known = true;
        break;
      }
    }
    if (!known) fail(context + "unknown field '" + key + "'");
  }
}

const Json& require_field(const Json& object, const char* key,
                          const std::string& context) {
  auto it = object.find(key);
  if (it == object.end()) fail(context + "missing field '" + key + "'");
  return *it;
}

std::string require_string(const Json& value, const char* key,
                           const std::string& context) {
  if (!value.is_string()) fail(context + "field '" + std::string(key) + "' must be a string");
  return value.get<std::string>();
}

double require_number(const Json& value, const char* key,
                      const std::string& context) {
  if (!value.is_number()) fail(context + "field '" + std::string(key) + "' must be a number");
  return value.get<double>();
}

int require_integer(const Json& value, const char* key,
                    const std::string& context) {
  if (!value.is_number_integer()) {
    fail(context + "field '" + std::string(key) + "' must be an integer");
  }
  return value.get<int>();
}

DetectorModel parse_detector_model(const Json& value,
                                   const std::string& context) {
  if (!value.is_object()) fail(context + "field 'model' must be an object");
  reject_unknown_fields(value, {"kind", "eta", "dark"}, context);
  const std::string kind =
      require_string(require_field(value, "kind", context), "kind", context);
  DetectorModel model;
  if (kind == "ideal") {
    model.kind = DetectorModel::Kind::kIdeal;
  } else if (kind == "lossy") {
    model.kind = DetectorModel::Kind::kLossy;
  } else {
    fail(context + "unknown detector kind '" + kind + "'");
  }
  if (auto it = value.find("eta"); it != value.end()) {
    model.eta = require_number(*it, "eta", context);
  }
  if (auto it = value.find("dark"); it != value.end()) {
    model.dark = require_number(*it, "dark", context);
  }
  return model;
}

CircuitElement parse_element(const Json& value, std::size_t index) {
  const std::string context = element_context(index);
  if (!value.is_object()) fail(context + "must be an object");
  const std::string type =
      require_string(require_field(value, "type", context), "type", context);

  if (type == "bs") {
    reject_unknown_fields(value, {"type", "modes", "r"}, context);
    const Json& modes = require_field(value, "modes", context);
    if (!modes.is_array() || modes.size() != 2) {
      fail(context + "field 'modes' must be an array of two labels");
    }
    BeamSplitterElement element;
    element.mode_a = require_string(modes[0], "modes", context);
    element.mode_b = require_string(modes[1], "modes", context);
    element.reflectivity =
        require_number(require_field(value, "r", context), "r", context);
    return element;
  }
  if (type == "phase") {
    reject_unknown_fields(value, {"type", "mode", "phi"}, context);
    PhaseElement element;
    element.mode =
        require_string(require_field(value, "mode", context), "mode", context);
    element.phi =
        require_number(require_field(value, "phi", context), "phi", context);
    return element;
  }
  if (type == "permute") {
    reject_unknown_fields(value, {"type", "map"}, context);
    const Json& map = require_field(value, "map", context);
    if (!map.is_object()) fail(context + "field 'map' must be an object");
    PermuteElement element;
    for (const auto& [from, to] : map.items()) {
      element.map[from] = require_string(to, "map", context);
    }
    return element;
  }
  if (type == "inject") {
    reject_unknown_fields(value, {"type", "mode", "photons"}, context);
    InjectElement element;
    element.mode =
        require_string(require_field(value, "mode", context), "mode", context);
    element.photons = require_integer(require_field(value, "photons", context),
                                      "photons", context);
    return element;
  }
  if (type == "detect") {
    reject_unknown_fields(value, {"type", "mode", "expect", "model"}, context);
    DetectElement element;
    element.mode =
        require_string(require_field(value, "mode", context), "mode", context);
    element.expected = require_integer(require_field(value, "expect", context),
                                       "expect", context);
    element.model =
        parse_detector_model(require_field(value, "model", context), context);
    return element;
  }
  fail(context + "unknown element type '" + type + "'");
}

std::vector<std::string> parse_label_array(const Json& value, const char* key) {
  const std::string context = std::string("field '") + key + "': ";
  if (!value.is_array()) fail(context + "must be an array");
  std::vector<std::string> labels;
  labels.reserve(value.size());
  for (const auto& entry : value) {
    if (!entry.is_string()) fail(context + "entries must be strings");
    labels.push_back(entry.get<std::string>());
  }
  return labels;
}

Json detector_model_to_json(const DetectorModel& model) {
  Json value;
  value["kind"] =
      model.kind == DetectorModel::Kind::kIdeal ? "ideal" : "lossy";
  value["eta"] = model.eta;
  value["dark"] = model.dark;
  return value;
}

}  // namespace

Circuit parse_circuit(std::string_view json_text) {
  Json document;
  try {
    document = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& error) {
    fail(std::string("malformed JSON: ") + error.what());
  }
  if (!document.is_object()) fail("circuit file must be a JSON object");
  reject_unknown_fields(
      document, {"modes", "inputs", "outputs", "elements", "input_state"},
      "circuit: ");

  Circuit circuit;
  try {
    circuit.registry = ModeRegistry(
        parse_label_array(require_field(document, "modes", "circuit: "),
                          "modes"));
  } catch (const std::invalid_argument& error) {
    fail(std::string("field 'modes': ") + error.what());
  }
  circuit.inputs = parse_label_array(
      require_field(document, "inputs", "circuit: "), "inputs");
  circuit.outputs = parse_label_array(
      require_field(document, "outputs", "circuit: "), "outputs");

  const Json& elements = require_field(document, "elements", "circuit: ");
  if (!elements.is_array()) fail("field 'elements': must be an array");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    circuit.elements.push_back(parse_element(elements[i], i));
  }

  if (auto it = document.find("input_state"); it != document.end()) {
    if (!it->is_object()) fail("field 'input_state': must be an object");
    for (const auto& [label, count] : it->items()) {
      circuit.default_input[label] =
          require_integer(count, "input_state", "field 'input_state': ");
    }
  }

  try {
    circuit.validate();
  } catch (const std::invalid_argument& error) {
    fail(error.what());
  }
  return circuit;
}

std::string serialize_circuit(const Circuit& circuit) {
  Json document;
  document["modes"] = circuit.registry.labels();
  document["inputs"] = circuit.inputs;
  document["outputs"] = circuit.outputs;
  document["elements"] = Json::array();
  for (const auto& element : circuit.elements) {
    Json value;
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, BeamSplitterElement>) {
            value["type"] = "bs";
            value["modes"] = {e.mode_a, e.mode_b};
            value["r"] = e.reflectivity;
          } else if constexpr (std::is_same_v<T, PhaseElement>) {
            value["type"] = "phase";
            value["mode"] = e.mode;
            value["phi"] = e.phi;
          } else if constexpr (std::is_same_v<T, PermuteElement>) {
            value["type"] = "permute";
            value["map"] = Json::object();
            for (const auto& [from, to] : e.map) value["map"][from] = to;
          } else if constexpr (std::is_same_v<T, InjectElement>) {
            value["type"] = "inject";
            value["mode"] = e.mode;
            value["photons"] = e.photons;
          } else if constexpr (std::is_same_v<T, DetectElement>) {
            value["type"] = "detect";
            value["mode"] = e.mode;
            value["expect"] = e.expected;
            value["model"] = detector_model_to_json(e.model);
          }
        },
        element);
    document["elements"].push_back(std::move(value));
  }
  if (!circuit.default_input.empty()) {
    document["input_state"] = Json::object();
    for (const auto& [label, count] : circuit.default_input) {
      document["input_state"][label] = count;
    }
  }
  return document.dump(2) + "\n";
}

}  // namespace qfilter
