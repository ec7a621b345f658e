#include "resmatch/json_io.hpp"

#include <json.hpp>

namespace resmatch {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    fail(Errc::ParseError, err.what());
  }
}

const json& member(const json& node, const char* key, const char* context) {
  auto it = node.find(key);
  if (it == node.end())
    fail(Errc::ParseError, std::string(context) + " is missing the \"" + key + "\" field");
  return *it;
}

std::string get_string(const json& node, const char* context) {
  if (!node.is_string()) fail(Errc::ParseError, std::string(context) + " must be a string");
  return node.get<std::string>();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "instance document must be a JSON object");
  RawInstance raw;
  const json& patients = member(doc, "patients", "instance document");
  if (!patients.is_array()) fail(Errc::ParseError, "\"patients\" must be an array");
  for (const json& patient : patients) raw.patients.push_back(get_string(patient, "patient id"));
  const json& categories = member(doc, "categories", "instance document");
  if (!categories.is_array()) fail(Errc::ParseError, "\"categories\" must be an array");
  for (const json& node : categories) {
    if (!node.is_object()) fail(Errc::ParseError, "category entry must be an object");
    RawCategory category;
    category.id = get_string(member(node, "id", "category entry"), "category id");
    const json& reserve = member(node, "reserve", "category entry");
    if (!reserve.is_number_integer())
      fail(Errc::ParseError, "category " + category.id + " reserve must be an integer");
    category.reserve = reserve.get<int64_t>();
    const json& priority = member(node, "priority", "category entry");
    if (!priority.is_array())
      fail(Errc::ParseError, "category " + category.id + " priority must be an array");
    for (const json& token : priority)
      category.priority.push_back(get_string(token, "priority token"));
    raw.categories.push_back(std::move(category));
  }
  return validate_instance(raw);
}

std::string serialize_instance(const Instance& instance) {
  json categories = json::array();
  for (const Category& category : instance.categories()) {
    json priority = json::array();
    for (int32_t token : category.priority.ranking) {
      if (token == kBetaToken)
        priority.push_back(kBetaMarker);
      else if (token == kEtaToken)
        priority.push_back(kEtaMarker);
      else
        priority.push_back(instance.patient_id(token));
    }
    categories.push_back(
        {{"id", category.id}, {"reserve", category.reserve}, {"priority", std::move(priority)}});
  }
  json doc = {{"patients", instance.patients()}, {"categories", std::move(categories)}};
  return doc.dump(2) + "\n";
}

Matching parse_matching(const Instance& instance, const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "matching document must be a JSON object");
  const json& assignments = member(doc, "assignments", "matching document");
  if (!assignments.is_object()) fail(Errc::ParseError, "\"assignments\" must be an object");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [patient, category] : assignments.items())
    pairs.emplace_back(patient, get_string(category, "assigned category"));
  return matching_from_pairs(instance, pairs);
}

std::string serialize_matching(const Instance& instance, const Matching& mu) {
  json assignments = json::object();
  for (int32_t i = 0; i < instance.num_patients(); ++i)
    if (mu.to_category[i] != kUnmatched)
      assignments[instance.patient_id(i)] = instance.category(mu.to_category[i]).id;
  json doc = {{"assignments", std::move(assignments)}};
  return doc.dump(2) + "\n";
}

}  // namespace resmatch
