#include "adgraph/model.hpp"

#include <algorithm>
#include <cctype>

#include "adgraph/error.hpp"

namespace adgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kInvalidScenario: return "invalid-scenario";
    case ErrorCode::kUnknownObject: return "unknown-object";
    case ErrorCode::kUnknownEdge: return "unknown-edge";
    case ErrorCode::kUnknownAttack: return "unknown-attack";
    case ErrorCode::kUnknownDefense: return "unknown-defense";
    case ErrorCode::kUnknownTarget: return "unknown-target";
    case ErrorCode::kEmptyEntryGrants: return "empty-entry-grants";
    case ErrorCode::kEmptyTargets: return "empty-targets";
    case ErrorCode::kInvalidChain: return "invalid-chain";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kEmptyInput: return "empty-input";
  }
  return "error";
}

std::optional<int> layer_index(std::string_view layer) {
  auto it = std::find(kLayers.begin(), kLayers.end(), layer);
  if (it == kLayers.end()) return std::nullopt;
  return static_cast<int>(it - kLayers.begin());
}

bool is_permission_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isspace(u) || std::isupper(u);
  });
}

std::string to_string(const Grant& grant) {
  return "<" + grant.object + ", " + grant.permission + ">";
}

namespace {

template <typename Record>
const Record* find_by_id(const std::vector<Record>& records,
                         std::string_view id) {
  auto it = std::find_if(records.begin(), records.end(),
                         [&](const Record& r) { return r.id == id; });
  return it == records.end() ? nullptr : &*it;
}

}  // namespace

const ObjectRecord* ScenarioDoc::find_object(std::string_view id) const {
  return find_by_id(objects, id);
}

const AttackRecord* ScenarioDoc::find_attack(std::string_view id) const {
  return find_by_id(attacks, id);
}

const DefenseRecord* ScenarioDoc::find_defense(std::string_view id) const {
  return find_by_id(defenses, id);
}

}  // namespace adgraph
