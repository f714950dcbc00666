#include <algorithm>
#include <fstream>
#include <sstream>

#include "adgraph/error.hpp"
#include "adgraph/report.hpp"
#include "adgraph/scenario.hpp"

namespace adgraph {

namespace {

// Walks one JSON document into a ScenarioDoc. Type mismatches and missing
// required fields are parse errors; anything semantic is left for
// validate_scenario.
class DocReader {
 public:
  explicit DocReader(std::string source) : source_(std::move(source)) {}

  ScenarioDoc read(const Json& root) {
    if (!root.is_object()) fail("document", "top level must be a JSON object");
    ScenarioDoc doc;
    for (const auto& [key, value] : root.items()) {
      if (key == "objects") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.objects.push_back(read_object(j, ctx));
        });
      } else if (key == "relationships") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.relationships.push_back(read_relationship(j, ctx));
        });
      } else if (key == "attacks") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.attacks.push_back(read_attack(j, ctx));
        });
      } else if (key == "defenses") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.defenses.push_back(read_defense(j, ctx));
        });
      } else if (key == "vulnerabilities") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.vulnerabilities.push_back(read_vulnerability(j, ctx));
        });
      } else if (key == "entry_grants") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.entry_grants.push_back(read_grant(j, ctx));
        });
      } else if (key == "targets") {
        each(value, key, [&](const Json& j, const std::string& ctx) {
          doc.targets.push_back(as_string(j, ctx));
        });
      } else if (key == "extensions") {
        doc.extensions = read_extensions(value, key);
      } else {
        unknown_.push_back(key);
      }
    }
    doc.unknown_keys = std::move(unknown_);
    return doc;
  }

 private:
  [[noreturn]] void fail(const std::string& ctx, const std::string& what) {
    throw Error(ErrorCode::kParse, source_ + ": " + ctx + ": " + what);
  }

  template <typename Fn>
  void each(const Json& value, const std::string& ctx, Fn&& fn) {
    if (!value.is_array()) fail(ctx, "expected an array");
    for (std::size_t i = 0; i < value.size(); ++i) {
      fn(value[i], ctx + "[" + std::to_string(i) + "]");
    }
  }

  void expect_object(const Json& j, const std::string& ctx) {
    if (!j.is_object()) fail(ctx, "expected an object");
  }

  std::string as_string(const Json& j, const std::string& ctx) {
    if (!j.is_string()) fail(ctx, "expected a string");
    return j.get<std::string>();
  }

  // Collects keys of `j` outside `known` as unknown-key paths.
  void note_unknown(const Json& j, const std::string& ctx,
                    std::initializer_list<std::string_view> known) {
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        unknown_.push_back(ctx + "." + key);
      }
    }
  }

  std::string req_string(const Json& j, const std::string& ctx,
                         const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(ctx, std::string("missing '") + key + "'");
    return as_string(*it, ctx + "." + key);
  }

  std::string opt_string(const Json& j, const std::string& ctx,
                         const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return {};
    return as_string(*it, ctx + "." + key);
  }

  double opt_number(const Json& j, const std::string& ctx, const char* key,
                    double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) fail(ctx + "." + key, "expected a number");
    return it->get<double>();
  }

  double req_number(const Json& j, const std::string& ctx, const char* key) {
    if (!j.contains(key)) fail(ctx, std::string("missing '") + key + "'");
    return opt_number(j, ctx, key, 0.0);
  }

  bool opt_bool(const Json& j, const std::string& ctx, const char* key,
                bool fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) fail(ctx + "." + key, "expected a boolean");
    return it->get<bool>();
  }

  Grant read_grant(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx, {"object", "permission"});
    return {req_string(j, ctx, "object"), req_string(j, ctx, "permission")};
  }

  std::vector<Grant> read_grants(const Json& j, const std::string& ctx) {
    std::vector<Grant> out;
    each(j, ctx, [&](const Json& g, const std::string& c) {
      out.push_back(read_grant(g, c));
    });
    return out;
  }

  ObjectRecord read_object(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx, {"id", "layer", "category", "label"});
    return {req_string(j, ctx, "id"), req_string(j, ctx, "layer"),
            req_string(j, ctx, "category"), opt_string(j, ctx, "label")};
  }

  RelationshipEdge read_relationship(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx, {"from", "to", "kind", "directed"});
    return {req_string(j, ctx, "from"), req_string(j, ctx, "to"),
            req_string(j, ctx, "kind"), opt_bool(j, ctx, "directed", false)};
  }

  AttackRecord read_attack(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx,
                 {"id", "object", "condition", "method", "a_results", "cost",
                  "severity", "detect_prob"});
    AttackRecord a;
    a.id = req_string(j, ctx, "id");
    a.object = req_string(j, ctx, "object");
    if (auto it = j.find("condition"); it != j.end()) {
      const std::string cctx = ctx + ".condition";
      if (it->is_array()) {
        a.condition = read_grants(*it, cctx);
      } else if (it->is_object()) {
        note_unknown(*it, cctx, {"grants", "entry_only"});
        if (auto g = it->find("grants"); g != it->end()) {
          a.condition = read_grants(*g, cctx + ".grants");
        }
        a.entry_only = opt_bool(*it, cctx, "entry_only", false);
      } else {
        fail(cctx, "expected an object or an array of grants");
      }
    }
    a.method = opt_string(j, ctx, "method");
    if (!j.contains("a_results")) fail(ctx, "missing 'a_results'");
    a.a_results = read_grants(j.at("a_results"), ctx + ".a_results");
    a.cost = opt_number(j, ctx, "cost", 1.0);
    a.severity = opt_number(j, ctx, "severity", 1.0);
    a.detect_prob = opt_number(j, ctx, "detect_prob", 1.0);
    return a;
  }

  DefenseRecord read_defense(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx, {"id", "cost", "method", "d_results"});
    DefenseRecord d;
    d.id = req_string(j, ctx, "id");
    d.cost = req_number(j, ctx, "cost");
    d.method = opt_string(j, ctx, "method");
    if (!j.contains("d_results")) fail(ctx, "missing 'd_results'");
    each(j.at("d_results"), ctx + ".d_results",
         [&](const Json& v, const std::string& c) {
           d.d_results.push_back(as_string(v, c));
         });
    return d;
  }

  VulnerabilityRecord read_vulnerability(const Json& j,
                                         const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx,
                 {"id", "affects_category", "yields_permission",
                  "exploit_cost", "severity"});
    VulnerabilityRecord v;
    v.id = req_string(j, ctx, "id");
    v.affects_category = req_string(j, ctx, "affects_category");
    v.yields_permission = req_string(j, ctx, "yields_permission");
    v.exploit_cost = opt_number(j, ctx, "exploit_cost", 1.0);
    v.severity = opt_number(j, ctx, "severity", 1.0);
    return v;
  }

  Extensions read_extensions(const Json& j, const std::string& ctx) {
    expect_object(j, ctx);
    note_unknown(j, ctx, {"categories"});
    Extensions e;
    if (auto it = j.find("categories"); it != j.end()) {
      each(*it, ctx + ".categories", [&](const Json& v, const std::string& c) {
        e.categories.push_back(as_string(v, c));
      });
    }
    return e;
  }

  std::string source_;
  std::vector<std::string> unknown_;
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

ScenarioDoc parse_scenario(std::string_view text, std::string_view source) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                std::string(source) + ": line " +
                    std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  return DocReader(std::string(source)).read(root);
}

ScenarioDoc load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const ScenarioDoc& doc) {
  // Full precision here: a scenario must survive save and reload unchanged.
  return to_json(doc).dump(2) + "\n";
}

}  // namespace adgraph
