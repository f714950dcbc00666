#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "adgraph/error.hpp"
#include "adgraph/scenario.hpp"

namespace adgraph {

namespace {

class Checker {
 public:
  explicit Checker(const ScenarioDoc& doc) : doc_(doc) {
    for (const auto& o : doc.objects) objects_.insert(o.id);
    for (const auto& a : doc.attacks) attacks_.insert(a.id);
    categories_.insert(kCategories.begin(), kCategories.end());
    categories_.insert(doc.extensions.categories.begin(),
                       doc.extensions.categories.end());
  }

  ValidationReport run() {
    check_duplicates(doc_.objects, "object");
    check_duplicates(doc_.attacks, "attack");
    check_duplicates(doc_.defenses, "defense");
    check_duplicates(doc_.vulnerabilities, "vulnerability");
    for (const auto& c : doc_.extensions.categories) {
      if (c.empty()) error("extension", c, "empty category token");
    }
    for (const auto& o : doc_.objects) check_object(o);
    for (const auto& r : doc_.relationships) check_relationship(r);
    for (const auto& a : doc_.attacks) check_attack(a);
    for (const auto& d : doc_.defenses) check_defense(d);
    for (const auto& v : doc_.vulnerabilities) check_vulnerability(v);
    for (const auto& g : doc_.entry_grants) {
      check_grant(g, "entry_grant", to_string(g), "entry grant");
    }
    for (const auto& t : doc_.targets) {
      if (!objects_.contains(t)) error("target", t, "unknown object '" + t + "'");
    }
    for (const auto& k : doc_.unknown_keys) {
      warning("document", k, "unknown key");
    }
    std::sort(report_.errors.begin(), report_.errors.end());
    std::sort(report_.warnings.begin(), report_.warnings.end());
    return std::move(report_);
  }

 private:
  void error(std::string cls, std::string id, std::string msg) {
    report_.errors.push_back({std::move(cls), std::move(id), std::move(msg)});
  }
  void warning(std::string cls, std::string id, std::string msg) {
    report_.warnings.push_back({std::move(cls), std::move(id), std::move(msg)});
  }

  template <typename Record>
  void check_duplicates(const std::vector<Record>& records, const char* cls) {
    std::map<std::string, int> seen;
    for (const auto& r : records) {
      if (r.id.empty()) error(cls, r.id, "empty id");
      if (++seen[r.id] == 2) error(cls, r.id, "duplicate id");
    }
  }

  void check_object_ref(const std::string& object, const std::string& cls,
                        const std::string& id, const std::string& what) {
    if (!objects_.contains(object)) {
      error(cls, id, what + " names unknown object '" + object + "'");
    }
  }

  void check_grant(const Grant& g, const std::string& cls,
                   const std::string& id, const std::string& what) {
    check_object_ref(g.object, cls, id, what);
    if (!is_permission_token(g.permission)) {
      error(cls, id, what + " has invalid permission '" + g.permission + "'");
    }
  }

  void check_non_negative(double v, const std::string& cls,
                          const std::string& id, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      error(cls, id, std::string(field) + " out of range (must be >= 0)");
    }
  }

  void check_object(const ObjectRecord& o) {
    if (!layer_index(o.layer)) {
      error("object", o.id, "unknown layer '" + o.layer + "'");
    }
    if (!categories_.contains(o.category)) {
      error("object", o.id, "unknown category '" + o.category + "'");
    }
  }

  void check_relationship(const RelationshipEdge& r) {
    const std::string id = r.from + "->" + r.to;
    check_object_ref(r.from, "relationship", id, "from");
    check_object_ref(r.to, "relationship", id, "to");
    if (r.kind.empty()) error("relationship", id, "empty kind");
    const auto* from = doc_.find_object(r.from);
    const auto* to = doc_.find_object(r.to);
    if (from && to && from->layer != to->layer) {
      bool allowed = std::find(kVerticalKinds.begin(), kVerticalKinds.end(),
                               r.kind) != kVerticalKinds.end();
      if (!allowed) {
        error("relationship", id,
              "vertical edge has kind '" + r.kind +
                  "' (needs functional-support, resource-sharing, "
                  "management or orchestration)");
      }
    }
  }

  bool linked(const std::string& from, const std::string& to) const {
    return std::any_of(doc_.relationships.begin(), doc_.relationships.end(),
                       [&](const RelationshipEdge& r) {
                         return (r.from == from && r.to == to) ||
                                (!r.directed && r.from == to && r.to == from);
                       });
  }

  void check_attack(const AttackRecord& a) {
    check_object_ref(a.object, "attack", a.id, "object");
    for (const auto& g : a.condition) check_grant(g, "attack", a.id, "condition");
    if (a.a_results.empty()) error("attack", a.id, "a_results is empty");
    for (std::size_t i = 0; i < a.a_results.size(); ++i) {
      const Grant& g = a.a_results[i];
      check_grant(g, "attack", a.id, "a_result");
      if (g.object != a.object && objects_.contains(g.object) &&
          objects_.contains(a.object) && !linked(a.object, g.object)) {
        warning("attack", a.id,
                "edge #" + std::to_string(i) + " " + a.object + "->" +
                    g.object + " has no relationship in the base graph");
      }
    }
    check_non_negative(a.cost, "attack", a.id, "cost");
    check_non_negative(a.severity, "attack", a.id, "severity");
    if (!(a.detect_prob >= 0.0 && a.detect_prob <= 1.0)) {
      error("attack", a.id, "detect_prob out of range (must be in [0, 1])");
    }
  }

  void check_defense(const DefenseRecord& d) {
    check_non_negative(d.cost, "defense", d.id, "cost");
    if (d.d_results.empty()) error("defense", d.id, "d_results is empty");
    for (const auto& id : d.d_results) {
      if (!attacks_.contains(id)) {
        error("defense", d.id, "d_result names unknown attack '" + id + "'");
      }
    }
  }

  void check_vulnerability(const VulnerabilityRecord& v) {
    if (!categories_.contains(v.affects_category)) {
      error("vulnerability", v.id,
            "unknown category '" + v.affects_category + "'");
    }
    if (!is_permission_token(v.yields_permission)) {
      error("vulnerability", v.id,
            "invalid permission '" + v.yields_permission + "'");
    }
    check_non_negative(v.exploit_cost, "vulnerability", v.id, "exploit_cost");
    check_non_negative(v.severity, "vulnerability", v.id, "severity");
  }

  const ScenarioDoc& doc_;
  std::set<std::string> objects_;
  std::set<std::string> attacks_;
  std::set<std::string, std::less<>> categories_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_scenario(const ScenarioDoc& doc) {
  return Checker(doc).run();
}

void require_valid(const ScenarioDoc& doc) {
  auto report = validate_scenario(doc);
  if (report.valid()) return;
  std::string msg = "scenario has " + std::to_string(report.errors.size()) +
                    " error(s)";
  for (std::size_t i = 0; i < report.errors.size() && i < 3; ++i) {
    const auto& e = report.errors[i];
    msg += "; " + e.record_class + " " + e.id + ": " + e.message;
  }
  throw Error(ErrorCode::kInvalidScenario, msg);
}

Derivation derive_attacks(const ScenarioDoc& doc, double default_detect_prob) {
  require_valid(doc);
  Derivation out;
  for (const auto& v : doc.vulnerabilities) {
    for (const auto& o : doc.objects) {
      if (o.category != v.affects_category) continue;
      AttackRecord a;
      a.id = "drv:" + v.id + ":" + o.id;
      if (doc.find_attack(a.id)) {
        out.violations.push_back(
            {"attack", a.id, "derived id collides with an existing attack"});
        continue;
      }
      a.object = o.id;
      a.condition = {{o.id, "read"}};
      a.method = "exploit " + v.id;
      a.a_results = {{o.id, v.yields_permission}};
      a.cost = v.exploit_cost;
      a.severity = v.severity;
      a.detect_prob = default_detect_prob;
      out.attacks.push_back(std::move(a));
    }
  }
  std::sort(out.attacks.begin(), out.attacks.end(),
            [](const AttackRecord& x, const AttackRecord& y) {
              return x.id < y.id;
            });
  std::sort(out.violations.begin(), out.violations.end());
  return out;
}

ScenarioDoc with_derived_attacks(const ScenarioDoc& doc,
                                 double default_detect_prob) {
  ScenarioDoc merged = doc;
  auto derived = derive_attacks(doc, default_detect_prob);
  merged.attacks.insert(merged.attacks.end(), derived.attacks.begin(),
                        derived.attacks.end());
  return merged;
}

}  // namespace adgraph
