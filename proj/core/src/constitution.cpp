#include "socsim/constitution.h"

#include <algorithm>
#include <array>
#include <utility>

#include <nlohmann/json.hpp>

namespace socsim {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<DirectiveKind, const char*>, 14> kKindNames{{
    {DirectiveKind::kContributeFixed, "contribute_fixed"},
    {DirectiveKind::kPunishBelowMax, "punish_below_max"},
    {DirectiveKind::kBroadcastEachRound, "broadcast_each_round"},
    {DirectiveKind::kDepositFirst, "deposit_first"},
    {DirectiveKind::kGatherNeeded, "gather_needed"},
    {DirectiveKind::kMoveToLargestDeficit, "move_to_largest_deficit"},
    {DirectiveKind::kShareSurplus, "share_surplus"},
    {DirectiveKind::kReportRichCluster, "report_rich_cluster"},
    {DirectiveKind::kNoAggressionUnlessAttacked, "no_aggression_unless_attacked"},
    {DirectiveKind::kNoDeceptiveProposals, "no_deceptive_proposals"},
    {DirectiveKind::kAcceptIfNeededAndFulfillable, "accept_if_needed_and_fulfillable"},
    {DirectiveKind::kBroadcastNeeds, "broadcast_needs"},
    {DirectiveKind::kRejectOnlyIfCannotFulfill, "reject_only_if_cannot_fulfill"},
    {DirectiveKind::kAvoidHoarding, "avoid_hoarding"},
}};

json directive_to_json(const Directive& d) {
  json j;
  j["kind"] = directive_kind_name(d.kind);
  switch (d.kind) {
    case DirectiveKind::kContributeFixed:
      j["amount"] = d.amount;
      break;
    case DirectiveKind::kPunishBelowMax:
      j["tokens"] = d.tokens;
      j["per_round_cap"] = d.per_round_cap;
      break;
    case DirectiveKind::kBroadcastEachRound:
      j["text"] = d.text;
      break;
    case DirectiveKind::kShareSurplus:
      j["max_units"] = d.max_units;
      break;
    case DirectiveKind::kReportRichCluster:
      j["min_units"] = d.min_units;
      break;
    default:
      break;  // remaining kinds carry no payload
  }
  return j;
}

Directive directive_from_json(const json& j) {
  Directive d;
  d.kind = directive_kind_from_name(j.at("kind").get<std::string>());
  switch (d.kind) {
    case DirectiveKind::kContributeFixed:
      d.amount = j.at("amount").get<int>();
      break;
    case DirectiveKind::kPunishBelowMax:
      d.tokens = j.at("tokens").get<int>();
      d.per_round_cap = j.at("per_round_cap").get<int>();
      break;
    case DirectiveKind::kBroadcastEachRound:
      d.text = j.at("text").get<std::string>();
      break;
    case DirectiveKind::kShareSurplus:
      d.max_units = j.at("max_units").get<int>();
      break;
    case DirectiveKind::kReportRichCluster:
      d.min_units = j.at("min_units").get<int>();
      break;
    default:
      break;
  }
  return d;
}

void check_directive_payload(const ConstitutionRule& rule,
                             std::vector<Violation>& out) {
  const Directive& d = *rule.directive;
  auto flag = [&](const std::string& detail) {
    out.push_back({Violation::Kind::kDirectivePayloadOutOfRange, rule.name, detail});
  };
  switch (d.kind) {
    case DirectiveKind::kContributeFixed:
      if (d.amount < 0 || d.amount > 10) flag("contribute amount outside 0-10");
      break;
    case DirectiveKind::kPunishBelowMax:
      if (d.tokens < 1 || d.tokens > 3) flag("punish tokens outside 1-3");
      if (d.per_round_cap < 1) flag("per-round cap below 1");
      break;
    case DirectiveKind::kBroadcastEachRound:
      if (d.text.empty()) flag("broadcast text empty");
      break;
    case DirectiveKind::kShareSurplus:
      if (d.max_units < 1) flag("share max units below 1");
      break;
    case DirectiveKind::kReportRichCluster:
      if (d.min_units < 1) flag("report min units below 1");
      break;
    default:
      break;
  }
}

}  // namespace

const char* directive_kind_name(DirectiveKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  throw ConstitutionError("unknown directive kind enumerator");
}

DirectiveKind directive_kind_from_name(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw ConstitutionError("unknown directive kind: " + name);
}

const char* amendment_action_name(AmendmentAction a) {
  switch (a) {
    case AmendmentAction::kAdd: return "ADD";
    case AmendmentAction::kModify: return "MODIFY";
    case AmendmentAction::kRepeal: return "REPEAL";
  }
  throw ConstitutionError("unknown amendment action enumerator");
}

AmendmentAction amendment_action_from_name(const std::string& name) {
  if (name == "ADD") return AmendmentAction::kAdd;
  if (name == "MODIFY") return AmendmentAction::kModify;
  if (name == "REPEAL") return AmendmentAction::kRepeal;
  throw ConstitutionError("unknown amendment action: " + name);
}

const char* violation_kind_name(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kEmptyName: return "EmptyName";
    case Violation::Kind::kEmptyGuidance: return "EmptyGuidance";
    case Violation::Kind::kPriorityOutOfRange: return "PriorityOutOfRange";
    case Violation::Kind::kDuplicateRuleName: return "DuplicateRuleName";
    case Violation::Kind::kDirectivePayloadOutOfRange: return "DirectivePayloadOutOfRange";
    case Violation::Kind::kVersionBlankMismatch: return "VersionBlankMismatch";
  }
  throw ConstitutionError("unknown violation kind enumerator");
}

std::vector<Violation> validate_constitution(const Constitution& c) {
  std::vector<Violation> out;
  for (const ConstitutionRule& rule : c.rules) {
    if (rule.name.empty())
      out.push_back({Violation::Kind::kEmptyName, rule.name, "rule name empty"});
    if (rule.guidance.empty())
      out.push_back({Violation::Kind::kEmptyGuidance, rule.name, "guidance empty"});
    if (rule.priority < 1 || rule.priority > 5)
      out.push_back({Violation::Kind::kPriorityOutOfRange, rule.name,
                     "priority " + std::to_string(rule.priority) + " outside 1-5"});
    if (rule.directive) check_directive_payload(rule, out);
  }
  for (std::size_t i = 0; i < c.rules.size(); ++i)
    for (std::size_t j = i + 1; j < c.rules.size(); ++j)
      if (c.rules[i].name == c.rules[j].name) {
        out.push_back({Violation::Kind::kDuplicateRuleName, c.rules[i].name,
                       "rule name appears more than once"});
        j = c.rules.size();  // one report per duplicated name
      }
  if (c.version < 0)
    out.push_back({Violation::Kind::kVersionBlankMismatch, "",
                   "version is negative"});
  if (c.version == 0 && !c.rules.empty())
    out.push_back({Violation::Kind::kVersionBlankMismatch, "",
                   "version 0 requires a blank rule set"});
  return out;
}

Constitution apply_amendment(const Constitution& c, const Amendment& a) {
  Constitution next = c;
  switch (a.action) {
    case AmendmentAction::kAdd: {
      if (!a.rule)
        throw ConstitutionError("ADD amendment carries no rule payload");
      if (find_rule(c, a.rule->name))
        throw ConstitutionError("DuplicateRuleName: " + a.rule->name);
      next.rules.push_back(*a.rule);
      return next;
    }
    case AmendmentAction::kModify: {
      if (!a.rule)
        throw ConstitutionError("MODIFY amendment carries no rule payload");
      for (ConstitutionRule& rule : next.rules)
        if (rule.name == a.target_rule) {
          rule = *a.rule;
          return next;
        }
      throw ConstitutionError("UnknownTargetRule: " + a.target_rule);
    }
    case AmendmentAction::kRepeal: {
      auto it = std::find_if(next.rules.begin(), next.rules.end(),
                             [&](const ConstitutionRule& r) {
                               return r.name == a.target_rule;
                             });
      if (it == next.rules.end())
        throw ConstitutionError("UnknownTargetRule: " + a.target_rule);
      next.rules.erase(it);
      return next;
    }
  }
  throw ConstitutionError("unknown amendment action enumerator");
}

std::string serialize_constitution(const Constitution& c) {
  json doc;
  doc["version"] = c.version;
  json rules = json::array();
  for (const ConstitutionRule& rule : c.rules) {
    json r;
    r["name"] = rule.name;
    r["guidance"] = rule.guidance;
    r["summary"] = rule.summary;
    r["priority"] = rule.priority;
    if (rule.directive) r["directive"] = directive_to_json(*rule.directive);
    rules.push_back(std::move(r));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2) + "\n";  // nlohmann objects iterate keys alphabetically
}

Constitution parse_constitution(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConstitutionError(std::string("MalformedDocument: ") + e.what());
  }
  try {
    Constitution c;
    c.version = doc.at("version").get<int>();
    for (const json& r : doc.at("rules")) {
      ConstitutionRule rule;
      rule.name = r.at("name").get<std::string>();
      rule.guidance = r.at("guidance").get<std::string>();
      rule.summary = r.at("summary").get<std::string>();
      rule.priority = r.at("priority").get<int>();
      if (r.contains("directive"))
        rule.directive = directive_from_json(r.at("directive"));
      c.rules.push_back(std::move(rule));
    }
    return c;
  } catch (const json::exception& e) {
    throw ConstitutionError(std::string("MalformedDocument: ") + e.what());
  }
}

std::size_t constitution_text_length(const Constitution& c) {
  return serialize_constitution(c).size();
}

const ConstitutionRule* find_rule(const Constitution& c, const std::string& name) {
  for (const ConstitutionRule& rule : c.rules)
    if (rule.name == name) return &rule;
  return nullptr;
}

std::vector<ConstitutionRule> rules_by_priority(const Constitution& c) {
  std::vector<ConstitutionRule> out = c.rules;
  std::stable_sort(out.begin(), out.end(),
                   [](const ConstitutionRule& a, const ConstitutionRule& b) {
                     return a.priority < b.priority;
                   });
  return out;
}

}  // namespace socsim
