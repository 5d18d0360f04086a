#include "linweb/derivation.hpp"

#include <json.hpp>

namespace linweb {

std::string congruence_name(Congruence c) {
  switch (c) {
    case Congruence::None: return "none";
    case Congruence::AC: return "AC";
    case Congruence::ACU: return "ACU";
    case Congruence::ACUprime: return "ACU'";
  }
  throw std::logic_error("congruence_name: bad value");
}

Congruence congruence_from_name(const std::string& name) {
  if (name == "none") return Congruence::None;
  if (name == "AC" || name == "ac") return Congruence::AC;
  if (name == "ACU" || name == "acu") return Congruence::ACU;
  if (name == "ACU'" || name == "acu'" || name == "ACUprime") return Congruence::ACUprime;
  throw std::invalid_argument("unknown congruence: " + name);
}

Term canonical_for(Congruence c, const Term& t) {
  switch (c) {
    case Congruence::None: return t;
    case Congruence::AC: return ac_canonical(t);
    case Congruence::ACU: return acu_canonical(t);
    case Congruence::ACUprime: return normalize_acu_prime(t);
  }
  throw std::logic_error("canonical_for: bad value");
}

std::string derivation_to_json(const Derivation& d) {
  nlohmann::json j;
  j["modulo"] = congruence_name(d.modulo);
  auto lines = nlohmann::json::array();
  for (const auto& l : d.lines) lines.push_back(render_term(l));
  j["lines"] = lines;
  auto steps = nlohmann::json::array();
  for (const auto& s : d.steps) {
    nlohmann::json js;
    js["rule"] = s.rule;
    js["position"] = s.position;
    nlohmann::json subst = nlohmann::json::object();
    for (const auto& [v, t] : s.subst) subst[v] = render_term(t);
    js["subst"] = subst;
    js["before"] = render_term(s.before);
    js["after"] = render_term(s.after);
    steps.push_back(js);
  }
  j["steps"] = steps;
  return j.dump();
}

Derivation derivation_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Derivation d;
  d.modulo = congruence_from_name(j.at("modulo").get<std::string>());
  for (const auto& l : j.at("lines")) d.lines.push_back(parse_term(l.get<std::string>()));
  if (j.contains("steps")) {
    for (const auto& js : j.at("steps")) {
      DerivStep s;
      s.rule = js.at("rule").get<std::string>();
      if (js.contains("position")) s.position = js.at("position").get<std::vector<int>>();
      if (js.contains("subst"))
        for (auto it = js.at("subst").begin(); it != js.at("subst").end(); ++it)
          s.subst[it.key()] = parse_term(it.value().get<std::string>());
      if (js.contains("before")) s.before = parse_term(js.at("before").get<std::string>());
      if (js.contains("after")) s.after = parse_term(js.at("after").get<std::string>());
      d.steps.push_back(std::move(s));
    }
  }
  if (!d.lines.empty() && d.steps.size() + 1 != d.lines.size())
    throw std::invalid_argument("derivation json: line/step count mismatch");
  return d;
}

} // namespace linweb
