#include "linweb/rewrite.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace linweb {

RewriteRule make_rule(std::string name, Term lhs, Term rhs) {
  if (term_eq(lhs, rhs))
    throw std::invalid_argument("rule " + name + ": sides must differ");
  RewriteRule r;
  r.name = std::move(name);
  r.left_linear = is_linear(lhs);
  r.right_linear = is_linear(rhs);
  auto lv = term_vars(lhs);
  for (const auto& v : term_vars(rhs))
    if (!std::binary_search(lv.begin(), lv.end(), v)) r.introduces = true;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

RewriteRule make_rule(std::string name, const std::string& lhs, const std::string& rhs) {
  return make_rule(std::move(name), parse_term(lhs), parse_term(rhs));
}

const std::vector<RewriteRule>& builtin_rules() {
  static const std::vector<RewriteRule> rules = {
      make_rule("switch", "x & (y | z)", "(x & y) | z"),
      make_rule("medial", "(w & x) | (y & z)", "(w | y) & (x | z)"),
      make_rule("cdown", "x | x", "x"),
      make_rule("cup", "x", "x & x"),
      make_rule("wdown", "x", "x | y"),
      make_rule("wup", "x & y", "x"),
      make_rule("php32",
                "(u | (v & v')) & ((w & w') | (x & x')) & ((y & y') | z)",
                "(u & (w | y)) | (w' & y') | (v' & x') | ((v | x) & z)"),
  };
  return rules;
}

RewriteRule supermix(size_t n) {
  if (n < 1) throw std::invalid_argument("supermix: arity must be >= 1");
  Term disj = mk_var("y1");
  Term conj = mk_var("y1");
  for (size_t i = 2; i <= n; ++i) {
    Term yi = mk_var("y" + std::to_string(i));
    disj = mk_or(disj, yi);
    conj = mk_and(conj, yi);
  }
  return make_rule("supermix" + std::to_string(n), mk_and(mk_var("x"), disj),
                   mk_or(mk_var("x"), conj));
}

RewriteRule builtin_rule(const std::string& name) {
  for (const auto& r : builtin_rules())
    if (r.name == name) return r;
  if (name == "s") return builtin_rule("switch");
  if (name == "m") return builtin_rule("medial");
  if (name.starts_with("supermix")) {
    size_t n = std::stoul(name.substr(8));
    return supermix(n);
  }
  throw std::invalid_argument("unknown builtin rule: " + name);
}

RuleSet ruleset_by_name(const std::string& name, Congruence cong) {
  RuleSet rs;
  rs.congruence = cong;
  if (name == "sm") {
    rs.rules = {builtin_rule("switch"), builtin_rule("medial")};
    return rs;
  }
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, ',')) rs.rules.push_back(builtin_rule(part));
  if (rs.rules.empty()) throw std::invalid_argument("empty rule set: " + name);
  return rs;
}

RuleSet parse_ruleset(const std::string& file_text) {
  RuleSet rs;
  rs.congruence = Congruence::AC;
  std::stringstream ss(file_text);
  std::string line;
  while (std::getline(ss, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first);
    if (line.starts_with("modulo")) {
      auto arg = line.substr(6);
      arg.erase(0, arg.find_first_not_of(" \t"));
      arg.erase(arg.find_last_not_of(" \t\r") + 1);
      rs.congruence = congruence_from_name(arg);
      continue;
    }
    auto colon = line.find(':');
    auto arrow = line.find("->");
    if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
      throw std::invalid_argument("rule file: expected `name: lhs -> rhs`, got: " + line);
    std::string name = line.substr(0, colon);
    name.erase(name.find_last_not_of(" \t") + 1);
    for (const auto& r : rs.rules)
      if (r.name == name) throw std::invalid_argument("rule file: duplicate name " + name);
    rs.rules.push_back(make_rule(name, parse_term(line.substr(colon + 1, arrow - colon - 1)),
                                 parse_term(line.substr(arrow + 2))));
  }
  return rs;
}

// ------------------------------------------------------------- AC matching

namespace {

struct Pat {
  enum Kind { Var, Const, List } kind;
  Variable var;                              // Var
  TermKind cst = TermKind::Bottom;           // Const
  TermKind conn = TermKind::And;             // List
  std::vector<std::shared_ptr<const Pat>> children;
};
using PatPtr = std::shared_ptr<const Pat>;

PatPtr compile_pattern(const Term& t) {
  auto p = std::make_shared<Pat>();
  switch (t->kind) {
    case TermKind::Var:
      p->kind = Pat::Var;
      p->var = t->var;
      break;
    case TermKind::Bottom:
    case TermKind::Top:
      p->kind = Pat::Const;
      p->cst = t->kind;
      break;
    case TermKind::And:
    case TermKind::Or:
      p->kind = Pat::List;
      p->conn = t->kind;
      for (const auto& c : flatten(t, t->kind)) p->children.push_back(compile_pattern(c));
      break;
  }
  return p;
}

Term unit_of(TermKind k) { return k == TermKind::And ? mk_top() : mk_bottom(); }

struct Matcher {
  Congruence cong;
  bool with_units; // ACU or ACU': unit equations available during matching

  bool bind(Substitution& sigma, const Variable& pv, const Term& value) const {
    Term v = pv.negated ? nnf_dual(value) : value;
    auto it = sigma.find(pv.name);
    if (it == sigma.end()) {
      sigma[pv.name] = v;
      return true;
    }
    return term_eq(canonical_for(cong, it->second), canonical_for(cong, v));
  }

  void match_one(const PatPtr& p, const Term& t, const Substitution& sigma,
                 std::vector<Substitution>& out) const {
    switch (p->kind) {
      case Pat::Var: {
        Substitution s = sigma;
        if (bind(s, p->var, t)) out.push_back(std::move(s));
        return;
      }
      case Pat::Const:
        if (t->kind == p->cst) out.push_back(sigma);
        return;
      case Pat::List: {
        if (t->kind == p->conn) {
          assign_parts(p->conn, p->children, 0, flatten(t, p->conn), sigma, out);
          return;
        }
        if (!with_units) return;
        // virtual unit expansion: t = t * unit, one slot takes t
        for (size_t i = 0; i < p->children.size(); ++i) {
          std::vector<Substitution> partial;
          match_one(p->children[i], t, sigma, partial);
          for (const auto& s0 : partial) {
            std::vector<Substitution> acc{s0};
            for (size_t j = 0; j < p->children.size() && !acc.empty(); ++j) {
              if (j == i) continue;
              std::vector<Substitution> next;
              for (const auto& s1 : acc) match_one(p->children[j], unit_of(p->conn), s1, next);
              acc = std::move(next);
            }
            out.insert(out.end(), acc.begin(), acc.end());
          }
        }
        return;
      }
    }
  }

  // Assign every term in `parts` to some pattern slot of a `k`-list.
  void assign_parts(TermKind k, const std::vector<PatPtr>& pats, size_t idx,
                    std::vector<Term> parts, const Substitution& sigma,
                    std::vector<Substitution>& out) const {
    if (idx == pats.size()) {
      if (parts.empty()) out.push_back(sigma);
      return;
    }
    const PatPtr& p = pats[idx];
    if (p->kind == Pat::Var) {
      if (parts.size() > 20) throw std::invalid_argument("match: chain too long");
      size_t limit = size_t{1} << parts.size();
      for (size_t mask = 0; mask < limit; ++mask) {
        if (mask == 0 && !with_units) continue;
        std::vector<Term> taken, rest;
        for (size_t i = 0; i < parts.size(); ++i)
          ((mask >> i) & 1 ? taken : rest).push_back(parts[i]);
        Term value = taken.empty() ? unit_of(k) : rebuild(k, taken);
        Substitution s = sigma;
        if (!bind(s, p->var, value)) continue;
        assign_parts(k, pats, idx + 1, rest, s, out);
      }
      return;
    }
    // structured or constant slot: takes exactly one part, or a unit under ACU
    for (size_t i = 0; i < parts.size(); ++i) {
      std::vector<Substitution> sub;
      match_one(p, parts[i], sigma, sub);
      if (sub.empty()) continue;
      std::vector<Term> rest;
      for (size_t j = 0; j < parts.size(); ++j)
        if (j != i) rest.push_back(parts[j]);
      for (const auto& s : sub) assign_parts(k, pats, idx + 1, rest, s, out);
    }
    if (with_units) {
      std::vector<Substitution> sub;
      match_one(p, unit_of(k), sigma, sub);
      for (const auto& s : sub) assign_parts(k, pats, idx + 1, parts, s, out);
    }
  }
};

// nodes that head a maximal chain (not a same-kind child of a same-kind parent)
void collect_chain_heads(const Term& t, std::vector<int>& path, TermKind parent,
                         std::vector<std::pair<std::vector<int>, Term>>& out) {
  if (t->kind != parent || (t->kind != TermKind::And && t->kind != TermKind::Or))
    out.emplace_back(path, t);
  if (t->kind == TermKind::And || t->kind == TermKind::Or) {
    path.push_back(0);
    collect_chain_heads(t->left, path, t->kind, out);
    path.back() = 1;
    collect_chain_heads(t->right, path, t->kind, out);
    path.pop_back();
  }
}

std::string fresh_name(const Term& t, size_t& counter) {
  auto names = term_var_names(t);
  for (;; ++counter) {
    std::string cand = "w" + std::to_string(counter);
    if (!std::binary_search(names.begin(), names.end(), cand)) {
      ++counter;
      return cand;
    }
  }
}

} // namespace

std::vector<DerivStep> match_steps(const Term& t, const RuleSet& rs) {
  const bool with_units =
      rs.congruence == Congruence::ACU || rs.congruence == Congruence::ACUprime;
  const bool flat = rs.congruence != Congruence::None;
  Matcher m{rs.congruence, with_units};

  std::vector<std::pair<std::vector<int>, Term>> nodes;
  std::vector<int> path;
  if (flat) {
    collect_chain_heads(t, path, TermKind::Var, nodes);
  } else {
    // every position
    std::function<void(const Term&)> walk = [&](const Term& u) {
      nodes.emplace_back(path, u);
      if (u->kind == TermKind::And || u->kind == TermKind::Or) {
        path.push_back(0);
        walk(u->left);
        path.back() = 1;
        walk(u->right);
        path.pop_back();
      }
    };
    walk(t);
  }

  std::map<std::string, DerivStep> dedup;
  size_t fresh_counter = 0;

  auto emit = [&](const RewriteRule& rule, const std::vector<int>& pos,
                  const Term& before, Substitution sigma) {
    // instantiate variables the rule introduces on the right
    for (const auto& v : term_vars(rule.rhs))
      if (!sigma.count(v.name)) sigma[v.name] = mk_var(fresh_name(t, fresh_counter));
    Term redex_rhs = substitute(rule.rhs, sigma);
    Term after = replace_at(before, pos, redex_rhs);
    DerivStep step{rule.name, before, after, pos, std::move(sigma)};
    std::string key = render_term(canonical_for(rs.congruence, after));
    auto it = dedup.find(key);
    if (it == dedup.end()) dedup.emplace(std::move(key), std::move(step));
  };

  auto plain_match = [&](const RewriteRule& rule, const PatPtr& pat,
                         const std::vector<int>& pos, const Term& node) {
    std::vector<Substitution> sigmas;
    m.match_one(pat, node, {}, sigmas);
    for (auto& s : sigmas) {
      Term redex = substitute(rule.lhs, s);
      Term before = replace_at(t, pos, redex);
      emit(rule, pos, before, std::move(s));
    }
  };

  for (const auto& rule : rs.rules) {
    PatPtr pat = compile_pattern(rule.lhs);
    for (const auto& [pos, node] : nodes) {
      if (!flat) {
        plain_match(rule, pat, pos, node);
        continue;
      }
      const bool list_node = node->kind == TermKind::And || node->kind == TermKind::Or;
      if (pat->kind == Pat::List && list_node && node->kind == pat->conn) {
        // choose the consumed sub-multiset, remainder stays in the context
        const auto parts = flatten(node, node->kind);
        if (parts.size() > 20) throw std::invalid_argument("match_steps: chain too long");
        size_t limit = size_t{1} << parts.size();
        for (size_t mask = 1; mask < limit; ++mask) {
          std::vector<Term> sel, rest;
          for (size_t i = 0; i < parts.size(); ++i)
            ((mask >> i) & 1 ? sel : rest).push_back(parts[i]);
          std::vector<Substitution> sigmas;
          m.assign_parts(node->kind, pat->children, 0, sel, {}, sigmas);
          for (auto& s : sigmas) {
            Term redex = substitute(rule.lhs, s);
            Term node_repr =
                rest.empty() ? redex : mk_connective(node->kind, redex, rebuild(node->kind, rest));
            Term before = replace_at(t, pos, node_repr);
            std::vector<int> hole = pos;
            if (!rest.empty()) hole.push_back(0);
            emit(rule, hole, before, std::move(s));
          }
        }
      } else if (pat->kind == Pat::Var) {
        // whole node...
        plain_match(rule, pat, pos, node);
        // ...and proper sub-multisets of a chain (singletons are their own nodes)
        if (list_node) {
          const auto parts = flatten(node, node->kind);
          if (parts.size() > 20) throw std::invalid_argument("match_steps: chain too long");
          size_t limit = size_t{1} << parts.size();
          for (size_t mask = 1; mask < limit; ++mask) {
            size_t count = static_cast<size_t>(std::popcount(mask));
            if (count < 2 || count == parts.size()) continue;
            std::vector<Term> sel, rest;
            for (size_t i = 0; i < parts.size(); ++i)
              ((mask >> i) & 1 ? sel : rest).push_back(parts[i]);
            Substitution s;
            if (!m.bind(s, pat->var, rebuild(node->kind, sel))) continue;
            Term redex = substitute(rule.lhs, s);
            Term node_repr = mk_connective(node->kind, redex, rebuild(node->kind, rest));
            Term before = replace_at(t, pos, node_repr);
            std::vector<int> hole = pos;
            hole.push_back(0);
            emit(rule, hole, before, std::move(s));
          }
        }
      } else {
        // constant pattern, or a list pattern against a different head
        plain_match(rule, pat, pos, node);
      }
    }
  }

  std::vector<DerivStep> out;
  out.reserve(dedup.size());
  for (auto& [key, step] : dedup) out.push_back(std::move(step));
  return out;
}

// ------------------------------------------------------------------ search

namespace {

std::string state_key(Congruence cong, const Term& t) {
  // AC classes of constant-free linear terms are exactly relation webs, so
  // the canonical render doubles as the web key; ACU searches dedup by the
  // coarser ACU' form to keep the unit junk space finite.
  if (cong == Congruence::ACU || cong == Congruence::ACUprime)
    return render_term(normalize_acu_prime(t));
  return render_term(canonical_for(cong, t));
}

} // namespace

ReachResult reachable(const Term& s, const Term& t, const RuleSet& rs, SearchBudget budget) {
  size_t n = std::max<size_t>(1, term_vars(s).size());
  size_t max_depth = budget.max_depth ? budget.max_depth : 2 * n * n * n * n;
  if (budget.unlimited) max_depth = SIZE_MAX;

  Term start = canonical_for(rs.congruence, s);
  std::string start_key = state_key(rs.congruence, s);
  std::string target_key = state_key(rs.congruence, t);

  struct Visit {
    Term term;
    std::string parent;
    DerivStep step;
  };
  std::map<std::string, Visit> visited;
  visited.emplace(start_key, Visit{start, "", {}});

  auto build = [&](const std::string& key) {
    std::vector<std::string> chain{key};
    while (true) {
      const auto& v = visited.at(chain.back());
      if (v.parent.empty()) break;
      chain.push_back(v.parent);
    }
    Derivation d;
    d.modulo = rs.congruence;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      d.lines.push_back(visited.at(*it).term);
    for (auto it = chain.rbegin(); std::next(it) != chain.rend(); ++it)
      d.steps.push_back(visited.at(*std::next(it)).step);
    return d;
  };

  if (start_key == target_key)
    return {build(start_key), false, 1};

  std::vector<std::string> frontier{start_key};
  size_t explored = 1;
  bool truncated = false;

  for (size_t depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      Term cur = visited.at(key).term;
      for (auto& step : match_steps(cur, rs)) {
        std::string k2 = state_key(rs.congruence, step.after);
        if (visited.count(k2)) continue;
        if (explored >= budget.max_states && !budget.unlimited) {
          truncated = true;
          continue;
        }
        visited.emplace(k2, Visit{canonical_for(rs.congruence, step.after), key, step});
        ++explored;
        if (k2 == target_key) return {build(k2), false, explored};
        next.push_back(std::move(k2));
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  bool exhausted = frontier.empty() && !truncated;
  return {std::nullopt, exhausted, explored};
}

// ------------------------------------------------- webs, orders, minimality

bool medial_preorder(const Term& s, const Term& t) {
  RelationWeb ws = web_of(s);
  RelationWeb wt = web_of(t);
  if (ws.vertices != wt.vertices)
    throw std::invalid_argument("medial_preorder: variable sets differ");
  const size_t n = ws.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (ws.at(i, j) == EdgeLabel::And && wt.at(i, j) != EdgeLabel::And)
        return false;
  auto is_and = [](const RelationWeb& w, size_t a, size_t b) {
    return w.at(a, b) == EdgeLabel::And;
  };
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (!(ws.at(x, y) == EdgeLabel::Or && wt.at(x, y) == EdgeLabel::And)) continue;
      // need w,z with: in <s> w&x, y&z and w|y, w|z, x|z; in <t> additionally
      // w&z while w|y, x|z stay
      bool found = false;
      for (size_t w = 0; w < n && !found; ++w) {
        if (w == x || w == y) continue;
        for (size_t z = 0; z < n && !found; ++z) {
          if (z == x || z == y || z == w) continue;
          bool in_s = is_and(ws, w, x) && is_and(ws, y, z) && !is_and(ws, w, y) &&
                      !is_and(ws, w, z) && !is_and(ws, x, z);
          bool in_t = is_and(wt, w, x) && is_and(wt, w, z) && is_and(wt, y, z) &&
                      !is_and(wt, w, y) && !is_and(wt, x, z);
          found = in_s && in_t;
        }
      }
      if (!found) return false;
    }
  return true;
}

EdgePreservation edge_preservation(const Term& lhs, const Term& rhs) {
  RelationWeb wl = web_of(lhs);
  RelationWeb wr = web_of(rhs);
  if (wl.vertices != wr.vertices)
    throw std::invalid_argument("edge_preservation: variable sets differ");
  EdgePreservation res;
  for (size_t i = 0; i < wl.size(); ++i)
    for (size_t j = i + 1; j < wl.size(); ++j) {
      if (wl.at(i, j) == EdgeLabel::Or && wr.at(i, j) != EdgeLabel::Or)
        res.preserves_or = false;
      if (wl.at(i, j) == EdgeLabel::And && wr.at(i, j) != EdgeLabel::And)
        res.preserves_and = false;
    }
  return res;
}

std::vector<RelationWeb> enumerate_p4free_webs(const VarSet& x, size_t var_cap) {
  VarSet verts = x;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  const size_t n = verts.size();
  if (n > var_cap || n > 8)
    throw std::invalid_argument("enumerate: " + std::to_string(n) +
                                " variables exceeds cap " + std::to_string(std::min<size_t>(var_cap, 8)));
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::vector<std::array<size_t, 4>> quads;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      for (size_t c = b + 1; c < n; ++c)
        for (size_t d = c + 1; d < n; ++d) quads.push_back({a, b, c, d});

  std::vector<RelationWeb> out;
  const size_t total = size_t{1} << pairs.size();
  for (size_t mask = 0; mask < total; ++mask) {
    // adjacency of the &-graph
    std::array<std::array<bool, 8>, 8> adj{};
    for (size_t e = 0; e < pairs.size(); ++e)
      if ((mask >> e) & 1) {
        auto [i, j] = pairs[e];
        adj[i][j] = adj[j][i] = true;
      }
    bool ok = true;
    for (const auto& q : quads) {
      int edges = 0;
      int degs[4] = {0, 0, 0, 0};
      for (int i = 0; i < 4 && ok; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (adj[q[i]][q[j]]) {
            ++edges;
            ++degs[i];
            ++degs[j];
          }
      if (edges == 3) {
        int mx = std::max({degs[0], degs[1], degs[2], degs[3]});
        int mn = std::min({degs[0], degs[1], degs[2], degs[3]});
        if (mx == 2 && mn == 1) { // the &-edges form a path: forbidden
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    RelationWeb w(verts);
    for (size_t e = 0; e < pairs.size(); ++e)
      if ((mask >> e) & 1) w.set(pairs[e].first, pairs[e].second, EdgeLabel::And);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Term> enumerate_linear_terms(const VarSet& x, size_t var_cap) {
  std::vector<Term> out;
  for (const auto& w : enumerate_p4free_webs(x, var_cap)) out.push_back(term_of_web(w));
  return out;
}

bool is_minimal(const Term& lhs, const Term& rhs, size_t var_cap) {
  if (!is_linear(lhs) || !is_linear(rhs))
    throw std::invalid_argument("is_minimal: sides must be linear");
  if (!is_constant_free(lhs) || !is_constant_free(rhs) || !is_negation_free(lhs) ||
      !is_negation_free(rhs))
    throw std::invalid_argument("is_minimal: sides must be constant-free and negation-free");
  VarSet vars = term_var_names(lhs);
  if (vars != term_var_names(rhs))
    throw std::invalid_argument("is_minimal: variable sets differ");
  TruthTable tl = truth_table(lhs, vars);
  TruthTable tr = truth_table(rhs, vars);
  if (!tt_leq(tl, tr)) throw std::invalid_argument("is_minimal: rule is not sound");
  for (const auto& u : enumerate_linear_terms(vars, var_cap)) {
    TruthTable tu = truth_table(u, vars);
    if (tt_leq(tl, tu) && !tt_equal(tl, tu) && tt_leq(tu, tr) && !tt_equal(tu, tr))
      return false;
  }
  return true;
}

} // namespace linweb
