#include "linweb/inference.hpp"

#include <algorithm>

#include "linweb/web.hpp"

namespace linweb {

Inference make_inference(Term lhs, Term rhs, std::string name) {
  if (term_eq(lhs, rhs))
    throw std::invalid_argument("inference: sides must differ");
  return Inference{std::move(lhs), std::move(rhs), std::move(name)};
}

Inference make_inference(const std::string& lhs, const std::string& rhs, std::string name) {
  return make_inference(parse_term(lhs), parse_term(rhs), std::move(name));
}

VarSet inference_ground(const Inference& inf) {
  VarSet g = term_var_names(inf.lhs);
  for (const auto& v : term_var_names(inf.rhs)) g.push_back(v);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

bool is_sound(const Inference& inf, size_t var_cap) {
  VarSet g = inference_ground(inf);
  return tt_leq(truth_table(inf.lhs, g, var_cap), truth_table(inf.rhs, g, var_cap));
}

namespace {

bool trivial_by_definition(const Inference& inf, const std::string& x, size_t var_cap) {
  VarSet g = inference_ground(inf);
  if (!std::binary_search(g.begin(), g.end(), x))
    throw std::invalid_argument("trivial_at: " + x + " not in ground set");
  TruthTable f = truth_table(inf.lhs, g, var_cap);
  TruthTable gg = truth_table(inf.rhs, g, var_cap);
  size_t xi = std::lower_bound(g.begin(), g.end(), x) - g.begin();
  size_t bit = size_t{1} << xi;
  size_t total = size_t{1} << g.size();
  for (size_t y = 0; y < total; ++y) {
    if (f.get(y | bit) > gg.get(y & ~bit)) return false;
  }
  return true;
}

bool covered_minus(const SetFamily& outer, const SetFamily& inner, const std::string& x) {
  // every member S of outer admits a member of inner inside S \ {x}
  for (const auto& s : outer.sets) {
    std::vector<std::string> sx;
    for (const auto& v : s)
      if (v != x) sx.push_back(v);
    bool ok = false;
    for (const auto& m : inner.sets)
      if (std::includes(sx.begin(), sx.end(), m.begin(), m.end())) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

} // namespace

bool trivial_at(const Inference& inf, const std::string& x, TrivialityMethod method,
                size_t var_cap) {
  switch (method) {
    case TrivialityMethod::Definition:
      return trivial_by_definition(inf, x, var_cap);
    case TrivialityMethod::MintermForm: {
      VarSet g = inference_ground(inf);
      auto f = MonotoneFunction::from_term(inf.lhs, g);
      auto h = MonotoneFunction::from_term(inf.rhs, g);
      return covered_minus(f.minterms(), h.minterms(), x);
    }
    case TrivialityMethod::MaxtermForm: {
      VarSet g = inference_ground(inf);
      auto f = MonotoneFunction::from_term(inf.lhs, g);
      auto h = MonotoneFunction::from_term(inf.rhs, g);
      return covered_minus(h.maxterms(), f.maxterms(), x);
    }
  }
  throw std::logic_error("trivial_at: bad method");
}

std::vector<std::string> trivial_variables(const Inference& inf, size_t var_cap) {
  std::vector<std::string> out;
  for (const auto& x : inference_ground(inf))
    if (trivial_by_definition(inf, x, var_cap)) out.push_back(x);
  return out;
}

std::vector<Variable> erasure_trivialities(const Inference& inf) {
  if (!is_linear(inf.lhs) || !is_linear(inf.rhs))
    throw std::invalid_argument("erasure_trivialities: sides must be linear");
  auto lv = term_vars(inf.lhs);
  auto rv = term_vars(inf.rhs);
  std::vector<Variable> out;
  std::set_symmetric_difference(lv.begin(), lv.end(), rv.begin(), rv.end(),
                                std::back_inserter(out));
  return out;
}

NegationElimination eliminate_negation(const Inference& inf) {
  if (!is_linear(inf.lhs) || !is_linear(inf.rhs))
    throw std::invalid_argument("eliminate_negation: sides must be linear");
  // polarity profile per base name across both sides
  std::map<std::string, std::pair<bool, bool>> seen; // positive?, negative?
  for (const Term& side : {inf.lhs, inf.rhs})
    for (const auto& v : var_occurrences(side)) {
      auto& p = seen[v.name];
      (v.negated ? p.second : p.first) = true;
    }
  for (const auto& [base, pol] : seen) {
    if (pol.first && pol.second) {
      NegationElimination res;
      res.trivial = true;
      res.trivial_base = base;
      return res;
    }
  }
  NegationElimination res;
  Substitution sigma;
  for (const auto& [base, pol] : seen) {
    if (!pol.second) continue;
    // occurs only negatively: the positive partner is unused, rename to it
    sigma[base] = mk_var(base, true); // ~base |-> dual(~base) = base
    res.renaming[base] = base;
  }
  res.renamed = Inference{substitute(inf.lhs, sigma), substitute(inf.rhs, sigma), inf.name};
  return res;
}

Detrivialization remove_trivialities(const Inference& inf, size_t search_states) {
  if (!is_negation_free(inf.lhs) || !is_negation_free(inf.rhs))
    throw std::invalid_argument("remove_trivialities: sides must be negation-free");
  if (!is_linear(inf.lhs) || !is_linear(inf.rhs))
    throw std::invalid_argument("remove_trivialities: sides must be linear");
  if (term_var_names(inf.lhs) != term_var_names(inf.rhs))
    throw std::invalid_argument("remove_trivialities: variable sets differ");
  if (!is_sound(inf))
    throw std::invalid_argument("remove_trivialities: inference is not sound");

  const VarSet ground = inference_ground(inf);
  Term s_cur = inf.lhs, t_cur = inf.rhs;
  std::vector<std::string> moved;

  // x trivial in the current pair: substituting x:=T on the left and x:=F on
  // the right keeps the pair sound and every containment monotone.
  auto find_trivial = [&]() -> std::optional<std::string> {
    VarSet cur_ground;
    for (const auto& v : ground)
      if (std::find(moved.begin(), moved.end(), v) == moved.end()) cur_ground.push_back(v);
    TruthTable f = truth_table(s_cur, cur_ground);
    TruthTable g = truth_table(t_cur, cur_ground);
    size_t total = size_t{1} << cur_ground.size();
    for (size_t xi = 0; xi < cur_ground.size(); ++xi) {
      size_t bit = size_t{1} << xi;
      bool trivial = true;
      for (size_t y = 0; y < total && trivial; ++y)
        if (f.get(y | bit) > g.get(y & ~bit)) trivial = false;
      if (trivial) return cur_ground[xi];
    }
    return std::nullopt;
  };

  while (auto x = find_trivial()) {
    s_cur = normalize_acu_prime(substitute(s_cur, {{*x, mk_top()}}));
    t_cur = normalize_acu_prime(substitute(t_cur, {{*x, mk_bottom()}}));
    moved.push_back(*x);
  }

  Detrivialization out;
  out.s_prime = s_cur;
  out.t_prime = t_cur;
  out.moved = moved;
  out.fully_trivial = is_const(s_cur) || is_const(t_cur);
  out.degenerate_identity = term_eq(s_cur, t_cur);

  // u: the target restricted to the moved variables
  Substitution kill_kept;
  for (const auto& v : ground)
    if (std::find(moved.begin(), moved.end(), v) == moved.end())
      kill_kept[v] = mk_bottom();
  out.u = moved.empty() ? mk_bottom() : normalize_acu_prime(substitute(inf.rhs, kill_kept));

  if (moved.empty()) {
    out.witness_s = Derivation{Congruence::ACU, {inf.lhs}, {}};
    out.witness_t = Derivation{Congruence::ACU, {inf.rhs}, {}};
    out.witnessed = true;
    return out;
  }

  // best-effort witness derivations in {switch, medial} modulo ACU
  RuleSet sm = ruleset_by_name("sm", Congruence::ACU);
  size_t n = ground.size();
  SearchBudget budget{4 * n * n, search_states, false};
  Term left_target = term_eq(out.s_prime, mk_bottom()) ? out.u
                     : term_eq(out.u, mk_bottom())     ? out.s_prime
                                                       : mk_or(out.s_prime, out.u);
  Term right_start = term_eq(out.t_prime, mk_bottom()) ? out.u
                     : term_eq(out.u, mk_bottom())     ? out.t_prime
                                                       : mk_or(out.t_prime, out.u);
  auto rs_res = reachable(inf.lhs, left_target, sm, budget);
  auto rt_res = reachable(right_start, inf.rhs, sm, budget);
  if (rs_res.derivation) out.witness_s = std::move(rs_res.derivation);
  if (rt_res.derivation) out.witness_t = std::move(rt_res.derivation);
  out.witnessed = out.witness_s.has_value() && out.witness_t.has_value();
  return out;
}

// --------------------------------------------------------- critical chains

namespace {

std::vector<std::string> set_minus(const std::vector<std::string>& s, const std::string& x) {
  std::vector<std::string> out;
  for (const auto& v : s)
    if (v != x) out.push_back(v);
  return out;
}

bool contains_var(const std::vector<std::string>& s, const std::string& x) {
  return std::binary_search(s.begin(), s.end(), x);
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

ChainResult critical_chains(const std::vector<Term>& lines, size_t var_cap) {
  if (lines.size() < 2)
    throw std::invalid_argument("critical_chains: need at least two lines");
  VarSet ground = term_var_names(lines.front());
  for (const auto& l : lines) {
    if (!is_linear(l) || !is_constant_free(l) || !is_negation_free(l))
      throw std::invalid_argument(
          "critical_chains: lines must be constant-free negation-free linear");
    if (term_var_names(l) != ground)
      throw std::invalid_argument("critical_chains: variable sets differ between lines");
  }
  for (size_t i = 0; i + 1 < lines.size(); ++i) {
    TruthTable a = truth_table(lines[i], ground, var_cap);
    TruthTable b = truth_table(lines[i + 1], ground, var_cap);
    if (!tt_leq(a, b) || tt_equal(a, b))
      throw std::invalid_argument("critical_chains: sequence not strictly increasing at step " +
                                  std::to_string(i));
  }

  Inference endpoints{lines.front(), lines.back(), ""};
  for (const auto& x : ground)
    if (trivial_at(endpoints, x, TrivialityMethod::Definition, var_cap))
      return {std::nullopt, x};

  std::vector<SetFamily> mins, maxs;
  for (const auto& l : lines) {
    auto f = MonotoneFunction::from_term(l, ground);
    mins.push_back(f.minterms());
    maxs.push_back(f.maxterms());
  }

  CriticalChains chains;
  chains.ground = ground;
  const size_t last = lines.size() - 1;

  for (const auto& x : ground) {
    // anchor minterm at the first line: no minterm of any line inside it may
    // omit x
    std::vector<std::string> anchor_min;
    for (const auto& s : mins.front().sets) {
      if (!contains_var(s, x)) continue;
      bool good = true;
      for (const auto& fam : mins) {
        for (const auto& si : fam.sets)
          if (subset(si, s) && !contains_var(si, x)) { good = false; break; }
        if (!good) break;
      }
      if (good) { anchor_min = s; break; }
    }
    if (anchor_min.empty())
      throw std::logic_error("critical_chains: no critical minterm for " + x);
    std::vector<std::vector<std::string>> schain{anchor_min};
    for (size_t i = 1; i <= last; ++i) {
      bool found = false;
      for (const auto& si : mins[i].sets) {
        if (contains_var(si, x) && subset(si, schain.back())) {
          schain.push_back(si);
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("critical_chains: minterm chain broke for " + x);
    }

    // anchor maxterm at the last line, chain built downward
    std::vector<std::string> anchor_max;
    for (const auto& s : maxs.back().sets) {
      if (!contains_var(s, x)) continue;
      bool good = true;
      for (const auto& fam : maxs) {
        for (const auto& ti : fam.sets)
          if (subset(ti, s) && !contains_var(ti, x)) { good = false; break; }
        if (!good) break;
      }
      if (good) { anchor_max = s; break; }
    }
    if (anchor_max.empty())
      throw std::logic_error("critical_chains: no critical maxterm for " + x);
    std::vector<std::vector<std::string>> tchain(lines.size());
    tchain[last] = anchor_max;
    for (size_t i = last; i-- > 0;) {
      bool found = false;
      for (const auto& ti : maxs[i].sets) {
        if (contains_var(ti, x) && subset(ti, tchain[i + 1])) {
          tchain[i] = ti;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("critical_chains: maxterm chain broke for " + x);
    }

    for (size_t i = 0; i <= last; ++i) {
      std::vector<std::string> inter;
      std::set_intersection(schain[i].begin(), schain[i].end(), tchain[i].begin(),
                            tchain[i].end(), std::back_inserter(inter));
      if (inter != std::vector<std::string>{x})
        throw std::logic_error("critical_chains: intersection is not {" + x + "}");
    }
    chains.min_chain[x] = std::move(schain);
    chains.max_chain[x] = std::move(tchain);
  }
  return {std::move(chains), std::nullopt};
}

ChainResult critical_chains(const Derivation& d, size_t var_cap) {
  return critical_chains(d.lines, var_cap);
}

namespace {

void count_connectives(const Term& t, size_t& ands, size_t& ors) {
  switch (t->kind) {
    case TermKind::And:
      ++ands;
      count_connectives(t->left, ands, ors);
      count_connectives(t->right, ands, ors);
      break;
    case TermKind::Or:
      ++ors;
      count_connectives(t->left, ands, ors);
      count_connectives(t->right, ands, ors);
      break;
    default: break;
  }
}

} // namespace

MeasureReport check_increasing_measure(const std::vector<Term>& lines,
                                       const CriticalChains& chains) {
  MeasureReport rep;
  const size_t n = chains.ground.size();
  rep.length = lines.size() - 1;
  rep.cubic_bound = 2 * n * n * n;

  for (size_t i = 0; i < lines.size(); ++i) {
    LineMeasures m;
    for (const auto& [x, chain] : chains.min_chain) m.nu += chain[i].size();
    for (const auto& [x, chain] : chains.max_chain) m.mu += chain[i].size();
    auto ec = edge_counts(web_of(lines[i]));
    m.e_and = ec.e_and;
    m.e_or = ec.e_or;
    count_connectives(lines[i], m.count_and, m.count_or);
    rep.lines.push_back(m);
  }

  for (size_t i = 0; i + 1 < rep.lines.size(); ++i) {
    const auto& a = rep.lines[i];
    const auto& b = rep.lines[i + 1];
    bool lex_eand = b.mu > a.mu || (b.mu == a.mu && b.e_and > a.e_and);
    bool lex_orc = b.mu > a.mu || (b.mu == a.mu && b.count_or > a.count_or);
    if (!lex_eand) {
      rep.mu_eand_increases = false;
      if (!rep.violation_step) rep.violation_step = i;
    }
    if (!lex_orc) rep.mu_orcount_increases = false;
  }
  rep.within_bound = rep.length <= rep.cubic_bound;
  return rep;
}

} // namespace linweb
