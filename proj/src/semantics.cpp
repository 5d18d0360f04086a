#include "linweb/semantics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace linweb {

Assignment::Assignment(VarSet g, const std::set<std::string>& trues)
    : ground(std::move(g)) {
  for (const auto& name : trues) {
    auto it = std::lower_bound(ground.begin(), ground.end(), name);
    if (it == ground.end() || *it != name)
      throw std::invalid_argument("assignment: " + name + " not in ground set");
    bits |= uint32_t{1} << (it - ground.begin());
  }
}

bool Assignment::value_of(const std::string& name) const {
  auto it = std::lower_bound(ground.begin(), ground.end(), name);
  if (it == ground.end() || *it != name)
    throw std::invalid_argument("evaluate: unbound variable " + name);
  return (bits >> (it - ground.begin())) & 1;
}

int evaluate(const Term& t, const Assignment& a) {
  switch (t->kind) {
    case TermKind::Bottom: return 0;
    case TermKind::Top: return 1;
    case TermKind::Var: {
      bool v = a.value_of(t->var.name);
      return t->var.negated ? !v : v;
    }
    case TermKind::And: return evaluate(t->left, a) && evaluate(t->right, a);
    case TermKind::Or: return evaluate(t->left, a) || evaluate(t->right, a);
  }
  throw std::logic_error("evaluate: bad kind");
}

void SetFamily::normalize() {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

void SetFamily::prune_to_minimal() {
  normalize();
  std::vector<std::vector<std::string>> keep;
  for (const auto& s : sets) {
    bool dominated = false;
    for (const auto& k : keep) {
      if (std::includes(s.begin(), s.end(), k.begin(), k.end())) {
        dominated = k != s;
        if (dominated) break;
      }
    }
    if (!dominated) keep.push_back(s);
  }
  sets = std::move(keep);
}

std::string family_to_json(const SetFamily& f) {
  nlohmann::json j;
  j["ground"] = f.ground;
  j["sets"] = f.sets;
  return j.dump();
}

SetFamily family_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SetFamily f;
  f.ground = j.at("ground").get<VarSet>();
  f.sets = j.at("sets").get<std::vector<std::vector<std::string>>>();
  f.normalize();
  return f;
}

std::string family_to_text(const SetFamily& f) {
  std::ostringstream os;
  for (const auto& s : f.sets) {
    os << '{';
    for (size_t i = 0; i < s.size(); ++i) {
      if (i) os << ',';
      os << s[i];
    }
    os << "}\n";
  }
  return os.str();
}

// ------------------------------------------------------------ truth tables

TruthTable truth_table(const Term& t, const VarSet& ground, size_t var_cap) {
  if (ground.size() > var_cap)
    throw std::invalid_argument("truth table refused: " +
                                std::to_string(ground.size()) +
                                " variables exceeds cap " + std::to_string(var_cap));
  const size_t n = ground.size();
  const size_t total = size_t{1} << n;
  const size_t nwords = std::max<size_t>(1, total >> 6);

  // pattern of variable i across assignment indices
  auto var_word = [&](size_t var, size_t word) -> uint64_t {
    if (var < 6) {
      static constexpr uint64_t base[6] = {
          0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
          0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
      return base[var];
    }
    return (word >> (var - 6)) & 1 ? ~0ull : 0ull;
  };

  std::function<void(const Term&, std::vector<uint64_t>&)> eval =
      [&](const Term& node, std::vector<uint64_t>& out) {
        switch (node->kind) {
          case TermKind::Bottom: std::fill(out.begin(), out.end(), 0); return;
          case TermKind::Top: std::fill(out.begin(), out.end(), ~0ull); return;
          case TermKind::Var: {
            auto it = std::lower_bound(ground.begin(), ground.end(), node->var.name);
            if (it == ground.end() || *it != node->var.name)
              throw std::invalid_argument("truth_table: unbound variable " + node->var.name);
            size_t idx = it - ground.begin();
            for (size_t wdi = 0; wdi < out.size(); ++wdi) {
              uint64_t v = var_word(idx, wdi);
              out[wdi] = node->var.negated ? ~v : v;
            }
            return;
          }
          case TermKind::And:
          case TermKind::Or: {
            std::vector<uint64_t> rhs(out.size());
            eval(node->left, out);
            eval(node->right, rhs);
            if (node->kind == TermKind::And)
              for (size_t i = 0; i < out.size(); ++i) out[i] &= rhs[i];
            else
              for (size_t i = 0; i < out.size(); ++i) out[i] |= rhs[i];
            return;
          }
        }
      };

  TruthTable tt;
  tt.vars = ground;
  tt.words.assign(nwords, 0);
  eval(t, tt.words);
  if (total < 64) {
    uint64_t mask = (uint64_t{1} << total) - 1;
    tt.words[0] &= mask;
  }
  return tt;
}

bool tt_equal(const TruthTable& a, const TruthTable& b) {
  return a.vars == b.vars && a.words == b.words;
}

bool tt_leq(const TruthTable& a, const TruthTable& b) {
  if (a.vars != b.vars) throw std::invalid_argument("tt_leq: ground set mismatch");
  for (size_t i = 0; i < a.words.size(); ++i)
    if (a.words[i] & ~b.words[i]) return false;
  return true;
}

// ------------------------------------------------------- monotone functions

namespace {

// Inductive minterm construction; the &-case takes unions of child minterms
// and can produce non-minimal or duplicate sets for non-read-once inputs,
// hence the antichain prune afterwards.
std::vector<std::vector<std::string>> inductive_min(const Term& t, bool minterms) {
  const TermKind branch = minterms ? TermKind::Or : TermKind::And;
  const TermKind join = minterms ? TermKind::And : TermKind::Or;
  const TermKind void_const = minterms ? TermKind::Bottom : TermKind::Top;
  std::vector<std::vector<std::string>> out;
  if (t->kind == void_const) return out;                 // F has no minterms
  if (t->kind == TermKind::Top || t->kind == TermKind::Bottom) {
    out.push_back({});                                   // T: the empty set
    return out;
  }
  if (t->kind == TermKind::Var) {
    out.push_back({t->var.name});
    return out;
  }
  auto ls = inductive_min(t->left, minterms);
  auto rs = inductive_min(t->right, minterms);
  if (t->kind == branch) {
    out = std::move(ls);
    out.insert(out.end(), rs.begin(), rs.end());
    return out;
  }
  if (t->kind != join) throw std::logic_error("inductive_min: bad kind");
  for (const auto& a : ls)
    for (const auto& b : rs) {
      std::vector<std::string> u;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
      out.push_back(std::move(u));
    }
  return out;
}

std::vector<std::vector<std::string>> sorted_sets(std::vector<std::vector<std::string>> v) {
  for (auto& s : v) std::sort(s.begin(), s.end());
  return v;
}

// Minimal transversals (hitting sets) of an antichain, by branching on the
// first unhit member. Desk-scale inputs only.
void transversals(const std::vector<std::vector<std::string>>& family,
                  std::vector<std::string>& partial,
                  std::vector<std::vector<std::string>>& out) {
  const std::vector<std::string>* unhit = nullptr;
  for (const auto& s : family) {
    bool hit = false;
    for (const auto& v : partial)
      if (std::binary_search(s.begin(), s.end(), v)) { hit = true; break; }
    if (!hit) { unhit = &s; break; }
  }
  if (!unhit) {
    out.push_back(partial);
    return;
  }
  for (const auto& v : *unhit) {
    partial.push_back(v);
    transversals(family, partial, out);
    partial.pop_back();
  }
}

} // namespace

MonotoneFunction MonotoneFunction::from_term(Term t) {
  return from_term(t, term_var_names(t));
}

MonotoneFunction MonotoneFunction::from_term(Term t, VarSet ground) {
  if (!is_negation_free(t))
    throw std::invalid_argument("monotone function: term has negative variables");
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  for (const auto& v : term_var_names(t))
    if (!std::binary_search(ground.begin(), ground.end(), v))
      throw std::invalid_argument("monotone function: variable " + v + " outside ground set");
  MonotoneFunction f;
  f.ground_ = std::move(ground);
  f.term_ = std::move(t);
  return f;
}

MonotoneFunction MonotoneFunction::from_minterms(SetFamily minterms) {
  minterms.prune_to_minimal();
  MonotoneFunction f;
  f.ground_ = minterms.ground;
  std::sort(f.ground_.begin(), f.ground_.end());
  f.min_ = std::move(minterms);
  f.min_->ground = f.ground_;
  return f;
}

const SetFamily& MonotoneFunction::minterms() const {
  if (!min_) {
    SetFamily fam;
    fam.ground = ground_;
    fam.sets = sorted_sets(inductive_min(*term_, true));
    fam.prune_to_minimal();
    min_ = std::move(fam);
  }
  return *min_;
}

const SetFamily& MonotoneFunction::maxterms() const {
  if (!max_) {
    SetFamily fam;
    fam.ground = ground_;
    if (term_) {
      fam.sets = sorted_sets(inductive_min(*term_, false));
    } else {
      // duality: maxterms are the minimal transversals of the minterms
      const auto& mins = minterms().sets;
      if (std::find(mins.begin(), mins.end(), std::vector<std::string>{}) != mins.end()) {
        // constant 1: no maxterms
      } else if (mins.empty()) {
        fam.sets.push_back({}); // constant 0: empty maxterm
      } else {
        std::vector<std::string> partial;
        transversals(mins, partial, fam.sets);
      }
    }
    fam.prune_to_minimal();
    max_ = std::move(fam);
  }
  return *max_;
}

int MonotoneFunction::eval(const Assignment& a) const {
  if (term_) return evaluate(*term_, a);
  for (const auto& s : minterms().sets) {
    bool all = true;
    for (const auto& v : s)
      if (!a.value_of(v)) { all = false; break; }
    if (all) return 1;
  }
  return 0;
}

TruthTable MonotoneFunction::table(size_t var_cap) const {
  if (term_) return truth_table(*term_, ground_, var_cap);
  // disjunction of minterm conjunctions
  Term t = mk_bottom();
  bool first = true;
  for (const auto& s : minterms().sets) {
    Term c = s.empty() ? mk_top() : mk_var(s.front());
    for (size_t i = 1; i < s.size(); ++i) c = mk_and(c, mk_var(s[i]));
    t = first ? c : mk_or(t, c);
    first = false;
  }
  return truth_table(t, ground_, var_cap);
}

MonotoneFunction threshold(const VarSet& x, size_t k) {
  VarSet ground = x;
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  const size_t n = ground.size();
  if (k > n + 1) throw std::invalid_argument("threshold: k out of range");
  SetFamily mins;
  mins.ground = ground;
  if (k == 0) {
    mins.sets.push_back({});
  } else if (k <= n) {
    std::vector<size_t> idx(k);
    // all k-subsets
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t depth) {
      if (depth == k) {
        std::vector<std::string> s;
        for (size_t i : idx) s.push_back(ground[i]);
        mins.sets.push_back(std::move(s));
        return;
      }
      for (size_t i = start; i < n; ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
  } // k == n+1: empty family, constant 0
  mins.normalize();
  return MonotoneFunction::from_minterms(std::move(mins));
}

namespace {

bool cover(const SetFamily& outer, const SetFamily& inner) {
  // every member of `outer` contains some member of `inner`
  for (const auto& s : outer.sets) {
    bool ok = false;
    for (const auto& m : inner.sets) {
      if (std::includes(s.begin(), s.end(), m.begin(), m.end())) { ok = true; break; }
    }
    if (!ok) return false;
  }
  return true;
}

} // namespace

bool entails(const MonotoneFunction& f, const MonotoneFunction& g,
             EntailMethod method, size_t var_cap) {
  if (f.ground() != g.ground())
    throw std::invalid_argument("entails: ground set mismatch");
  switch (method) {
    case EntailMethod::TruthTable:
      return tt_leq(f.table(var_cap), g.table(var_cap));
    case EntailMethod::MintermCover:
      return cover(f.minterms(), g.minterms());
    case EntailMethod::MaxtermCover:
      return cover(g.maxterms(), f.maxterms());
  }
  throw std::logic_error("entails: bad method");
}

SetFamily clique_minterms(const RelationWeb& w) {
  SetFamily f;
  f.ground = w.vertices;
  f.sets = max_cliques(w, EdgeLabel::And);
  f.normalize();
  return f;
}

SetFamily clique_maxterms(const RelationWeb& w) {
  SetFamily f;
  f.ground = w.vertices;
  f.sets = max_cliques(w, EdgeLabel::Or);
  f.normalize();
  return f;
}

ReadOnceVerdict is_read_once(const MonotoneFunction& f) {
  const auto& mins = f.minterms();
  const auto& maxs = f.maxterms();
  for (const auto& s : mins.sets)
    for (const auto& t : maxs.sets) {
      std::vector<std::string> inter;
      std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                            std::back_inserter(inter));
      if (inter.size() != 1)
        return {false, std::nullopt, std::make_pair(s, t)};
    }
  // constants: no minterm/maxterm pair at all
  if (mins.sets.empty()) return {true, mk_bottom(), std::nullopt};
  if (maxs.sets.empty()) return {true, mk_top(), std::nullopt};

  // co-occurrence web over the support: x,y are &-joined iff they share a
  // minterm. Ground variables outside every minterm are irrelevant to f and
  // stay out of the witness.
  VarSet support;
  for (const auto& s : mins.sets) support.insert(support.end(), s.begin(), s.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  RelationWeb w(support);
  for (const auto& s : mins.sets)
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        w.set(w.index_of(s[i]), w.index_of(s[j]), EdgeLabel::And);
  Term witness = term_of_web(w);
  if (!tt_equal(truth_table(witness, f.ground()), f.table()))
    throw std::logic_error("is_read_once: witness verification failed");
  return {true, witness, std::nullopt};
}

} // namespace linweb
