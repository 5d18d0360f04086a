#include "linweb/term.hpp"

#include <algorithm>
#include <cctype>

namespace linweb {

Term mk_bottom() {
  static const Term b = std::make_shared<TermNode>(TermNode{TermKind::Bottom, {}, nullptr, nullptr});
  return b;
}

Term mk_top() {
  static const Term t = std::make_shared<TermNode>(TermNode{TermKind::Top, {}, nullptr, nullptr});
  return t;
}

Term mk_const(bool value) { return value ? mk_top() : mk_bottom(); }

Term mk_var(const Variable& v) {
  return std::make_shared<TermNode>(TermNode{TermKind::Var, v, nullptr, nullptr});
}

Term mk_var(std::string name, bool negated) {
  return mk_var(Variable{std::move(name), negated});
}

Term mk_and(Term a, Term b) {
  return std::make_shared<TermNode>(TermNode{TermKind::And, {}, std::move(a), std::move(b)});
}

Term mk_or(Term a, Term b) {
  return std::make_shared<TermNode>(TermNode{TermKind::Or, {}, std::move(a), std::move(b)});
}

Term mk_connective(TermKind k, Term a, Term b) {
  if (k == TermKind::And) return mk_and(std::move(a), std::move(b));
  if (k == TermKind::Or) return mk_or(std::move(a), std::move(b));
  throw std::invalid_argument("mk_connective: not a binary connective");
}

Term rebuild(TermKind k, const std::vector<Term>& children) {
  if (children.empty()) throw std::invalid_argument("rebuild: empty child list");
  Term acc = children.back();
  for (size_t i = children.size() - 1; i-- > 0;)
    acc = mk_connective(k, children[i], acc);
  return acc;
}

bool term_eq(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Bottom:
    case TermKind::Top: return true;
    case TermKind::Var: return a->var == b->var;
    case TermKind::And:
    case TermKind::Or:
      return term_eq(a->left, b->left) && term_eq(a->right, b->right);
  }
  return false;
}

int term_size(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top:
    case TermKind::Var: return 1;
    default: return 1 + term_size(t->left) + term_size(t->right);
  }
}

bool is_constant_free(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top: return false;
    case TermKind::Var: return true;
    default: return is_constant_free(t->left) && is_constant_free(t->right);
  }
}

bool is_negation_free(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top: return true;
    case TermKind::Var: return !t->var.negated;
    default: return is_negation_free(t->left) && is_negation_free(t->right);
  }
}

bool is_and(const Term& t) { return t->kind == TermKind::And; }
bool is_or(const Term& t) { return t->kind == TermKind::Or; }
bool is_var(const Term& t) { return t->kind == TermKind::Var; }
bool is_const(const Term& t) {
  return t->kind == TermKind::Bottom || t->kind == TermKind::Top;
}

static void collect_occurrences(const Term& t, std::vector<Variable>& out) {
  switch (t->kind) {
    case TermKind::Var: out.push_back(t->var); break;
    case TermKind::And:
    case TermKind::Or:
      collect_occurrences(t->left, out);
      collect_occurrences(t->right, out);
      break;
    default: break;
  }
}

std::vector<Variable> var_occurrences(const Term& t) {
  std::vector<Variable> out;
  collect_occurrences(t, out);
  return out;
}

std::vector<Variable> term_vars(const Term& t) {
  auto occ = var_occurrences(t);
  std::sort(occ.begin(), occ.end());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  return occ;
}

std::vector<std::string> term_var_names(const Term& t) {
  std::vector<std::string> names;
  for (const auto& v : var_occurrences(t)) names.push_back(v.name);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

bool is_linear(const Term& t) {
  auto occ = var_occurrences(t);
  std::sort(occ.begin(), occ.end());
  return std::adjacent_find(occ.begin(), occ.end()) == occ.end();
}

Term nnf_dual(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom: return mk_top();
    case TermKind::Top: return mk_bottom();
    case TermKind::Var: return mk_var(t->var.dual());
    case TermKind::And: return mk_or(nnf_dual(t->left), nnf_dual(t->right));
    case TermKind::Or: return mk_and(nnf_dual(t->left), nnf_dual(t->right));
  }
  throw std::logic_error("nnf_dual: bad kind");
}

Term substitute(const Term& t, const Substitution& sigma) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top: return t;
    case TermKind::Var: {
      auto it = sigma.find(t->var.name);
      if (it == sigma.end()) return t;
      return t->var.negated ? nnf_dual(it->second) : it->second;
    }
    case TermKind::And: return mk_and(substitute(t->left, sigma), substitute(t->right, sigma));
    case TermKind::Or: return mk_or(substitute(t->left, sigma), substitute(t->right, sigma));
  }
  throw std::logic_error("substitute: bad kind");
}

Term subterm_at(const Term& t, const std::vector<int>& path) {
  Term cur = t;
  for (int step : path) {
    if (cur->kind != TermKind::And && cur->kind != TermKind::Or)
      throw std::invalid_argument("subterm_at: path descends into a leaf");
    cur = step == 0 ? cur->left : cur->right;
  }
  return cur;
}

Term replace_at(const Term& t, const std::vector<int>& path, const Term& u) {
  if (path.empty()) return u;
  std::vector<int> rest(path.begin() + 1, path.end());
  if (t->kind != TermKind::And && t->kind != TermKind::Or)
    throw std::invalid_argument("replace_at: path descends into a leaf");
  if (path.front() == 0)
    return mk_connective(t->kind, replace_at(t->left, rest, u), t->right);
  return mk_connective(t->kind, t->left, replace_at(t->right, rest, u));
}

Term apply_context(const Context& c, const Term& u) {
  return replace_at(c.base, c.hole, u);
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected identifier", pos);
    ++pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  Term atom() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Term t = disj();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')')
        throw ParseError("expected ')'", pos);
      ++pos;
      return t;
    }
    if (c == '~') {
      size_t neg_pos = pos;
      ++pos;
      skip_ws();
      if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos])))
        throw ParseError("negation applied to a non-variable", neg_pos);
      std::string name = ident();
      if (name == "T" || name == "F")
        throw ParseError("negation applied to a non-variable", neg_pos);
      return mk_var(name, true);
    }
    std::string name = ident();
    if (name == "T") return mk_top();
    if (name == "F") return mk_bottom();
    return mk_var(name, false);
  }

  Term chain(TermKind k, char op, Term (Parser::*sub)()) {
    std::vector<Term> parts{(this->*sub)()};
    while (peek() == op) {
      ++pos;
      parts.push_back((this->*sub)());
    }
    return rebuild(k, parts);
  }

  Term conj() { return chain(TermKind::And, '&', &Parser::atom); }
  Term disj() { return chain(TermKind::Or, '|', &Parser::conj); }
};

} // namespace

Term parse_term(std::string_view text) {
  Parser p{text};
  Term t = p.disj();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return t;
}

// -------------------------------------------------------------- rendering

namespace {

// Precedence: Or = 1, And = 2, leaf = 3. A child gets parentheses when its
// precedence is lower than the parent's, or when it repeats the parent's
// connective in the left slot (the parser associates chains to the right).
void render_rec(const Term& t, std::string& out, int parent_prec, bool left_slot) {
  switch (t->kind) {
    case TermKind::Bottom: out += 'F'; return;
    case TermKind::Top: out += 'T'; return;
    case TermKind::Var: out += t->var.render(); return;
    case TermKind::And:
    case TermKind::Or: {
      int prec = t->kind == TermKind::And ? 2 : 1;
      bool parens = prec < parent_prec || (prec == parent_prec && left_slot);
      if (parens) out += '(';
      char op = t->kind == TermKind::And ? '&' : '|';
      render_rec(t->left, out, prec, true);
      out += ' ';
      out += op;
      out += ' ';
      render_rec(t->right, out, prec, false);
      if (parens) out += ')';
      return;
    }
  }
}

} // namespace

std::string render_term(const Term& t) {
  std::string out;
  render_rec(t, out, 0, false);
  return out;
}

// ---------------------------------------------------------- canonical forms

std::vector<Term> flatten(const Term& t, TermKind k) {
  std::vector<Term> ordered;
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = work.back();
    work.pop_back();
    if (cur->kind == k) {
      work.push_back(cur->right);
      work.push_back(cur->left);
    } else {
      ordered.push_back(cur);
    }
  }
  return ordered;
}

namespace {

Term sort_and_rebuild(TermKind k, std::vector<Term> children) {
  if (children.size() == 1) return children.front();
  std::vector<std::pair<std::string, Term>> keyed;
  keyed.reserve(children.size());
  for (auto& c : children) keyed.emplace_back(render_term(c), c);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> sorted;
  sorted.reserve(keyed.size());
  for (auto& [key, c] : keyed) sorted.push_back(c);
  return rebuild(k, sorted);
}

} // namespace

Term ac_canonical(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top:
    case TermKind::Var: return t;
    case TermKind::And:
    case TermKind::Or: {
      std::vector<Term> kids;
      for (const auto& c : flatten(t, t->kind)) kids.push_back(ac_canonical(c));
      return sort_and_rebuild(t->kind, kids);
    }
  }
  throw std::logic_error("ac_canonical: bad kind");
}

Term acu_canonical(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top:
    case TermKind::Var: return t;
    case TermKind::And:
    case TermKind::Or: {
      const bool conj = t->kind == TermKind::And;
      const TermKind unit = conj ? TermKind::Top : TermKind::Bottom;
      const TermKind stray = conj ? TermKind::Bottom : TermKind::Top;
      std::vector<Term> kids;
      bool saw_stray = false;
      for (const auto& raw : flatten(t, t->kind)) {
        Term c = acu_canonical(raw);
        if (c->kind == unit) continue;          // x&T = x, xvF = x
        if (c->kind == stray) {                 // F&F = F, TvT = T
          saw_stray = true;
          continue;
        }
        kids.push_back(c);
      }
      if (saw_stray) kids.push_back(mk_const(!conj));
      if (kids.empty()) return mk_const(conj);  // all children were units
      return sort_and_rebuild(t->kind, kids);
    }
  }
  throw std::logic_error("acu_canonical: bad kind");
}

Term normalize_acu_prime(const Term& t) {
  switch (t->kind) {
    case TermKind::Bottom:
    case TermKind::Top:
    case TermKind::Var: return t;
    case TermKind::And:
    case TermKind::Or: {
      const bool conj = t->kind == TermKind::And;
      const TermKind unit = conj ? TermKind::Top : TermKind::Bottom;
      const TermKind absorb = conj ? TermKind::Bottom : TermKind::Top;
      std::vector<Term> kids;
      for (const auto& raw : flatten(t, t->kind)) {
        Term c = normalize_acu_prime(raw);
        if (c->kind == absorb) return mk_const(!conj); // x&F = F, xvT = T
        if (c->kind == unit) continue;
        kids.push_back(c);
      }
      if (kids.empty()) return mk_const(conj);
      return sort_and_rebuild(t->kind, kids);
    }
  }
  throw std::logic_error("normalize_acu_prime: bad kind");
}

bool ac_equal(const Term& a, const Term& b) {
  return term_eq(ac_canonical(a), ac_canonical(b));
}

} // namespace linweb
