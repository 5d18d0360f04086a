#ifndef LINWEB_TERM_HPP
#define LINWEB_TERM_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace linweb {

// Propositional variable in negation normal form. Each base name comes in a
// dual pair {x, ~x}; the bare name is the positive member of the pair.
struct Variable {
  std::string name;
  bool negated = false;

  Variable dual() const { return {name, !negated}; }
  std::string render() const { return negated ? "~" + name : name; }

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.negated == b.negated;
  }
  friend auto operator<=>(const Variable& a, const Variable& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return a.negated <=> b.negated;
  }
};

enum class TermKind : uint8_t { Bottom, Top, Var, And, Or };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// NNF term over {&, |, T, F} with negation only on variables. Nodes are
// immutable and freely shared.
struct TermNode {
  TermKind kind;
  Variable var;     // Var only
  Term left, right; // And/Or only
};

Term mk_bottom();
Term mk_top();
Term mk_const(bool value);
Term mk_var(const Variable& v);
Term mk_var(std::string name, bool negated = false);
Term mk_and(Term a, Term b);
Term mk_or(Term a, Term b);
Term mk_connective(TermKind k, Term a, Term b);

// Right fold of a nonempty child list under one connective; a singleton list
// is returned as-is.
Term rebuild(TermKind k, const std::vector<Term>& children);

bool term_eq(const Term& a, const Term& b);
// Total number of variable and function symbols (constants included).
int term_size(const Term& t);
bool is_constant_free(const Term& t);
bool is_negation_free(const Term& t);
bool is_and(const Term& t);
bool is_or(const Term& t);
bool is_var(const Term& t);
bool is_const(const Term& t);

// Distinct variables, sorted. Positive and negative occurrences of the same
// base name are distinct variables.
std::vector<Variable> term_vars(const Term& t);
// Distinct base names, sorted.
std::vector<std::string> term_var_names(const Term& t);
// Variable occurrences left to right.
std::vector<Variable> var_occurrences(const Term& t);
// True iff every variable of the term occurs exactly once.
bool is_linear(const Term& t);

// Substitution keyed by the positive member of each dual pair; a negative
// occurrence ~x is replaced by the De Morgan dual of the image of x.
using Substitution = std::map<std::string, Term>;
Term substitute(const Term& t, const Substitution& sigma);
Term nnf_dual(const Term& t);

// One-hole context: a scaffold term plus the path (0 = left, 1 = right) of
// the hole position.
struct Context {
  Term base;
  std::vector<int> hole;
};
Term apply_context(const Context& c, const Term& u);
Term subterm_at(const Term& t, const std::vector<int>& path);
Term replace_at(const Term& t, const std::vector<int>& path, const Term& u);

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

// Grammar: term := disj; disj := conj ('|' conj)*; conj := atom ('&' atom)*;
// atom := 'T' | 'F' | '~'? ident | '(' term ')'; ident := [a-zA-Z][a-zA-Z0-9_']*.
// Whitespace insignificant; n-ary chains are re-associated to the right.
Term parse_term(std::string_view text);
std::string render_term(const Term& t);

// N-ary view of a nested chain of one connective.
std::vector<Term> flatten(const Term& t, TermKind k);

// Canonical representative of the AC class: flatten, canonicalize children,
// sort by rendered string, re-associate right. Two terms are AC-equivalent
// iff their canonical forms are equal.
Term ac_canonical(const Term& t);
// AC plus the unit laws xvF=x, x&T=x, TvT=T, F&F=F. Stray constants that the
// unit laws cannot remove (F under &, T under v) are kept.
Term acu_canonical(const Term& t);
// AC plus units and absorption xvT=T, x&F=F. The result is T, F or a
// constant-free term; linear inputs get their unique canonical form.
Term normalize_acu_prime(const Term& t);

bool ac_equal(const Term& a, const Term& b);

} // namespace linweb

#endif
