#ifndef LINWEB_INFERENCE_HPP
#define LINWEB_INFERENCE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linweb/derivation.hpp"
#include "linweb/rewrite.hpp"
#include "linweb/semantics.hpp"
#include "linweb/term.hpp"

namespace linweb {

struct Inference {
  Term lhs, rhs;
  std::string name;
};

Inference make_inference(Term lhs, Term rhs, std::string name = "");
Inference make_inference(const std::string& lhs, const std::string& rhs,
                         std::string name = "");

// Base names of both sides.
VarSet inference_ground(const Inference& inf);

// Soundness = validity of lhs <= rhs over the shared ground set, negation
// allowed (negative occurrences read the complemented bit).
bool is_sound(const Inference& inf, size_t var_cap = kDefaultTruthTableCap);

enum class TrivialityMethod { Definition, MintermForm, MaxtermForm };

// f -> g is trivial at x when f(Y u {x}) <= g(Y \ {x}) for all Y. The
// minterm/maxterm forms require negation-free sides; all methods agree.
bool trivial_at(const Inference& inf, const std::string& x,
                TrivialityMethod method = TrivialityMethod::Definition,
                size_t var_cap = kDefaultTruthTableCap);
std::vector<std::string> trivial_variables(const Inference& inf,
                                           size_t var_cap = kDefaultTruthTableCap);

// Variables occurring in exactly one side of a linear rule; each is a
// guaranteed triviality witness.
std::vector<Variable> erasure_trivialities(const Inference& inf);

struct NegationElimination {
  bool trivial = false;
  std::string trivial_base;                       // set when trivial
  std::optional<Inference> renamed;               // set when not trivial
  std::map<std::string, std::string> renaming;    // old negative base -> new name
};
// Uniformly negative base names get renamed positive; a base name occurring
// with both polarities forces a triviality verdict.
NegationElimination eliminate_negation(const Inference& inf);

struct Detrivialization {
  Term s_prime, t_prime;              // nontrivial core (may be constant)
  Term u;                             // moved-aside remainder, F when empty
  std::vector<std::string> moved;     // moved variables in order
  bool fully_trivial = false;         // core collapsed to constants
  bool degenerate_identity = false;   // s_prime == t_prime
  std::optional<Derivation> witness_s; // s ->* s_prime v u
  std::optional<Derivation> witness_t; // t_prime v u ->* t
  bool witnessed = false;
};

// Moves trivial variables aside one at a time: x trivial in s -> t means
// s[x:=T] <= t[x:=F], so the core pair (s[x:=T], t[x:=F]) stays sound and
// s <= s'vu, t'vu <= t hold by monotonicity with u = t restricted to the
// moved variables. Witness derivations in {switch, medial} modulo ACU are
// sought by bounded search and flagged when the budget runs out.
Detrivialization remove_trivialities(const Inference& inf,
                                     size_t search_states = 50'000);

struct CriticalChains {
  VarSet ground;
  // chains indexed per line; minterm chains shrink, maxterm chains grow
  std::map<std::string, std::vector<std::vector<std::string>>> min_chain;
  std::map<std::string, std::vector<std::vector<std::string>>> max_chain;
};

struct ChainResult {
  std::optional<CriticalChains> chains;
  std::optional<std::string> trivial_endpoint_at;
};

// For a strictly increasing sequence of constant-free negation-free linear
// terms: per-variable critical minterm/maxterm chains with S n T = {x}
// throughout, or the endpoint triviality that rules them out.
ChainResult critical_chains(const std::vector<Term>& lines,
                            size_t var_cap = kDefaultTruthTableCap);
ChainResult critical_chains(const Derivation& d,
                            size_t var_cap = kDefaultTruthTableCap);

struct LineMeasures {
  size_t nu = 0, mu = 0;          // sums of critical minterm/maxterm sizes
  size_t e_and = 0, e_or = 0;     // web edge counts
  size_t count_and = 0, count_or = 0; // connective counts
};

struct MeasureReport {
  std::vector<LineMeasures> lines;
  bool mu_eand_increases = true;   // lexicographic (mu, e_and) per step
  bool mu_orcount_increases = true; // lexicographic (mu, #or) per step
  std::optional<size_t> violation_step;
  size_t length = 0;
  size_t cubic_bound = 0;          // 2 n^3
  bool within_bound = true;
};

MeasureReport check_increasing_measure(const std::vector<Term>& lines,
                                       const CriticalChains& chains);

} // namespace linweb

#endif
