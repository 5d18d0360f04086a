#ifndef LINWEB_REWRITE_HPP
#define LINWEB_REWRITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "linweb/derivation.hpp"
#include "linweb/semantics.hpp"
#include "linweb/term.hpp"
#include "linweb/web.hpp"

namespace linweb {

struct RewriteRule {
  std::string name;
  Term lhs, rhs;
  bool left_linear = false;
  bool right_linear = false;
  bool introduces = false; // rhs has variables absent from lhs (weakening)
};

RewriteRule make_rule(std::string name, Term lhs, Term rhs);
RewriteRule make_rule(std::string name, const std::string& lhs, const std::string& rhs);

struct RuleSet {
  std::vector<RewriteRule> rules;
  Congruence congruence = Congruence::AC;
};

// Built-in catalogue: switch, medial, contraction/cocontraction,
// weakening/coweakening, the ten-variable rule php32, and the supermix
// family by arity.
const std::vector<RewriteRule>& builtin_rules();
RewriteRule builtin_rule(const std::string& name); // supports "supermixN"
RewriteRule supermix(size_t n);

// Named shorthand sets ("sm", "s", "m", "smcw", ...) or a rule file.
RuleSet ruleset_by_name(const std::string& name, Congruence cong = Congruence::AC);
RuleSet parse_ruleset(const std::string& file_text);

// All one-step reducts of t modulo the set's congruence. Matching works on
// flattened n-ary views: a rule connective matches any sub-multiset of a
// chain, the remainder stays in the context. Under ACU the unit equations
// may feed bare constants into pattern slots. Results are deduplicated by
// canonical form and sorted.
std::vector<DerivStep> match_steps(const Term& t, const RuleSet& rs);

struct SearchBudget {
  size_t max_depth = 0;      // 0 = derive from term size (2 n^4)
  size_t max_states = 1'000'000;
  bool unlimited = false;
};

struct ReachResult {
  std::optional<Derivation> derivation;
  bool exhausted = false; // full reachable set enumerated without success
  size_t explored = 0;
};

// Breadth-first search over canonical forms; returns a shortest derivation,
// deterministic under sorted expansion order.
ReachResult reachable(const Term& s, const Term& t, const RuleSet& rs,
                      SearchBudget budget = {});

// The web-level preorder deciding derivability by medial alone:
// (1) &-edges of <s> persist in <t>; (2) every |->& flip is supported by a
// witnessing quadruple in both webs.
bool medial_preorder(const Term& s, const Term& t);

struct EdgePreservation {
  bool preserves_or = true;
  bool preserves_and = true;
};
EdgePreservation edge_preservation(const Term& lhs, const Term& rhs);

// Exhaustive minimality: no linear term on the same variables lies strictly
// between lhs and rhs.
bool is_minimal(const Term& lhs, const Term& rhs, size_t var_cap = 7);

// One representative per AC class of constant-free negation-free linear
// terms on X, i.e. one per P4-free labelled graph, in deterministic order.
std::vector<RelationWeb> enumerate_p4free_webs(const VarSet& x, size_t var_cap = 7);
std::vector<Term> enumerate_linear_terms(const VarSet& x, size_t var_cap = 7);

} // namespace linweb

#endif
