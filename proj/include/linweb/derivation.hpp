#ifndef LINWEB_DERIVATION_HPP
#define LINWEB_DERIVATION_HPP

#include <string>
#include <vector>

#include "linweb/term.hpp"

namespace linweb {

enum class Congruence { None, AC, ACU, ACUprime };

std::string congruence_name(Congruence c);
Congruence congruence_from_name(const std::string& name);
Term canonical_for(Congruence c, const Term& t);

// One reduction step. `before` is congruence-equal to the source line and
// carries the redex as an exact subtree: before == C[sigma(lhs)] with the
// hole of C at `position`, and after == C[sigma(rhs)].
struct DerivStep {
  std::string rule;
  Term before;
  Term after;
  std::vector<int> position;
  Substitution subst;
};

// Rewrite derivation modulo a congruence; congruence hops between a line and
// the next step's `before` are implicit and do not count towards the length.
struct Derivation {
  Congruence modulo = Congruence::None;
  std::vector<Term> lines; // steps.size() + 1 entries
  std::vector<DerivStep> steps;

  size_t length() const { return steps.size(); }
};

std::string derivation_to_json(const Derivation& d);
Derivation derivation_from_json(const std::string& text);

} // namespace linweb

#endif
