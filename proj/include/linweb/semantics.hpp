#ifndef LINWEB_SEMANTICS_HPP
#define LINWEB_SEMANTICS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linweb/term.hpp"
#include "linweb/web.hpp"

namespace linweb {

using VarSet = std::vector<std::string>; // sorted, unique

// Subset of a ground set: the variables assigned 1.
struct Assignment {
  VarSet ground;
  uint32_t bits = 0;

  Assignment() = default;
  Assignment(VarSet g, uint32_t b) : ground(std::move(g)), bits(b) {}
  Assignment(VarSet g, const std::set<std::string>& trues);
  bool value_of(const std::string& name) const;
};

int evaluate(const Term& t, const Assignment& a);

// Antichain of variable subsets over a ground set, kept sorted by
// (size, lex) for deterministic output.
struct SetFamily {
  VarSet ground;
  std::vector<std::vector<std::string>> sets;

  void normalize();      // sort members and family
  void prune_to_minimal(); // keep only inclusion-minimal members
  friend bool operator==(const SetFamily& a, const SetFamily& b) {
    return a.ground == b.ground && a.sets == b.sets;
  }
};

std::string family_to_json(const SetFamily& f);
SetFamily family_from_json(const std::string& text);
std::string family_to_text(const SetFamily& f); // one set per line, braces

// Bit-parallel truth table over an explicit variable order (64 assignments
// per word, variable i toggling with period 2^i).
struct TruthTable {
  VarSet vars;
  std::vector<uint64_t> words;

  size_t n_assignments() const { return size_t{1} << vars.size(); }
  bool get(size_t idx) const { return (words[idx >> 6] >> (idx & 63)) & 1; }
};

inline constexpr size_t kDefaultTruthTableCap = 22;

TruthTable truth_table(const Term& t, const VarSet& ground,
                       size_t var_cap = kDefaultTruthTableCap);
bool tt_equal(const TruthTable& a, const TruthTable& b);
bool tt_leq(const TruthTable& a, const TruthTable& b);

// Monotone Boolean function given by a negation-free term or an explicit
// minterm antichain.
class MonotoneFunction {
public:
  static MonotoneFunction from_term(Term t);
  static MonotoneFunction from_term(Term t, VarSet ground);
  static MonotoneFunction from_minterms(SetFamily minterms);

  const VarSet& ground() const { return ground_; }
  const std::optional<Term>& term() const { return term_; }

  // MIN(f)/MAX(f): inductive construction plus antichain pruning for terms,
  // minimal-transversal dualization for families.
  const SetFamily& minterms() const;
  const SetFamily& maxterms() const;

  int eval(const Assignment& a) const;
  TruthTable table(size_t var_cap = kDefaultTruthTableCap) const;

private:
  VarSet ground_;
  std::optional<Term> term_;
  mutable std::optional<SetFamily> min_, max_;
};

// All thresholds 0 <= k <= |X|+1; k = 0 is constantly 1, k = |X|+1
// constantly 0.
MonotoneFunction threshold(const VarSet& x, size_t k);

enum class EntailMethod { TruthTable, MintermCover, MaxtermCover };

bool entails(const MonotoneFunction& f, const MonotoneFunction& g,
             EntailMethod method = EntailMethod::MintermCover,
             size_t var_cap = kDefaultTruthTableCap);

// Minterm/maxterm families of a web read off as maximal &-cliques and
// maximal |-cliques.
SetFamily clique_minterms(const RelationWeb& w);
SetFamily clique_maxterms(const RelationWeb& w);

// Gurvich recognition: read-once iff every minterm/maxterm pair meets in
// exactly one variable. On success the witness term is rebuilt from the
// co-occurrence web and verified against the function.
struct ReadOnceVerdict {
  bool read_once;
  std::optional<Term> witness;                  // set when read_once
  std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>>
      violating_pair;                           // (S, T), set when not
};
ReadOnceVerdict is_read_once(const MonotoneFunction& f);

} // namespace linweb

#endif
