#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nfstrata/ast.hpp"
#include "nfstrata/support.hpp"

namespace nfstrata {

// Integer level assignment satisfying, for every atom occurrence,
//   x : y  =>  levels(x) = levels(y) - 1
//   x = y  =>  levels(x) = levels(y)
// Canonical form: the minimum level of each connected component of the
// constraint graph is 0.
template <class V>
struct Stratification {
  std::map<V, int> levels;
};

// One step of an inconsistent cycle: the atom at atom_index claims
// levels(to) = levels(from) + offset. Chained steps return to the starting
// variable with a nonzero offset sum.
template <class V>
struct ConstraintStep {
  V from, to;
  int offset = 0;
  std::size_t atom_index = 0;
};

template <class V>
struct NotStratified {
  std::vector<ConstraintStep<V>> cycle;
};

template <class V>
using StratificationResult = Result<Stratification<V>, NotStratified<V>>;

StratificationResult<UsualVariable> find_stratification(const Formula<UsualVariable>& f);
StratificationResult<EnrichedVariable> find_stratification(const Formula<EnrichedVariable>& f);

template <class V>
bool is_stratified(const Formula<V>& f) {
  return find_stratification(f).ok();
}

// A cycle in the atomic-occurrence multigraph: variables.front() ==
// variables.back() and atom_indices[i] joins variables[i], variables[i+1].
struct CycleWitness {
  std::vector<UsualVariable> variables;
  std::vector<std::size_t> atom_indices;
};

struct AcyclicityReport {
  bool verdict = false;
  // Variables with occurrences that are neither all free nor all bound by
  // one quantifier.
  std::vector<UsualVariable> binding_violations;
  std::optional<CycleWitness> cycle_witness;
};

// Acyclicity is defined on the usual syntax only. Self-loops (x=x, x:x) and
// parallel edges (two atoms on the same variable pair) count as cycles.
AcyclicityReport is_acyclic(const Formula<UsualVariable>& f);

struct ExoViolation {
  std::size_t atom_index = 0;
  AtomKind kind = AtomKind::Equality;
  EnrichedVariable left, right;
};

struct ExoReport {
  bool verdict = false;
  std::optional<ExoViolation> violation;  // first violation in textual order
};

// Star superscripts directly witness a stratification: equal stars across
// '=', left stars one less across ':'. Purely local.
ExoReport check_exo_stratified(const Formula<EnrichedVariable>& f);

inline bool is_exo_stratified(const Formula<EnrichedVariable>& f) {
  return check_exo_stratified(f).verdict;
}

// w with n ticks becomes v with n ticks and zero stars.
EnrichedFormula to_enriched(const Formula<UsualVariable>& f);

// Forgets the star dimension; distinct enriched variables may collide.
UsualFormula strip_stars(const Formula<EnrichedVariable>& f);

using PairingFn = std::function<std::uint64_t(std::uint32_t, std::uint32_t)>;

// pi(n, m) = (n+m)(n+m+1)/2 + m, the default injection for exo_stratify.
std::uint64_t cantor_pairing(std::uint32_t n, std::uint32_t m);

// Replaces each v_n^m by v_pi(n,m)^sigma(v_n^m) where sigma is the canonical
// stratification (variables treated as opaque). The result is exo-stratified
// and equals the input up to an injective renaming of variables.
Result<EnrichedFormula, NotStratified<EnrichedVariable>> exo_stratify(
    const Formula<EnrichedVariable>& f, const PairingFn& pairing = cantor_pairing);

// Comprehension instance for a stratified phi:
//   (forall xbar)(exists y)(forall z)(z in y <-> phi)
// desugared with not p := [p>F], exists y p := [[Ay][p>F]>F] and
// p <-> q := [[[p>q]>[[q>p]>F]]>F]. xbar are the free variables of phi other
// than z in ascending tick order; y is the variable with the least tick
// count occurring neither in phi nor as z.
Result<UsualFormula, NotStratified<UsualVariable>> nf_comprehension_instance(
    const Formula<UsualVariable>& phi, UsualVariable z);

// (forall x,y)(x=y <-> (forall z)(z in x <-> z in y)) with x=w, y=w', z=w''.
UsualFormula extensionality_axiom();

// ---- Star codec -----------------------------------------------------------
//
// Enumerates all well-formed usual-syntax formulae in length-then-
// lexicographic order (alphabet order [ ] > A = : w ' F); the i-th
// stratified formula encodes as 2i, the i-th unstratified one as 2i+1.

struct CodecLimits {
  std::uint64_t max_codes = 1'000'000;       // decode refuses larger codes
  std::uint64_t max_enumerated = 8'000'000;  // safety stop for the shared walk
};

std::uint64_t star_encode(const Formula<UsualVariable>& f, const CodecLimits& limits = {});
UsualFormula star_decode(std::uint64_t code, const CodecLimits& limits = {});

struct EnumeratedFormula {
  std::string text;
  bool stratified = false;
};

// The i-th well-formed formula in enumeration order, with its
// stratification verdict. Backed by a process-wide memo table; safe to call
// concurrently.
EnumeratedFormula enumerated_formula(std::size_t index, const CodecLimits& limits = {});

// All well-formed formulae of length exactly `length`, in lexicographic
// order. Exposed for oracle tests against the grammar engine.
std::vector<std::string> formulae_of_length(std::size_t length);

}  // namespace nfstrata
