#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nfstrata/support.hpp"

namespace nfstrata {

// Surface alphabets (one ASCII character per symbol, no whitespace):
//   usual    : [ ] > A = : w ' F
//   enriched : [ ] > A = : v ' * F
// '>' is implication, 'A' the universal quantifier, '=' and ':' the two
// relation symbols, 'F' falsum, and ' (apostrophe) the variable tick.

struct UsualVariable {
  std::uint32_t ticks = 0;
  friend auto operator<=>(const UsualVariable&, const UsualVariable&) = default;
};

struct EnrichedVariable {
  std::uint32_t ticks = 0;  // number of ' after the leading v
  std::uint32_t stars = 0;  // number of * after the ticks
  friend auto operator<=>(const EnrichedVariable&, const EnrichedVariable&) = default;
};

std::string to_surface(const UsualVariable& v);
std::string to_surface(const EnrichedVariable& v);

template <class V>
struct Formula;

template <class V>
using FormulaPtr = std::shared_ptr<const Formula<V>>;

struct Bottom {
  friend bool operator==(const Bottom&, const Bottom&) { return true; }
};

template <class V>
struct Equality {
  V left, right;
  friend bool operator==(const Equality&, const Equality&) = default;
};

template <class V>
struct Membership {
  V left, right;
  friend bool operator==(const Membership&, const Membership&) = default;
};

template <class V>
struct Implication {
  FormulaPtr<V> antecedent, consequent;
  friend bool operator==(const Implication& a, const Implication& b) {
    return *a.antecedent == *b.antecedent && *a.consequent == *b.consequent;
  }
};

template <class V>
struct Forall {
  V bound;
  FormulaPtr<V> body;
  friend bool operator==(const Forall& a, const Forall& b) {
    return a.bound == b.bound && *a.body == *b.body;
  }
};

// Immutable formula tree; equality is structural.
template <class V>
struct Formula {
  using Node = std::variant<Bottom, Equality<V>, Membership<V>, Implication<V>, Forall<V>>;
  Node node;

  friend bool operator==(const Formula& a, const Formula& b) { return a.node == b.node; }
};

using UsualFormula = FormulaPtr<UsualVariable>;
using EnrichedFormula = FormulaPtr<EnrichedVariable>;

template <class V>
FormulaPtr<V> make_bottom() {
  return std::make_shared<const Formula<V>>(Formula<V>{Bottom{}});
}
template <class V>
FormulaPtr<V> make_equality(V l, V r) {
  return std::make_shared<const Formula<V>>(Formula<V>{Equality<V>{std::move(l), std::move(r)}});
}
template <class V>
FormulaPtr<V> make_membership(V l, V r) {
  return std::make_shared<const Formula<V>>(Formula<V>{Membership<V>{std::move(l), std::move(r)}});
}
template <class V>
FormulaPtr<V> make_implication(FormulaPtr<V> a, FormulaPtr<V> b) {
  return std::make_shared<const Formula<V>>(Formula<V>{Implication<V>{std::move(a), std::move(b)}});
}
template <class V>
FormulaPtr<V> make_forall(V bound, FormulaPtr<V> body) {
  return std::make_shared<const Formula<V>>(Formula<V>{Forall<V>{std::move(bound), std::move(body)}});
}

struct ParseError {
  std::size_t position = 0;
  // Expected next terminals, sorted by the canonical symbol order. When
  // expected_end is set the parser required end of input instead.
  std::string expected;
  bool expected_end = false;
  std::string note;

  std::string message() const;
};

inline constexpr std::size_t kDefaultMaxParseDepth = 32768;

Result<UsualFormula, ParseError> parse_usual(std::string_view text,
                                             std::size_t max_depth = kDefaultMaxParseDepth);
Result<EnrichedFormula, ParseError> parse_enriched(std::string_view text,
                                                   std::size_t max_depth = kDefaultMaxParseDepth);

std::string render(const Formula<UsualVariable>& f);
std::string render(const Formula<EnrichedVariable>& f);

template <class V>
std::string render(const FormulaPtr<V>& f) {
  return render(*f);
}

enum class AtomKind { Bottom, Equality, Membership };

template <class V>
struct AtomOccurrence {
  AtomKind kind = AtomKind::Bottom;
  std::optional<V> left, right;  // absent for Bottom
  std::size_t index = 0;         // left-to-right occurrence index
  std::size_t text_position = 0; // offset of the atom in render()
};

template <class V>
std::string atom_surface(const AtomOccurrence<V>& a);

// Every occurrence of a bottom / equality / membership atom, in textual
// order; identical atoms at different positions yield separate entries.
std::vector<AtomOccurrence<UsualVariable>> atomic_occurrences(const Formula<UsualVariable>& f);
std::vector<AtomOccurrence<EnrichedVariable>> atomic_occurrences(const Formula<EnrichedVariable>& f);

template <class V>
struct VariableOccurrence {
  V variable;
  std::size_t index = 0;          // left-to-right occurrence index
  std::size_t text_position = 0;  // offset of the variable in render()
  // Pre-order id of the binding quantifier, or empty when free. The
  // occurrence inside the quantifier prefix [Av] counts as bound by that
  // quantifier.
  std::optional<std::size_t> binder;
  bool quantifier_prefix = false;
};

template <class V>
struct OccurrenceTable {
  std::vector<VariableOccurrence<V>> occurrences;
};

OccurrenceTable<UsualVariable> resolve_binders(const Formula<UsualVariable>& f);
OccurrenceTable<EnrichedVariable> resolve_binders(const Formula<EnrichedVariable>& f);

}  // namespace nfstrata
