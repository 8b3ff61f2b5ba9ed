#include "nfstrata/ast.hpp"

#include <algorithm>
#include <cassert>

namespace nfstrata {

namespace {

template <class V>
struct VarTraits;

template <>
struct VarTraits<UsualVariable> {
  static constexpr char lead = 'w';
  static constexpr bool has_stars = false;
};

template <>
struct VarTraits<EnrichedVariable> {
  static constexpr char lead = 'v';
  static constexpr bool has_stars = true;
};

std::string sort_expected(std::string s) {
  std::sort(s.begin(), s.end(),
            [](char a, char b) { return symbol_rank(a) < symbol_rank(b); });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Single-pass recursive descent. The grammar is LL(1) after reading one
// character of lookahead past '[', so the first failure position is the
// earliest failing position.
template <class V>
class Parser {
 public:
  Parser(std::string_view s, std::size_t max_depth) : s_(s), max_depth_(max_depth) {}

  Result<FormulaPtr<V>, ParseError> run() {
    FormulaPtr<V> f = formula(0);
    if (f && pos_ != s_.size()) {
      ParseError e;
      e.position = pos_;
      e.expected_end = true;
      return e;
    }
    if (!f) return err_;
    return f;
  }

 private:
  static constexpr char kLead = VarTraits<V>::lead;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  bool at(char c) const { return !eof() && peek() == c; }

  static bool formula_start(char c) { return c == '[' || c == 'F' || c == kLead; }

  FormulaPtr<V> fail(std::string expected) {
    if (!failed_) {
      failed_ = true;
      err_.position = pos_;
      err_.expected = sort_expected(std::move(expected));
    }
    return nullptr;
  }

  std::optional<V> variable() {
    if (!at(kLead)) {
      fail(std::string(1, kLead));
      return std::nullopt;
    }
    ++pos_;
    std::uint32_t ticks = 0;
    while (at('\'')) {
      ++pos_;
      ++ticks;
    }
    if constexpr (VarTraits<V>::has_stars) {
      std::uint32_t stars = 0;
      while (at('*')) {
        ++pos_;
        ++stars;
      }
      return V{ticks, stars};
    } else {
      return V{ticks};
    }
  }

  bool expect(char c) {
    if (!at(c)) {
      fail(std::string(1, c));
      return false;
    }
    ++pos_;
    return true;
  }

  FormulaPtr<V> formula(std::size_t depth) {
    if (depth > max_depth_) {
      if (!failed_) {
        failed_ = true;
        err_.position = pos_;
        err_.note = "maximum nesting depth exceeded";
      }
      return nullptr;
    }
    if (eof()) return fail(std::string("[F") + kLead);
    char c = peek();
    if (c == '[') {
      ++pos_;
      if (at('A')) {
        ++pos_;
        auto bound = variable();
        if (!bound) return nullptr;
        if (!expect(']')) return nullptr;
        auto body = formula(depth + 1);
        if (!body) return nullptr;
        return make_forall<V>(*bound, std::move(body));
      }
      if (!eof() && formula_start(peek())) {
        auto a = formula(depth + 1);
        if (!a) return nullptr;
        if (!expect('>')) return nullptr;
        auto b = formula(depth + 1);
        if (!b) return nullptr;
        if (!expect(']')) return nullptr;
        return make_implication<V>(std::move(a), std::move(b));
      }
      return fail(std::string("[AF") + kLead);
    }
    if (c == 'F') {
      ++pos_;
      return make_bottom<V>();
    }
    if (c == kLead) {
      auto l = variable();
      if (!l) return nullptr;
      bool is_eq;
      if (at('=')) {
        is_eq = true;
      } else if (at(':')) {
        is_eq = false;
      } else {
        return fail("=:");
      }
      ++pos_;
      auto r = variable();
      if (!r) return nullptr;
      return is_eq ? make_equality<V>(*l, *r) : make_membership<V>(*l, *r);
    }
    return fail(std::string("[F") + kLead);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t max_depth_;
  bool failed_ = false;
  ParseError err_;
};

// Iterative renderer/walker shared by render, atomic_occurrences and
// resolve_binders. The sink sees terminals in output order and can track
// positions by summing lengths.
template <class V, class Sink>
void walk(const Formula<V>& root, Sink& sink) {
  enum class Op { Node, Lit, ExitForall };
  struct Frame {
    Op op;
    const Formula<V>* node = nullptr;
    std::string_view lit;
  };
  std::vector<Frame> stack;
  stack.push_back({Op::Node, &root, {}});
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    switch (fr.op) {
      case Op::Lit:
        sink.text(fr.lit);
        break;
      case Op::ExitForall:
        sink.exit_forall();
        break;
      case Op::Node:
        std::visit(
            [&](const auto& n) {
              using T = std::decay_t<decltype(n)>;
              if constexpr (std::is_same_v<T, Bottom>) {
                sink.atom(*fr.node);
                sink.text("F");
              } else if constexpr (std::is_same_v<T, Equality<V>>) {
                sink.atom(*fr.node);
                sink.variable(n.left, false);
                sink.text("=");
                sink.variable(n.right, false);
              } else if constexpr (std::is_same_v<T, Membership<V>>) {
                sink.atom(*fr.node);
                sink.variable(n.left, false);
                sink.text(":");
                sink.variable(n.right, false);
              } else if constexpr (std::is_same_v<T, Implication<V>>) {
                sink.text("[");
                stack.push_back({Op::Lit, nullptr, "]"});
                stack.push_back({Op::Node, n.consequent.get(), {}});
                stack.push_back({Op::Lit, nullptr, ">"});
                stack.push_back({Op::Node, n.antecedent.get(), {}});
              } else {
                static_assert(std::is_same_v<T, Forall<V>>);
                sink.text("[A");
                sink.enter_forall(n.bound);
                sink.variable(n.bound, true);
                sink.text("]");
                stack.push_back({Op::ExitForall, nullptr, {}});
                stack.push_back({Op::Node, n.body.get(), {}});
              }
            },
            fr.node->node);
        break;
    }
  }
}

template <class V>
struct RenderSink {
  std::string out;
  void text(std::string_view s) { out.append(s); }
  void variable(const V& v, bool) { out.append(to_surface(v)); }
  void atom(const Formula<V>&) {}
  void enter_forall(const V&) {}
  void exit_forall() {}
};

template <class V>
std::size_t surface_length(const V& v) {
  if constexpr (VarTraits<V>::has_stars) {
    return 1 + v.ticks + v.stars;
  } else {
    return 1 + v.ticks;
  }
}

template <class V>
struct AtomSink {
  std::vector<AtomOccurrence<V>> atoms;
  std::size_t len = 0;
  void text(std::string_view s) { len += s.size(); }
  void variable(const V& v, bool) { len += surface_length(v); }
  void atom(const Formula<V>& node) {
    AtomOccurrence<V> a;
    a.index = atoms.size();
    a.text_position = len;
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Equality<V>>) {
            a.kind = AtomKind::Equality;
            a.left = n.left;
            a.right = n.right;
          } else if constexpr (std::is_same_v<T, Membership<V>>) {
            a.kind = AtomKind::Membership;
            a.left = n.left;
            a.right = n.right;
          } else {
            a.kind = AtomKind::Bottom;
          }
        },
        node.node);
    atoms.push_back(std::move(a));
  }
  void enter_forall(const V&) {}
  void exit_forall() {}
};

template <class V>
struct BinderSink {
  std::vector<VariableOccurrence<V>> occurrences;
  std::vector<std::pair<V, std::size_t>> scope;  // innermost last
  std::size_t len = 0;
  std::size_t next_binder_id = 0;

  void text(std::string_view s) { len += s.size(); }
  void atom(const Formula<V>&) {}
  void enter_forall(const V& bound) { scope.emplace_back(bound, next_binder_id++); }
  void exit_forall() { scope.pop_back(); }
  void variable(const V& v, bool prefix) {
    VariableOccurrence<V> occ;
    occ.variable = v;
    occ.index = occurrences.size();
    occ.text_position = len;
    occ.quantifier_prefix = prefix;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == v) {
        occ.binder = it->second;
        break;
      }
    }
    occurrences.push_back(std::move(occ));
    len += surface_length(v);
  }
};

}  // namespace

std::string to_surface(const UsualVariable& v) {
  std::string s(1, 'w');
  s.append(v.ticks, '\'');
  return s;
}

std::string to_surface(const EnrichedVariable& v) {
  std::string s(1, 'v');
  s.append(v.ticks, '\'');
  s.append(v.stars, '*');
  return s;
}

std::string ParseError::message() const {
  std::string m = "parse error at position " + std::to_string(position);
  if (expected_end) {
    m += ": expected end of input";
  } else if (!expected.empty()) {
    m += ": expected one of \"" + expected + "\"";
  }
  if (!note.empty()) m += " (" + note + ")";
  return m;
}

Result<UsualFormula, ParseError> parse_usual(std::string_view text, std::size_t max_depth) {
  return Parser<UsualVariable>(text, max_depth).run();
}

Result<EnrichedFormula, ParseError> parse_enriched(std::string_view text, std::size_t max_depth) {
  return Parser<EnrichedVariable>(text, max_depth).run();
}

std::string render(const Formula<UsualVariable>& f) {
  RenderSink<UsualVariable> sink;
  walk(f, sink);
  return std::move(sink.out);
}

std::string render(const Formula<EnrichedVariable>& f) {
  RenderSink<EnrichedVariable> sink;
  walk(f, sink);
  return std::move(sink.out);
}

template <class V>
std::string atom_surface(const AtomOccurrence<V>& a) {
  switch (a.kind) {
    case AtomKind::Bottom:
      return "F";
    case AtomKind::Equality:
      return to_surface(*a.left) + "=" + to_surface(*a.right);
    case AtomKind::Membership:
      return to_surface(*a.left) + ":" + to_surface(*a.right);
  }
  return {};
}

template std::string atom_surface(const AtomOccurrence<UsualVariable>&);
template std::string atom_surface(const AtomOccurrence<EnrichedVariable>&);

std::vector<AtomOccurrence<UsualVariable>> atomic_occurrences(const Formula<UsualVariable>& f) {
  AtomSink<UsualVariable> sink;
  walk(f, sink);
  return std::move(sink.atoms);
}

std::vector<AtomOccurrence<EnrichedVariable>> atomic_occurrences(const Formula<EnrichedVariable>& f) {
  AtomSink<EnrichedVariable> sink;
  walk(f, sink);
  return std::move(sink.atoms);
}

OccurrenceTable<UsualVariable> resolve_binders(const Formula<UsualVariable>& f) {
  BinderSink<UsualVariable> sink;
  walk(f, sink);
  return {std::move(sink.occurrences)};
}

OccurrenceTable<EnrichedVariable> resolve_binders(const Formula<EnrichedVariable>& f) {
  BinderSink<EnrichedVariable> sink;
  walk(f, sink);
  return {std::move(sink.occurrences)};
}

}  // namespace nfstrata
