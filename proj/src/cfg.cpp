#include "nfstrata/cfg.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace nfstrata {

namespace {

bool is_terminal(const Symbol& s) { return std::holds_alternative<TerminalSymbol>(s); }

char terminal_of(const Symbol& s) { return std::get<TerminalSymbol>(s).value; }

const std::string& nonterminal_of(const Symbol& s) {
  return std::get<NonterminalSymbol>(s).name;
}

}  // namespace

void validate_grammar(const Grammar& g) {
  std::set<std::string> nts(g.nonterminals.begin(), g.nonterminals.end());
  if (nts.size() != g.nonterminals.size()) {
    throw GrammarSchemaError("$.nonterminals", "duplicate nonterminal");
  }
  for (const auto& name : g.nonterminals) {
    if (name.empty()) throw GrammarSchemaError("$.nonterminals", "empty nonterminal name");
  }
  std::set<char> ts(g.terminals.begin(), g.terminals.end());
  if (ts.size() != g.terminals.size()) {
    throw GrammarSchemaError("$.terminals", "duplicate terminal");
  }
  if (!nts.count(g.start)) {
    throw GrammarSchemaError("$.start", "start symbol is not a declared nonterminal");
  }
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const auto& rule = g.rules[i];
    std::string base = "$.rules[" + std::to_string(i) + "]";
    if (!nts.count(rule.lhs)) {
      throw GrammarSchemaError(base + ".lhs", "lhs is not a declared nonterminal");
    }
    for (std::size_t j = 0; j < rule.rhs.size(); ++j) {
      std::string where = base + ".rhs[" + std::to_string(j) + "]";
      if (is_terminal(rule.rhs[j])) {
        if (!ts.count(terminal_of(rule.rhs[j]))) {
          throw GrammarSchemaError(where, "terminal is not declared");
        }
      } else if (!nts.count(nonterminal_of(rule.rhs[j]))) {
        throw GrammarSchemaError(where, "nonterminal is not declared");
      }
    }
  }
}

Grammar builtin_grammar(BuiltinGrammar which) {
  Grammar g;
  auto rule = [&g](std::string lhs, std::vector<Symbol> rhs) {
    g.rules.push_back({std::move(lhs), std::move(rhs)});
  };
  switch (which) {
    case BuiltinGrammar::Usual:
      g.start = "F";
      g.nonterminals = {"F", "A", "V"};
      g.terminals = {'[', ']', '>', 'A', '=', ':', 'w', '\'', 'F'};
      rule("F", {N("A")});
      rule("F", {T('['), N("F"), T('>'), N("F"), T(']')});
      rule("F", {T('['), T('A'), N("V"), T(']'), N("F")});
      rule("A", {T('F')});
      rule("A", {N("V"), T('='), N("V")});
      rule("A", {N("V"), T(':'), N("V")});
      rule("V", {T('w')});
      rule("V", {N("V"), T('\'')});
      break;
    case BuiltinGrammar::Enriched:
      g.start = "F";
      g.nonterminals = {"F", "A", "V", "P"};
      g.terminals = {'[', ']', '>', 'A', '=', ':', 'v', '\'', '*', 'F'};
      rule("F", {N("A")});
      rule("F", {T('['), N("F"), T('>'), N("F"), T(']')});
      rule("F", {T('['), T('A'), N("V"), T(']'), N("F")});
      rule("A", {T('F')});
      rule("A", {N("V"), T('='), N("V")});
      rule("A", {N("V"), T(':'), N("V")});
      rule("V", {N("P")});
      rule("V", {N("V"), T('*')});
      rule("P", {T('v')});
      rule("P", {N("P"), T('\'')});
      break;
    case BuiltinGrammar::Exo:
      g.start = "F";
      g.nonterminals = {"F", "A", "E", "M", "V", "P"};
      g.terminals = {'[', ']', '>', 'A', '=', ':', 'v', '\'', '*', 'F'};
      rule("F", {N("A")});
      rule("F", {T('['), N("F"), T('>'), N("F"), T(']')});
      rule("F", {T('['), T('A'), N("V"), T(']'), N("F")});
      rule("A", {T('F')});
      rule("A", {N("P"), N("E")});
      rule("A", {N("P"), N("M"), T('*')});
      rule("E", {T('='), N("P")});
      rule("E", {T('*'), N("E"), T('*')});
      rule("M", {T(':'), N("P")});
      rule("M", {T('*'), N("M"), T('*')});
      rule("V", {N("P")});
      rule("V", {N("V"), T('*')});
      rule("P", {T('v')});
      rule("P", {N("P"), T('\'')});
      break;
    case BuiltinGrammar::Intro0n1n:
      g.start = "S";
      g.nonterminals = {"S"};
      g.terminals = {'0', '1'};
      rule("S", {T('0'), N("S"), T('1')});
      rule("S", {T('0'), T('1')});
      break;
    case BuiltinGrammar::IntroSums:
      g.start = "S";
      g.nonterminals = {"S", "F"};
      g.terminals = {'0', '1', '+', '='};
      rule("S", {N("F"), T('='), N("F")});
      rule("F", {N("F"), T('+'), N("F")});
      rule("F", {T('0')});
      rule("F", {T('1')});
      break;
  }
  return g;
}

std::optional<BuiltinGrammar> builtin_grammar_by_name(std::string_view name) {
  if (name == "usual") return BuiltinGrammar::Usual;
  if (name == "enriched") return BuiltinGrammar::Enriched;
  if (name == "exo") return BuiltinGrammar::Exo;
  if (name == "intro_0n1n") return BuiltinGrammar::Intro0n1n;
  if (name == "intro_sums") return BuiltinGrammar::IntroSums;
  return std::nullopt;
}

std::string form_to_string(const SententialForm& form) {
  std::string out;
  for (const auto& sym : form) {
    if (is_terminal(sym)) {
      out.push_back(terminal_of(sym));
    } else {
      out += nonterminal_of(sym);
    }
  }
  return out;
}

// ---- Earley ----------------------------------------------------------------

namespace {

struct CompiledRule {
  int lhs;
  // >= 0: nonterminal id; < 0: terminal char encoded as -(1 + uchar)
  std::vector<int> rhs;
};

constexpr int encode_terminal(char c) { return -(1 + static_cast<int>(static_cast<unsigned char>(c))); }
constexpr char decode_terminal(int v) { return static_cast<char>(-(v + 1)); }

struct Item {
  int rule;
  int dot;
  int origin;
};

}  // namespace

struct EarleyRecognizer::Impl {
  std::vector<CompiledRule> rules;
  std::vector<std::vector<int>> rules_of;  // per nonterminal id
  std::vector<bool> nullable;
  std::array<bool, 256> terminal_set{};
  int start = 0;
  int num_nonterminals = 0;
  Grammar grammar;  // retained for derivations

  explicit Impl(const Grammar& g) : grammar(g) {
    validate_grammar(g);
    // Chart items are packed into 64-bit keys.
    if (g.rules.size() >= (1u << 14)) {
      throw GrammarSchemaError("$.rules", "recognizer supports at most 16383 rules");
    }
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
      if (g.rules[i].rhs.size() >= 63) {
        throw GrammarSchemaError("$.rules[" + std::to_string(i) + "].rhs",
                                 "recognizer supports at most 62 rhs symbols");
      }
    }
    std::unordered_map<std::string, int> ids;
    for (const auto& name : g.nonterminals) {
      ids.emplace(name, static_cast<int>(ids.size()));
    }
    num_nonterminals = static_cast<int>(ids.size());
    rules_of.resize(num_nonterminals);
    for (const auto& rule : g.rules) {
      CompiledRule cr;
      cr.lhs = ids.at(rule.lhs);
      for (const auto& sym : rule.rhs) {
        if (is_terminal(sym)) {
          cr.rhs.push_back(encode_terminal(terminal_of(sym)));
        } else {
          cr.rhs.push_back(ids.at(nonterminal_of(sym)));
        }
      }
      rules_of[cr.lhs].push_back(static_cast<int>(rules.size()));
      rules.push_back(std::move(cr));
    }
    start = ids.at(g.start);
    for (char c : g.terminals) terminal_set[static_cast<unsigned char>(c)] = true;

    nullable.assign(num_nonterminals, false);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& rule : rules) {
        if (nullable[rule.lhs]) continue;
        bool all = true;
        for (int sym : rule.rhs) {
          if (sym < 0 || !nullable[sym]) {
            all = false;
            break;
          }
        }
        if (all) {
          nullable[rule.lhs] = true;
          changed = true;
        }
      }
    }
  }

  // The chart walk; when `completions` is given, records every completed
  // item as (lhs, origin, end, rule).
  bool run(std::string_view s,
           std::vector<std::array<int, 4>>* completions) const {
    std::size_t n = s.size();
    if (n >= (1u << 21)) {
      throw ResourceLimitError("input exceeds the recognizer length bound");
    }
    for (char c : s) {
      if (!terminal_set[static_cast<unsigned char>(c)]) return false;
    }

    std::vector<std::vector<Item>> sets(n + 1);
    // Dedup: dense bitmap for short inputs, hash set otherwise.
    std::size_t max_dot = 1;
    for (const auto& r : rules) max_dot = std::max(max_dot, r.rhs.size() + 1);
    std::size_t dense_stride = rules.size() * max_dot;
    bool dense = dense_stride * (n + 1) * (n + 1) <= (1u << 22);
    std::vector<bool> dense_seen;
    std::unordered_set<std::uint64_t> hash_seen;
    if (dense) dense_seen.assign(dense_stride * (n + 1) * (n + 1), false);

    auto add = [&](std::size_t pos, Item item) {
      if (dense) {
        std::size_t key = (pos * (n + 1) + item.origin) * dense_stride +
                          static_cast<std::size_t>(item.rule) * max_dot + item.dot;
        if (dense_seen[key]) return;
        dense_seen[key] = true;
      } else {
        std::uint64_t key = (static_cast<std::uint64_t>(pos) << 42) |
                            (static_cast<std::uint64_t>(item.origin) << 20) |
                            (static_cast<std::uint64_t>(item.rule) << 6) |
                            static_cast<std::uint64_t>(item.dot);
        if (!hash_seen.insert(key).second) return;
      }
      sets[pos].push_back(item);
    };

    for (int r : rules_of[start]) add(0, {r, 0, 0});

    for (std::size_t pos = 0; pos <= n; ++pos) {
      for (std::size_t i = 0; i < sets[pos].size(); ++i) {
        Item item = sets[pos][i];
        const auto& rhs = rules[item.rule].rhs;
        if (item.dot < static_cast<int>(rhs.size())) {
          int sym = rhs[item.dot];
          if (sym < 0) {
            if (pos < n && s[pos] == decode_terminal(sym)) {
              add(pos + 1, {item.rule, item.dot + 1, item.origin});
            }
          } else {
            for (int r : rules_of[sym]) add(pos, {r, 0, static_cast<int>(pos)});
            if (nullable[sym]) add(pos, {item.rule, item.dot + 1, item.origin});
          }
        } else {
          int lhs = rules[item.rule].lhs;
          if (completions) {
            completions->push_back({lhs, item.origin, static_cast<int>(pos), item.rule});
          }
          // Index loop: when origin == pos, add() may grow the set we scan.
          auto& waiting_set = sets[item.origin];
          for (std::size_t w = 0; w < waiting_set.size(); ++w) {
            Item waiting = waiting_set[w];
            const auto& wrhs = rules[waiting.rule].rhs;
            if (waiting.dot < static_cast<int>(wrhs.size()) && wrhs[waiting.dot] == lhs) {
              add(pos, {waiting.rule, waiting.dot + 1, waiting.origin});
            }
          }
        }
      }
    }

    for (const Item& item : sets[n]) {
      if (rules[item.rule].lhs == start && item.origin == 0 &&
          item.dot == static_cast<int>(rules[item.rule].rhs.size())) {
        return true;
      }
    }
    return false;
  }
};

EarleyRecognizer::EarleyRecognizer(const Grammar& g) : impl_(std::make_unique<Impl>(g)) {}
EarleyRecognizer::~EarleyRecognizer() = default;
EarleyRecognizer::EarleyRecognizer(EarleyRecognizer&&) noexcept = default;
EarleyRecognizer& EarleyRecognizer::operator=(EarleyRecognizer&&) noexcept = default;

bool EarleyRecognizer::recognize(std::string_view s) const { return impl_->run(s, nullptr); }

namespace {

// Reconstructs one parse tree from the Earley completions, then linearizes
// it as a leftmost derivation.
struct DerivationBuilder {
  const EarleyRecognizer::Impl& impl;
  std::string_view s;
  // (nonterminal, begin) -> sorted list of (end, rule). Rule choice is the
  // lowest rule index so the derivation is deterministic.
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>> spans;

  static std::uint64_t key(int nt, int begin) {
    return (static_cast<std::uint64_t>(nt) << 32) | static_cast<std::uint32_t>(begin);
  }

  struct TreeNode {
    int rule;
    std::vector<int> child_nodes;  // indices into `nodes`, one per rhs nonterminal
  };
  std::vector<TreeNode> nodes;

  std::optional<int> rule_for(int nt, int begin, int end) {
    auto it = spans.find(key(nt, begin));
    if (it == spans.end()) return std::nullopt;
    std::optional<int> best;
    for (auto [e, rule] : it->second) {
      if (e == end && (!best || rule < *best)) best = rule;
    }
    return best;
  }

  bool derivable(int nt, int begin, int end) { return rule_for(nt, begin, end).has_value(); }

  // Builds the node for nt over s[begin,end); returns its index.
  std::optional<int> build(int nt, int begin, int end) {
    auto rule_idx = rule_for(nt, begin, end);
    if (!rule_idx) return std::nullopt;
    const auto& rhs = impl.rules[*rule_idx].rhs;
    std::size_t k = rhs.size();
    // feasible[t][p - begin]: rhs[t..] derives s[p..end)
    std::vector<std::vector<char>> feasible(k + 1,
                                            std::vector<char>(end - begin + 1, 0));
    feasible[k][end - begin] = 1;
    for (int t = static_cast<int>(k) - 1; t >= 0; --t) {
      for (int p = end; p >= begin; --p) {
        int rel = p - begin;
        int sym = rhs[t];
        if (sym < 0) {
          feasible[t][rel] =
              p < end && s[p] == decode_terminal(sym) && feasible[t + 1][rel + 1];
        } else {
          auto it = spans.find(key(sym, p));
          char ok = 0;
          if (it != spans.end()) {
            for (auto [e, rule] : it->second) {
              (void)rule;
              if (e >= p && e <= end && feasible[t + 1][e - begin]) {
                ok = 1;
                break;
              }
            }
          }
          feasible[t][rel] = ok;
        }
      }
    }
    if (!feasible[0][0]) return std::nullopt;

    int node_index = static_cast<int>(nodes.size());
    nodes.push_back({*rule_idx, {}});
    int p = begin;
    for (std::size_t t = 0; t < k; ++t) {
      int sym = rhs[t];
      if (sym < 0) {
        ++p;
        continue;
      }
      // leftmost split: smallest feasible end for this child
      auto it = spans.find(key(sym, p));
      if (it == spans.end()) return std::nullopt;
      int chosen_end = -1;
      for (auto [e, rule] : it->second) {
        (void)rule;
        if (e >= p && e <= end && feasible[t + 1][e - begin] &&
            (chosen_end == -1 || e < chosen_end)) {
          chosen_end = e;
        }
      }
      if (chosen_end == -1) return std::nullopt;
      auto child = build(sym, p, chosen_end);
      if (!child) return std::nullopt;
      nodes[node_index].child_nodes.push_back(*child);
      p = chosen_end;
    }
    return node_index;
  }
};

}  // namespace

std::optional<Derivation> EarleyRecognizer::derive(std::string_view s) const {
  std::vector<std::array<int, 4>> completions;
  if (!impl_->run(s, &completions)) return std::nullopt;

  DerivationBuilder builder{*impl_, s, {}, {}};
  for (const auto& [lhs, begin, end, rule] : completions) {
    builder.spans[DerivationBuilder::key(lhs, begin)].push_back({end, rule});
  }
  auto root = builder.build(impl_->start, 0, static_cast<int>(s.size()));
  if (!root) return std::nullopt;

  // Linearize: repeatedly expand the leftmost unexpanded nonterminal.
  Derivation derivation;
  struct Entry {
    bool terminal;
    char ch;
    int node;  // when nonterminal
    int nt;
  };
  std::vector<Entry> current{{false, 0, *root, impl_->start}};
  auto snapshot = [&]() {
    SententialForm form;
    for (const auto& e : current) {
      if (e.terminal) {
        form.push_back(TerminalSymbol{e.ch});
      } else {
        form.push_back(NonterminalSymbol{impl_->grammar.nonterminals[e.nt]});
      }
    }
    return form;
  };

  std::size_t total_symbols = 1;
  derivation.forms.push_back(snapshot());
  for (;;) {
    std::size_t pos = 0;
    while (pos < current.size() && current[pos].terminal) ++pos;
    if (pos == current.size()) break;
    const auto& node = builder.nodes[current[pos].node];
    const auto& rhs = impl_->rules[node.rule].rhs;
    std::vector<Entry> expansion;
    std::size_t child = 0;
    for (int sym : rhs) {
      if (sym < 0) {
        expansion.push_back({true, decode_terminal(sym), -1, -1});
      } else {
        expansion.push_back({false, 0, node.child_nodes[child++], sym});
      }
    }
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(pos));
    current.insert(current.begin() + static_cast<std::ptrdiff_t>(pos), expansion.begin(),
                   expansion.end());
    derivation.steps.push_back({static_cast<std::size_t>(node.rule), pos});
    derivation.forms.push_back(snapshot());
    total_symbols += current.size();
    constexpr std::size_t kDerivationBudget = 50'000'000;  // symbols across forms
    if (total_symbols > kDerivationBudget) {
      throw ResourceLimitError("derivation exceeds the sentential-form budget");
    }
  }
  return derivation;
}

bool recognize(const Grammar& g, std::string_view s) {
  return EarleyRecognizer(g).recognize(s);
}

std::optional<Derivation> derive(const Grammar& g, std::string_view s) {
  return EarleyRecognizer(g).derive(s);
}

// ---- Generation -------------------------------------------------------------

std::vector<std::string> generate(const Grammar& g, const GenerateLimits& limits) {
  validate_grammar(g);
  std::unordered_map<std::string, int> ids;
  for (const auto& name : g.nonterminals) ids.emplace(name, static_cast<int>(ids.size()));
  if (ids.size() > 100) {
    throw GrammarSchemaError("$.nonterminals", "generation supports at most 100 nonterminals");
  }

  constexpr std::size_t kInf = static_cast<std::size_t>(-1) / 4;
  std::vector<std::size_t> min_len(ids.size(), kInf);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& rule : g.rules) {
      std::size_t total = 0;
      for (const auto& sym : rule.rhs) {
        total += is_terminal(sym) ? 1 : min_len[ids.at(nonterminal_of(sym))];
        if (total >= kInf) {
          total = kInf;
          break;
        }
      }
      std::size_t& cur = min_len[ids.at(rule.lhs)];
      if (total < cur) {
        cur = total;
        changed = true;
      }
    }
  }

  // Forms are byte strings: terminals as-is, nonterminal k as char 128+k.
  auto nt_char = [](int id) { return static_cast<char>(128 + id); };
  auto form_min_len = [&](const std::string& form) {
    std::size_t total = 0;
    for (unsigned char c : form) {
      total += c >= 128 ? min_len[c - 128] : 1;
      if (total >= kInf) return kInf;
    }
    return total;
  };

  std::vector<std::string> rule_rhs_encoded(g.rules.size());
  std::vector<std::vector<int>> rules_of(ids.size());
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    std::string encoded;
    for (const auto& sym : g.rules[i].rhs) {
      encoded.push_back(is_terminal(sym) ? terminal_of(sym)
                                         : nt_char(ids.at(nonterminal_of(sym))));
    }
    rule_rhs_encoded[i] = std::move(encoded);
    rules_of[ids.at(g.rules[i].lhs)].push_back(static_cast<int>(i));
  }

  std::unordered_set<std::string> visited;
  std::deque<std::string> frontier;
  std::vector<std::string> results;
  std::string start_form(1, nt_char(ids.at(g.start)));
  if (form_min_len(start_form) <= limits.max_length) {
    visited.insert(start_form);
    frontier.push_back(start_form);
  }
  while (!frontier.empty()) {
    std::string form = std::move(frontier.front());
    frontier.pop_front();
    std::size_t pos = 0;
    while (pos < form.size() && static_cast<unsigned char>(form[pos]) < 128) ++pos;
    if (pos == form.size()) {
      results.push_back(form);
      continue;
    }
    int nt = static_cast<unsigned char>(form[pos]) - 128;
    for (int rule : rules_of[nt]) {
      std::string next = form.substr(0, pos) + rule_rhs_encoded[rule] + form.substr(pos + 1);
      if (form_min_len(next) > limits.max_length) continue;
      if (visited.insert(next).second) {
        if (visited.size() > limits.node_budget) {
          throw ResourceLimitError("generation exceeds the node budget");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  std::sort(results.begin(), results.end(), [](const std::string& a, const std::string& b) {
    return length_lex_less(a, b);
  });
  return results;
}

// ---- JSON / BNF -------------------------------------------------------------

namespace {

const nlohmann::json& require(const nlohmann::json& doc, const char* field,
                              const std::string& path) {
  if (!doc.is_object()) throw GrammarSchemaError(path, "expected an object");
  auto it = doc.find(field);
  if (it == doc.end()) {
    throw GrammarSchemaError(path + "." + field, "missing required field");
  }
  return *it;
}

}  // namespace

Grammar import_grammar(const nlohmann::json& doc) {
  Grammar g;
  const auto& start = require(doc, "start", "$");
  if (!start.is_string()) throw GrammarSchemaError("$.start", "expected a string");
  g.start = start.get<std::string>();

  const auto& nts = require(doc, "nonterminals", "$");
  if (!nts.is_array()) throw GrammarSchemaError("$.nonterminals", "expected an array");
  for (std::size_t i = 0; i < nts.size(); ++i) {
    if (!nts[i].is_string()) {
      throw GrammarSchemaError("$.nonterminals[" + std::to_string(i) + "]",
                               "expected a string");
    }
    g.nonterminals.push_back(nts[i].get<std::string>());
  }

  const auto& ts = require(doc, "terminals", "$");
  if (!ts.is_array()) throw GrammarSchemaError("$.terminals", "expected an array");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    std::string path = "$.terminals[" + std::to_string(i) + "]";
    if (!ts[i].is_string()) throw GrammarSchemaError(path, "expected a string");
    std::string value = ts[i].get<std::string>();
    if (value.size() != 1) {
      throw GrammarSchemaError(path, "terminals are single characters");
    }
    g.terminals.push_back(value[0]);
  }

  const auto& rules = require(doc, "rules", "$");
  if (!rules.is_array()) throw GrammarSchemaError("$.rules", "expected an array");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::string base = "$.rules[" + std::to_string(i) + "]";
    const auto& lhs = require(rules[i], "lhs", base);
    if (!lhs.is_string()) throw GrammarSchemaError(base + ".lhs", "expected a string");
    Rule rule;
    rule.lhs = lhs.get<std::string>();
    const auto& rhs = require(rules[i], "rhs", base);
    if (!rhs.is_array()) throw GrammarSchemaError(base + ".rhs", "expected an array");
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      std::string where = base + ".rhs[" + std::to_string(j) + "]";
      const auto& element = rhs[j];
      if (!element.is_object() || element.size() != 1) {
        throw GrammarSchemaError(where, "expected exactly one of {\"t\": ...} or {\"n\": ...}");
      }
      if (element.contains("t")) {
        if (!element["t"].is_string() || element["t"].get<std::string>().size() != 1) {
          throw GrammarSchemaError(where + ".t", "expected a single-character string");
        }
        rule.rhs.push_back(TerminalSymbol{element["t"].get<std::string>()[0]});
      } else if (element.contains("n")) {
        if (!element["n"].is_string()) {
          throw GrammarSchemaError(where + ".n", "expected a string");
        }
        rule.rhs.push_back(NonterminalSymbol{element["n"].get<std::string>()});
      } else {
        throw GrammarSchemaError(where, "expected exactly one of {\"t\": ...} or {\"n\": ...}");
      }
    }
    g.rules.push_back(std::move(rule));
  }

  validate_grammar(g);
  return g;
}

nlohmann::json export_grammar(const Grammar& g) {
  nlohmann::json doc;
  doc["start"] = g.start;
  doc["nonterminals"] = g.nonterminals;
  doc["terminals"] = nlohmann::json::array();
  for (char c : g.terminals) doc["terminals"].push_back(std::string(1, c));
  doc["rules"] = nlohmann::json::array();
  for (const auto& rule : g.rules) {
    nlohmann::json r;
    r["lhs"] = rule.lhs;
    r["rhs"] = nlohmann::json::array();
    for (const auto& sym : rule.rhs) {
      if (is_terminal(sym)) {
        r["rhs"].push_back({{"t", std::string(1, terminal_of(sym))}});
      } else {
        r["rhs"].push_back({{"n", nonterminal_of(sym)}});
      }
    }
    doc["rules"].push_back(std::move(r));
  }
  return doc;
}

std::string export_bnf(const Grammar& g) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::string>> alternatives;
  for (const auto& rule : g.rules) {
    if (!alternatives.count(rule.lhs)) order.push_back(rule.lhs);
    std::string alt;
    for (const auto& sym : rule.rhs) {
      if (is_terminal(sym)) {
        alt.push_back(terminal_of(sym));
      } else {
        alt += nonterminal_of(sym);
      }
    }
    alternatives[rule.lhs].push_back(alt.empty() ? "ε" : alt);
  }
  std::string out;
  for (const auto& lhs : order) {
    out += lhs + " ->";
    bool first = true;
    for (const auto& alt : alternatives[lhs]) {
      out += first ? " " : " | ";
      out += alt;
      first = false;
    }
    out += "\n";
  }
  return out;
}

}  // namespace nfstrata
