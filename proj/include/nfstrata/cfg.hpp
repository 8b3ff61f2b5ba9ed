#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nfstrata/support.hpp"

namespace nfstrata {

struct TerminalSymbol {
  char value;
  friend bool operator==(const TerminalSymbol&, const TerminalSymbol&) = default;
};

struct NonterminalSymbol {
  std::string name;
  friend bool operator==(const NonterminalSymbol&, const NonterminalSymbol&) = default;
};

// Terminals are single characters and nonterminals named symbols; the two
// spaces are kept apart by tagging (the paper's tables overload letters,
// e.g. terminal 'A' for the quantifier vs the atomic-formula nonterminal).
using Symbol = std::variant<TerminalSymbol, NonterminalSymbol>;

inline Symbol T(char c) { return TerminalSymbol{c}; }
inline Symbol N(std::string name) { return NonterminalSymbol{std::move(name)}; }

struct Rule {
  std::string lhs;
  std::vector<Symbol> rhs;
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Grammar {
  std::string start;
  std::vector<std::string> nonterminals;
  std::vector<char> terminals;
  std::vector<Rule> rules;
};

class GrammarSchemaError : public std::runtime_error {
 public:
  GrammarSchemaError(std::string json_path, const std::string& what)
      : std::runtime_error(json_path + ": " + what), json_path_(std::move(json_path)) {}
  const std::string& json_path() const { return json_path_; }

 private:
  std::string json_path_;
};

// Throws GrammarSchemaError (path "$") on undeclared or duplicate symbols.
void validate_grammar(const Grammar& g);

enum class BuiltinGrammar { Usual, Enriched, Exo, Intro0n1n, IntroSums };

Grammar builtin_grammar(BuiltinGrammar which);
std::optional<BuiltinGrammar> builtin_grammar_by_name(std::string_view name);

using SententialForm = std::vector<Symbol>;

std::string form_to_string(const SententialForm& form);

struct DerivationStep {
  std::size_t rule_index = 0;
  std::size_t position = 0;  // symbol index of the replaced nonterminal
};

// Leftmost derivation: forms[0] = [start], each step applies rules[steps[i]]
// at steps[i].position, and forms.back() is all-terminal.
struct Derivation {
  std::vector<SententialForm> forms;
  std::vector<DerivationStep> steps;
};

// Earley recognizer over an arbitrary grammar; handles epsilon rules and
// left recursion. Construction compiles the grammar once; recognition
// allocates per-call state and is safe to run concurrently.
class EarleyRecognizer {
 public:
  explicit EarleyRecognizer(const Grammar& g);
  ~EarleyRecognizer();
  EarleyRecognizer(EarleyRecognizer&&) noexcept;
  EarleyRecognizer& operator=(EarleyRecognizer&&) noexcept;

  bool recognize(std::string_view s) const;
  std::optional<Derivation> derive(std::string_view s) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool recognize(const Grammar& g, std::string_view s);
std::optional<Derivation> derive(const Grammar& g, std::string_view s);

struct GenerateLimits {
  std::size_t max_length = 12;
  std::size_t node_budget = 2'000'000;    // sentential forms explored
  std::size_t derivation_budget = 50'000'000;  // symbols across derivation forms
};

// Exactly { s in L(g) : |s| <= max_length }, in length-then-lex order.
// Breadth-first closure of the one-step relation over leftmost expansions,
// pruning forms whose minimal terminal length exceeds the cap.
std::vector<std::string> generate(const Grammar& g, const GenerateLimits& limits = {});

// JSON schema:
//   {"start": "S", "nonterminals": ["S"], "terminals": ["0","1"],
//    "rules": [{"lhs": "S", "rhs": [{"t":"0"},{"n":"S"},{"t":"1"}]}]}
// Schema violations raise GrammarSchemaError with a JSON-path diagnostic.
Grammar import_grammar(const nlohmann::json& doc);
nlohmann::json export_grammar(const Grammar& g);

// Paper-style table, one lhs per line: "S -> 0S1 | 01".
std::string export_bnf(const Grammar& g);

}  // namespace nfstrata
