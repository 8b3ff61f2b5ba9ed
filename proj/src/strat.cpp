#include "nfstrata/strat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace nfstrata {

namespace {

// Union-find with potentials: pot[x] = level(x) - level(parent(x)).
// Processing atoms in textual order makes the reported conflict the first
// atom inconsistent with everything before it.
class OffsetUnionFind {
 public:
  explicit OffsetUnionFind(std::size_t n) : parent_(n), pot_(n, 0), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  // Returns (root, level(x) - level(root)).
  std::pair<std::size_t, long long> find(std::size_t x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, off] = find(parent_[x]);
    parent_[x] = root;
    pot_[x] += off;
    return {root, pot_[x]};
  }

  // Claim: level(r) = level(l) + offset. Returns false on conflict.
  bool merge(std::size_t l, std::size_t r, long long offset) {
    auto [rl, pl] = find(l);
    auto [rr, pr] = find(r);
    if (rl == rr) return pl + offset == pr;
    // level(rr) = level(l) + offset - pr = level(rl) + pl + offset - pr
    long long pot_rr = pl + offset - pr;
    if (rank_[rl] < rank_[rr]) {
      parent_[rl] = rr;
      pot_[rl] = -pot_rr;
    } else {
      parent_[rr] = rl;
      pot_[rr] = pot_rr;
      if (rank_[rl] == rank_[rr]) ++rank_[rl];
    }
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<long long> pot_;
  std::vector<std::size_t> rank_;
};

struct ForestEdge {
  std::size_t neighbor;
  long long offset;  // level(neighbor) = level(this) + offset
  std::size_t atom_index;
};

// Path between two vertices of the same spanning-forest component.
std::optional<std::vector<std::pair<std::size_t, ForestEdge>>> forest_path(
    const std::vector<std::vector<ForestEdge>>& forest, std::size_t from, std::size_t to) {
  std::vector<int> seen(forest.size(), 0);
  // prev[x] = (previous vertex, edge used to reach x)
  std::vector<std::pair<std::size_t, ForestEdge>> prev(forest.size());
  std::deque<std::size_t> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (const auto& e : forest[u]) {
      if (!seen[e.neighbor]) {
        seen[e.neighbor] = 1;
        prev[e.neighbor] = {u, e};
        queue.push_back(e.neighbor);
      }
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<std::pair<std::size_t, ForestEdge>> path;  // steps from -> to
  for (std::size_t x = to; x != from;) {
    auto [p, e] = prev[x];
    path.push_back({p, ForestEdge{x, e.offset, e.atom_index}});
    x = p;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

template <class V>
StratificationResult<V> solve(const Formula<V>& f) {
  // Interned variable set: everything that occurs, quantifier prefixes
  // included (they may carry no atom constraints but still get a level).
  std::map<V, std::size_t> ids;
  std::vector<V> vars;
  auto intern = [&](const V& v) {
    auto [it, inserted] = ids.emplace(v, vars.size());
    if (inserted) vars.push_back(v);
    return it->second;
  };
  for (const auto& occ : resolve_binders(f).occurrences) intern(occ.variable);

  auto atoms = atomic_occurrences(f);
  OffsetUnionFind uf(vars.size());
  std::vector<std::vector<ForestEdge>> forest(vars.size());

  for (const auto& atom : atoms) {
    if (atom.kind == AtomKind::Bottom) continue;
    std::size_t l = ids.at(*atom.left);
    std::size_t r = ids.at(*atom.right);
    long long offset = atom.kind == AtomKind::Membership ? 1 : 0;
    if (uf.merge(l, r, offset)) {
      if (l != r) {
        forest[l].push_back({r, offset, atom.index});
        forest[r].push_back({l, -offset, atom.index});
      }
      continue;
    }
    // Conflict: cycle = tree path r -> l, then the failing atom l -> r.
    NotStratified<V> failure;
    if (l == r) {
      failure.cycle.push_back({vars[l], vars[r], static_cast<int>(offset), atom.index});
      return failure;
    }
    auto path = forest_path(forest, r, l);
    if (path) {
      for (const auto& [u, e] : *path) {
        failure.cycle.push_back(
            {vars[u], vars[e.neighbor], static_cast<int>(e.offset), e.atom_index});
      }
    }
    failure.cycle.push_back({vars[l], vars[r], static_cast<int>(offset), atom.index});
    return failure;
  }

  // Canonicalize: minimum level of every component is 0.
  Stratification<V> strat;
  std::map<std::size_t, long long> component_min;
  std::vector<std::pair<std::size_t, long long>> raw(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    raw[i] = uf.find(i);
    auto [it, inserted] = component_min.emplace(raw[i].first, raw[i].second);
    if (!inserted && raw[i].second < it->second) it->second = raw[i].second;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    strat.levels[vars[i]] = static_cast<int>(raw[i].second - component_min[raw[i].first]);
  }
  return strat;
}

}  // namespace

StratificationResult<UsualVariable> find_stratification(const Formula<UsualVariable>& f) {
  return solve(f);
}

StratificationResult<EnrichedVariable> find_stratification(const Formula<EnrichedVariable>& f) {
  return solve(f);
}

AcyclicityReport is_acyclic(const Formula<UsualVariable>& f) {
  AcyclicityReport report;

  // Condition 1: per variable, all occurrences free or all bound by one
  // quantifier.
  std::map<UsualVariable, std::set<std::optional<std::size_t>>> binders;
  for (const auto& occ : resolve_binders(f).occurrences) {
    binders[occ.variable].insert(occ.binder);
  }
  for (const auto& [var, seen] : binders) {
    if (seen.size() > 1) report.binding_violations.push_back(var);
  }

  // Condition 2: no cycle in the multigraph with one undirected edge per
  // equality/membership occurrence.
  std::map<UsualVariable, std::size_t> ids;
  std::vector<UsualVariable> vars;
  for (const auto& [var, unused] : binders) {
    ids.emplace(var, vars.size());
    vars.push_back(var);
  }
  OffsetUnionFind uf(vars.size());
  std::vector<std::vector<ForestEdge>> forest(vars.size());
  for (const auto& atom : atomic_occurrences(f)) {
    if (atom.kind == AtomKind::Bottom) continue;
    std::size_t l = ids.at(*atom.left);
    std::size_t r = ids.at(*atom.right);
    if (l == r) {
      report.cycle_witness = CycleWitness{{vars[l], vars[r]}, {atom.index}};
      break;
    }
    if (uf.merge(l, r, 0)) {
      forest[l].push_back({r, 0, atom.index});
      forest[r].push_back({l, 0, atom.index});
      continue;
    }
    CycleWitness witness;
    auto path = forest_path(forest, r, l);
    witness.variables.push_back(vars[r]);
    if (path) {
      for (const auto& [u, e] : *path) {
        witness.variables.push_back(vars[e.neighbor]);
        witness.atom_indices.push_back(e.atom_index);
      }
    }
    witness.variables.push_back(vars[r]);
    witness.atom_indices.push_back(atom.index);
    report.cycle_witness = std::move(witness);
    break;
  }

  report.verdict = report.binding_violations.empty() && !report.cycle_witness;
  return report;
}

ExoReport check_exo_stratified(const Formula<EnrichedVariable>& f) {
  for (const auto& atom : atomic_occurrences(f)) {
    bool ok = true;
    if (atom.kind == AtomKind::Equality) {
      ok = atom.left->stars == atom.right->stars;
    } else if (atom.kind == AtomKind::Membership) {
      ok = atom.left->stars + 1 == atom.right->stars;
    }
    if (!ok) {
      return {false, ExoViolation{atom.index, atom.kind, *atom.left, *atom.right}};
    }
  }
  return {true, std::nullopt};
}

namespace {

template <class W, class V, class Fn>
FormulaPtr<W> map_variables(const Formula<V>& f, const Fn& fn) {
  return std::visit(
      [&](const auto& n) -> FormulaPtr<W> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Bottom>) {
          return make_bottom<W>();
        } else if constexpr (std::is_same_v<T, Equality<V>>) {
          return make_equality<W>(fn(n.left), fn(n.right));
        } else if constexpr (std::is_same_v<T, Membership<V>>) {
          return make_membership<W>(fn(n.left), fn(n.right));
        } else if constexpr (std::is_same_v<T, Implication<V>>) {
          return make_implication<W>(map_variables<W>(*n.antecedent, fn),
                                     map_variables<W>(*n.consequent, fn));
        } else {
          static_assert(std::is_same_v<T, Forall<V>>);
          return make_forall<W>(fn(n.bound), map_variables<W>(*n.body, fn));
        }
      },
      f.node);
}

}  // namespace

EnrichedFormula to_enriched(const Formula<UsualVariable>& f) {
  return map_variables<EnrichedVariable>(
      f, [](const UsualVariable& v) { return EnrichedVariable{v.ticks, 0}; });
}

UsualFormula strip_stars(const Formula<EnrichedVariable>& f) {
  return map_variables<UsualVariable>(
      f, [](const EnrichedVariable& v) { return UsualVariable{v.ticks}; });
}

std::uint64_t cantor_pairing(std::uint32_t n, std::uint32_t m) {
  u128 s = static_cast<u128>(n) + m;
  u128 value = s * (s + 1) / 2 + m;
  if (value > static_cast<u128>(~0ull)) throw std::overflow_error("cantor_pairing overflow");
  return static_cast<std::uint64_t>(value);
}

Result<EnrichedFormula, NotStratified<EnrichedVariable>> exo_stratify(
    const Formula<EnrichedVariable>& f, const PairingFn& pairing) {
  auto solved = find_stratification(f);
  if (!solved.ok()) return solved.error();
  const auto& levels = solved.value().levels;
  return map_variables<EnrichedVariable>(f, [&](const EnrichedVariable& v) {
    std::uint64_t renamed = pairing(v.ticks, v.stars);
    if (renamed > 0xffffffffull) throw std::overflow_error("pairing exceeds tick range");
    int level = levels.at(v);
    return EnrichedVariable{static_cast<std::uint32_t>(renamed),
                            static_cast<std::uint32_t>(level)};
  });
}

namespace {

UsualFormula not_of(UsualFormula f) {
  return make_implication<UsualVariable>(std::move(f), make_bottom<UsualVariable>());
}

UsualFormula iff_of(UsualFormula p, UsualFormula q) {
  // [[[p>q]>[[q>p]>F]]>F]
  return not_of(make_implication<UsualVariable>(make_implication<UsualVariable>(p, q),
                                                not_of(make_implication<UsualVariable>(q, p))));
}

UsualFormula exists_of(UsualVariable v, UsualFormula body) {
  // [[Av][body>F]>F]
  return not_of(make_forall<UsualVariable>(v, not_of(std::move(body))));
}

}  // namespace

Result<UsualFormula, NotStratified<UsualVariable>> nf_comprehension_instance(
    const Formula<UsualVariable>& phi, UsualVariable z) {
  auto solved = find_stratification(phi);
  if (!solved.ok()) return solved.error();

  std::set<UsualVariable> free_vars;
  std::set<std::uint32_t> used_ticks{z.ticks};
  for (const auto& occ : resolve_binders(phi).occurrences) {
    used_ticks.insert(occ.variable.ticks);
    if (!occ.binder) free_vars.insert(occ.variable);
  }
  free_vars.erase(z);

  std::uint32_t fresh = 0;
  while (used_ticks.count(fresh)) ++fresh;
  UsualVariable y{fresh};

  UsualFormula phi_copy =
      map_variables<UsualVariable>(phi, [](const UsualVariable& v) { return v; });
  UsualFormula core = iff_of(make_membership<UsualVariable>(z, y), std::move(phi_copy));
  UsualFormula result = exists_of(y, make_forall<UsualVariable>(z, std::move(core)));
  for (auto it = free_vars.rbegin(); it != free_vars.rend(); ++it) {
    result = make_forall<UsualVariable>(*it, std::move(result));
  }
  return result;
}

UsualFormula extensionality_axiom() {
  UsualVariable x{0}, y{1}, z{2};
  UsualFormula inner = iff_of(make_membership<UsualVariable>(z, x),
                              make_membership<UsualVariable>(z, y));
  UsualFormula body = iff_of(make_equality<UsualVariable>(x, y),
                             make_forall<UsualVariable>(z, std::move(inner)));
  return make_forall<UsualVariable>(x, make_forall<UsualVariable>(y, std::move(body)));
}

}  // namespace nfstrata
