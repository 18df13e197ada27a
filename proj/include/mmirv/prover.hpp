#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mmirv/term.hpp"

namespace mmirv {

/// Atomic facts the path condition can hold about symbols.
struct Fact {
  enum class Kind { Eq, Neq, Le, Lt, LftIncl };

  Kind kind;
  Term lhs;
  Term rhs;

  static Fact eq(Term a, Term b) { return canon({Kind::Eq, std::move(a), std::move(b)}); }
  static Fact neq(Term a, Term b) { return canon({Kind::Neq, std::move(a), std::move(b)}); }
  static Fact le(Term a, Term b) { return {Kind::Le, std::move(a), std::move(b)}; }
  static Fact lt(Term a, Term b) { return {Kind::Lt, std::move(a), std::move(b)}; }
  static Fact lft_incl(Term a, Term b) { return {Kind::LftIncl, std::move(a), std::move(b)}; }

  /// The negation, where expressible. LftIncl has none.
  std::optional<Fact> negated() const {
    switch (kind) {
      case Kind::Eq:
        return neq(lhs, rhs);
      case Kind::Neq:
        return eq(lhs, rhs);
      case Kind::Le:
        return lt(rhs, lhs);
      case Kind::Lt:
        return le(rhs, lhs);
      case Kind::LftIncl:
        return std::nullopt;
    }
    return std::nullopt;
  }

  static int compare(const Fact& a, const Fact& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    int c = Term::compare(a.lhs, b.lhs);
    if (c != 0) return c;
    return Term::compare(a.rhs, b.rhs);
  }
  friend bool operator<(const Fact& a, const Fact& b) { return compare(a, b) < 0; }
  friend bool operator==(const Fact& a, const Fact& b) { return compare(a, b) == 0; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Eq:
        return lhs.to_string() + " == " + rhs.to_string();
      case Kind::Neq:
        return lhs.to_string() + " != " + rhs.to_string();
      case Kind::Le:
        return lhs.to_string() + " <= " + rhs.to_string();
      case Kind::Lt:
        return lhs.to_string() + " < " + rhs.to_string();
      case Kind::LftIncl:
        return "lft_incl(" + lhs.to_string() + ", " + rhs.to_string() + ")";
    }
    return "?";
  }

 private:
  // Symmetric facts are stored with ordered operands so duplicates collapse.
  static Fact canon(Fact f) {
    if (Term::compare(f.rhs, f.lhs) < 0) std::swap(f.lhs, f.rhs);
    return f;
  }
};

namespace detail {

/// Congruence closure over the subterms of a fact set, with clash detection
/// for distinct rigid constants, plus difference-bound reasoning over
/// integer-sorted atoms. Rebuilt from scratch on every assume; fact sets in
/// this tool stay small.
class Solver {
 public:
  explicit Solver(const std::set<Fact>& facts) {
    for (const Fact& f : facts) {
      index_term(f.lhs);
      index_term(f.rhs);
    }
    // Equality closure.
    for (const Fact& f : facts)
      if (f.kind == Fact::Kind::Eq) merge(idx(f.lhs), idx(f.rhs));
    congruence_fixpoint();
    if (clash_) return;

    build_bounds(facts);
    if (clash_) return;

    // Disequalities against both engines.
    for (const Fact& f : facts) {
      if (f.kind != Fact::Kind::Neq) continue;
      if (find(idx(f.lhs)) == find(idx(f.rhs))) {
        clash_ = true;
        return;
      }
      if (bounds_equal(f.lhs, f.rhs)) {
        clash_ = true;
        return;
      }
    }

    // Lifetime inclusion: reflexive-transitive saturation.
    for (const Fact& f : facts)
      if (f.kind == Fact::Kind::LftIncl) incl_.insert({find(idx(f.lhs)), find(idx(f.rhs))});
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& a : incl_)
        for (const auto& b : incl_)
          if (a.second == b.first && !incl_.count({a.first, b.second})) {
            incl_.insert({a.first, b.second});
            changed = true;
            break;
          }
    }
  }

  bool contradiction() const { return clash_; }

  bool lft_included(const Term& a, const Term& b) {
    index_term(a);
    index_term(b);
    congruence_fixpoint();
    int ra = find(idx(a)), rb = find(idx(b));
    return ra == rb || incl_.count({ra, rb}) > 0;
  }

 private:
  // ---- term table / union-find ----

  int idx(const Term& t) {
    auto it = term_ids_.find(t);
    return it->second;
  }

  void index_term(const Term& t) {
    if (term_ids_.count(t)) return;
    int id = (int)terms_.size();
    terms_.push_back(t);
    term_ids_.emplace(t, id);
    parent_.push_back(id);
    rigid_.push_back(t.is_rigid() ? id : -1);
    for (const Term& k : t.kids()) index_term(k);
  }

  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Two distinct rigid constants in one class is a contradiction.
    if (rigid_[a] >= 0 && rigid_[b] >= 0 &&
        Term::compare(terms_[rigid_[a]], terms_[rigid_[b]]) != 0) {
      clash_ = true;
    }
    parent_[a] = b;
    if (rigid_[b] < 0) rigid_[b] = rigid_[a];
  }

  void congruence_fixpoint() {
    bool changed = true;
    while (changed && !clash_) {
      changed = false;
      for (size_t i = 0; i < terms_.size(); ++i) {
        const Term& a = terms_[i];
        if (a.kids().empty()) continue;
        for (size_t j = i + 1; j < terms_.size(); ++j) {
          const Term& b = terms_[j];
          if (a.kind() != b.kind() || a.kids().size() != b.kids().size()) continue;
          if (a.kind() == Term::Kind::PredApp && a.text() != b.text()) continue;
          if (find((int)i) == find((int)j)) continue;
          bool kids_eq = true;
          for (size_t k = 0; k < a.kids().size(); ++k)
            if (find(idx(a.kids()[k])) != find(idx(b.kids()[k]))) {
              kids_eq = false;
              break;
            }
          if (kids_eq) {
            merge((int)i, (int)j);
            changed = true;
          }
        }
      }
    }
  }

  // ---- difference bounds over integer-sorted atoms ----

  static bool int_sorted(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::IntLit:
        return true;
      case Term::Kind::Sym:
        return t.sort() == Sort::Int;
      case Term::Kind::Add:
      case Term::Kind::Sub:
        return int_sorted(t.kids()[0]) && int_sorted(t.kids()[1]);
      default:
        return false;
    }
  }

  // Decompose t into (base term or nullopt for the zero node, literal offset).
  std::pair<std::optional<Term>, long long> decompose(const Term& t) {
    if (t.kind() == Term::Kind::IntLit) return {std::nullopt, t.int_value()};
    if (t.kind() == Term::Kind::Add && t.kids()[1].kind() == Term::Kind::IntLit) {
      auto [b, off] = decompose(t.kids()[0]);
      return {b, off + t.kids()[1].int_value()};
    }
    if (t.kind() == Term::Kind::Sub && t.kids()[1].kind() == Term::Kind::IntLit) {
      auto [b, off] = decompose(t.kids()[0]);
      return {b, off - t.kids()[1].int_value()};
    }
    return {t, 0};
  }

  int bnode(const std::optional<Term>& base) {
    int key = base ? find(idx(*base)) : -1;  // -1 is the zero node
    auto it = bnode_ids_.find(key);
    if (it != bnode_ids_.end()) return it->second;
    int id = nnodes_++;
    bnode_ids_.emplace(key, id);
    return id;
  }

  void add_edge(int from, int to, long long w) {
    auto key = std::make_pair(from, to);
    auto it = edges_.find(key);
    if (it == edges_.end() || w < it->second) edges_[key] = w;
  }

  void build_bounds(const std::set<Fact>& facts) {
    // Constraint a - b <= c becomes edge (a, b, c); shortest paths give the
    // tightest derivable difference bound. Facts touching fraction-sorted
    // symbols obey rational semantics and are excluded.
    for (const Fact& f : facts) {
      bool is_arith = f.kind == Fact::Kind::Le || f.kind == Fact::Kind::Lt ||
                      f.kind == Fact::Kind::Eq;
      if (!is_arith || !int_sorted(f.lhs) || !int_sorted(f.rhs)) continue;
      auto [lb, lo] = decompose(f.lhs);
      auto [rb, ro] = decompose(f.rhs);
      int a = bnode(lb), b = bnode(rb);
      long long slack = ro - lo;
      switch (f.kind) {
        case Fact::Kind::Le:
          add_edge(a, b, slack);
          break;
        case Fact::Kind::Lt:
          add_edge(a, b, slack - 1);
          break;
        case Fact::Kind::Eq:
          add_edge(a, b, slack);
          add_edge(b, a, -slack);
          break;
        default:
          break;
      }
    }
    // Floyd-Warshall; the graphs here have a handful of nodes.
    const long long INF = (long long)1 << 60;
    dist_.assign(nnodes_, std::vector<long long>(nnodes_, INF));
    for (int i = 0; i < nnodes_; ++i) dist_[i][i] = 0;
    for (const auto& [key, w] : edges_)
      dist_[key.first][key.second] = std::min(dist_[key.first][key.second], w);
    for (int k = 0; k < nnodes_; ++k)
      for (int i = 0; i < nnodes_; ++i)
        for (int j = 0; j < nnodes_; ++j)
          if (dist_[i][k] < INF && dist_[k][j] < INF)
            dist_[i][j] = std::min(dist_[i][j], dist_[i][k] + dist_[k][j]);
    for (int i = 0; i < nnodes_; ++i)
      if (dist_[i][i] < 0) clash_ = true;
  }

  // Tightest derivable upper bound on a - b, if any.
  std::optional<long long> diff_upper(const Term& a, const Term& b) {
    if (!int_sorted(a) || !int_sorted(b)) return std::nullopt;
    auto [ab, ao] = decompose(a);
    auto [bb, bo] = decompose(b);
    int an_key = ab ? find(idx(*ab)) : -1;
    int bn_key = bb ? find(idx(*bb)) : -1;
    if (an_key == bn_key) return ao - bo;
    auto ai = bnode_ids_.find(an_key), bi = bnode_ids_.find(bn_key);
    if (ai == bnode_ids_.end() || bi == bnode_ids_.end()) return std::nullopt;
    long long d = dist_[ai->second][bi->second];
    if (d >= ((long long)1 << 60)) return std::nullopt;
    return d + ao - bo;
  }

  bool bounds_equal(const Term& a, const Term& b) {
    auto ab = diff_upper(a, b);
    auto ba = diff_upper(b, a);
    return ab && ba && *ab <= 0 && *ba <= 0;
  }

  std::vector<Term> terms_;
  std::map<Term, int> term_ids_;
  std::vector<int> parent_;
  std::vector<int> rigid_;
  bool clash_ = false;

  std::map<int, int> bnode_ids_;
  int nnodes_ = 0;
  std::map<std::pair<int, int>, long long> edges_;
  std::vector<std::vector<long long>> dist_;

  std::set<std::pair<int, int>> incl_;
};

}  // namespace detail

/// The knowledge base about symbols along one execution path. Immutable:
/// assume returns an extended copy. Once inconsistent, always inconsistent.
class PathCondition {
 public:
  PathCondition() = default;

  const std::set<Fact>& facts() const { return facts_; }
  bool consistent() const { return consistent_; }

  /// Add a fact and recompute the status. Monotone in the fact set.
  PathCondition assume(const Fact& f) const {
    PathCondition out = *this;
    out.facts_.insert(f);
    if (out.consistent_) out.consistent_ = !detail::Solver(out.facts_).contradiction();
    return out;
  }

  /// Conservative validity: true only if f holds in every model of the
  /// facts. Refutation-based for negatable facts; saturation for LftIncl.
  bool proves(const Fact& f) const {
    if (!consistent_) return true;  // vacuous
    if (facts_.count(f)) return true;  // the exact fact is already known
    if (f.kind == Fact::Kind::LftIncl) {
      detail::Solver s(facts_);
      return s.lft_included(f.lhs, f.rhs);
    }
    auto neg = f.negated();
    std::set<Fact> trial = facts_;
    trial.insert(*neg);
    return detail::Solver(trial).contradiction();
  }

  /// Provable term equality (used by the chunk matcher).
  bool proves_equal(const Term& a, const Term& b) const {
    if (Term::compare(a, b) == 0) return true;
    if (!consistent_) return true;
    return proves(Fact::eq(a, b));
  }

 private:
  std::set<Fact> facts_;
  bool consistent_ = true;
};

/// prove() verdicts: the checker is deliberately incomplete, so the
/// negative answer is "unknown", never "disproven".
enum class ProofResult { Proven, Unknown };

inline PathCondition assume(const PathCondition& pc, const Fact& f) { return pc.assume(f); }

inline ProofResult prove(const PathCondition& pc, const Fact& f) {
  return pc.proves(f) ? ProofResult::Proven : ProofResult::Unknown;
}

}  // namespace mmirv
