#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmirv/assertion.hpp"
#include "mmirv/state.hpp"

namespace mmirv {

// ---------------------------------------------------------------------------
// Name resolution
// ---------------------------------------------------------------------------

inline Expected<Term> resolve_atom(const TermAtom& a, const Bindings& env) {
  switch (a.kind) {
    case TermAtom::Kind::Int:
      return Term::int_lit(a.value);
    case TermAtom::Kind::Poison:
      return Term::poison();
    case TermAtom::Kind::Unit:
      return Term::unit();
    case TermAtom::Kind::Name: {
      auto it = env.find(a.name);
      if (it == env.end())
        return VerifyError{VerifyError::Kind::UnboundLocal,
                           "unbound name '" + a.name + "' in assertion", a.loc};
      return it->second;
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed atom", a.loc};
}

inline Expected<Fact> resolve_pure(const PurePat& p, const Bindings& env) {
  auto l = resolve_atom(p.lhs, env);
  if (!l) return l.error();
  auto r = resolve_atom(p.rhs, env);
  if (!r) return r.error();
  switch (p.rel) {
    case Fact::Kind::Eq:
      return Fact::eq(l.value(), r.value());
    case Fact::Kind::Neq:
      return Fact::neq(l.value(), r.value());
    case Fact::Kind::Le:
      return Fact::le(l.value(), r.value());
    case Fact::Kind::Lt:
      return Fact::lt(l.value(), r.value());
    default:
      return VerifyError{VerifyError::Kind::UnprovenFact, "unsupported relation", p.loc};
  }
}

// ---------------------------------------------------------------------------
// Ground chunk lookup (engine-internal consumes: tokens, updates, open/close)
// ---------------------------------------------------------------------------

/// Coefficient demand for a ground chunk take.
struct CoeffReq {
  enum class Kind { One, Concrete, ExactTerm, TakeAll };

  Kind kind = Kind::One;
  Fraction frac;
  Term term;

  static CoeffReq one() { return {}; }
  static CoeffReq concrete(Fraction f) { return {Kind::Concrete, f, Term()}; }
  static CoeffReq exact_term(Term t) {
    if (t.kind() == Term::Kind::FracLit) return concrete(t.frac_value());
    return {Kind::ExactTerm, Fraction(), std::move(t)};
  }
  static CoeffReq take_all() { return {Kind::TakeAll, Fraction(), Term()}; }
};

struct TakeResult {
  SymbolicState state;
  Coeff taken;
};

namespace detail {

inline bool args_match(const PathCondition& pc, const std::vector<Term>& pattern,
                       const std::vector<Term>& actual) {
  if (pattern.size() != actual.size()) return false;
  for (size_t i = 0; i < pattern.size(); ++i)
    if (!pc.proves_equal(pattern[i], actual[i])) return false;
  return true;
}

/// Applies a coefficient demand to the chunk at index `i`, removing or
/// splitting it. Persistent chunks are left in place. Returns the taken
/// coefficient, or nothing if the demand cannot be met from this chunk.
inline std::optional<Coeff> take_coeff(SymbolicState& st, size_t i, const CoeffReq& req) {
  Chunk& c = st.heap.at(i);
  if (PredTable::is_persistent(c.pred)) return c.coeff;  // matched, never removed
  switch (req.kind) {
    case CoeffReq::Kind::One:
      if (!c.coeff.is_one()) return std::nullopt;
      break;
    case CoeffReq::Kind::Concrete: {
      if (!c.coeff.concrete()) return std::nullopt;
      const Fraction& have = c.coeff.frac();
      if (have < req.frac) return std::nullopt;
      if (req.frac < have) {
        Coeff taken(req.frac);
        c.coeff = Coeff(have.minus(req.frac));
        return taken;
      }
      break;  // exact: remove whole chunk
    }
    case CoeffReq::Kind::ExactTerm:
      if (!(!c.coeff.concrete() && st.pc.proves_equal(req.term, c.coeff.term())))
        return std::nullopt;
      break;
    case CoeffReq::Kind::TakeAll:
      break;
  }
  Coeff taken = c.coeff;
  st.heap.remove_at(i);
  return taken;
}

}  // namespace detail

/// Removes (or splits) one chunk whose predicate and arguments provably match.
/// `missing_kind` customizes the error for token obligations.
inline Expected<TakeResult> take_ground_chunk(
    const SymbolicState& state, const std::string& pred, const std::vector<Term>& args,
    const CoeffReq& req, VerifyError::Kind missing_kind = VerifyError::Kind::MissingChunk,
    Loc loc = kNoLoc) {
  bool args_matched = false;
  for (size_t i = 0; i < state.heap.size(); ++i) {
    const Chunk& c = state.heap.at(i);
    if (c.pred != pred) continue;
    if (!detail::args_match(state.pc, args, c.args)) continue;
    args_matched = true;
    SymbolicState next = state;
    if (auto taken = detail::take_coeff(next, i, req)) return TakeResult{std::move(next), *taken};
  }
  Chunk want(pred, args);
  if (args_matched)
    return VerifyError{VerifyError::Kind::InsufficientFraction,
                       "held fraction of " + want.to_string() + " is insufficient", loc};
  return VerifyError{missing_kind, "no chunk matches " + want.to_string(), loc};
}

/// Presence probe without removal.
inline bool holds_chunk(const SymbolicState& state, const std::string& pred,
                        const std::vector<Term>& args) {
  for (const auto& c : state.heap.chunks())
    if (c.pred == pred && detail::args_match(state.pc, args, c.args)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Produce
// ---------------------------------------------------------------------------

namespace detail {

inline Expected<Term> produce_arg(const ArgPat& a, Bindings& env, SymbolSource& src) {
  switch (a.kind) {
    case ArgPat::Kind::Atom:
      return resolve_atom(a.atom, env);
    case ArgPat::Kind::Binder: {
      auto it = env.find(a.binder);
      if (it != env.end()) return it->second;
      Term fresh = src.fresh(a.binder);
      env.emplace(a.binder, fresh);
      return fresh;
    }
    case ArgPat::Kind::App: {
      std::vector<Term> kids;
      kids.reserve(a.app_args.size());
      for (const auto& k : a.app_args) {
        auto t = produce_arg(k, env, src);
        if (!t) return t.error();
        kids.push_back(t.value());
      }
      return Term::pred_app(a.app_name, std::move(kids));
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed argument pattern"};
}

}  // namespace detail

/// Adds an assertion's chunks to the heap and assumes its pure facts,
/// left-to-right. Unbound `?x` binders become fresh symbols recorded in
/// `env`; a `?q` coefficient becomes a fresh fraction symbol with
/// 0 < q <= 1. Producing a contradictory pure fact leaves the state
/// inconsistent; the caller prunes such paths.
inline Expected<SymbolicState> produce(SymbolicState state, const Assertion& a, Bindings& env,
                                       SymbolSource& src) {
  switch (a->kind) {
    case AssertionNode::Kind::True:
    case AssertionNode::Kind::Emp:
      return state;
    case AssertionNode::Kind::Star: {
      auto mid = produce(std::move(state), a->lhs, env, src);
      if (!mid) return mid;
      return produce(std::move(mid.value()), a->rhs, env, src);
    }
    case AssertionNode::Kind::Pure: {
      auto f = resolve_pure(a->pure, env);
      if (!f) return f.error();
      state.pc = state.pc.assume(f.value());
      return state;
    }
    case AssertionNode::Kind::Chunk: {
      const ChunkPat& cp = a->chunk;
      Coeff coeff;
      switch (cp.coeff.kind) {
        case FracPat::Kind::One:
          break;
        case FracPat::Kind::Concrete:
          coeff = Coeff(cp.coeff.frac);
          break;
        case FracPat::Kind::Binder: {
          auto it = env.find(cp.coeff.binder);
          if (it != env.end()) {
            coeff = it->second.kind() == Term::Kind::FracLit ? Coeff(it->second.frac_value())
                                                             : Coeff(it->second);
          } else {
            Term q = src.fresh(cp.coeff.binder, Sort::Frac);
            env.emplace(cp.coeff.binder, q);
            state.pc = state.pc.assume(Fact::lt(Term::int_lit(0), q));
            state.pc = state.pc.assume(Fact::le(q, Term::int_lit(1)));
            coeff = Coeff(q);
          }
          break;
        }
      }
      std::vector<Term> args;
      args.reserve(cp.args.size());
      for (const auto& ap : cp.args) {
        auto t = detail::produce_arg(ap, env, src);
        if (!t) return t.error();
        args.push_back(t.value());
      }
      // Persistent chunks are duplicable; an already-held copy is enough.
      if (PredTable::is_persistent(cp.pred) && holds_chunk(state, cp.pred, args)) return state;
      state.heap.add(Chunk(cp.pred, coeff, std::move(args)));
      return state;
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed assertion"};
}

// ---------------------------------------------------------------------------
// Consume
// ---------------------------------------------------------------------------

struct ConsumeResult {
  SymbolicState state;
  Bindings env;
};

namespace detail {

using Conjunct = std::variant<ChunkPat, PurePat>;

inline void flatten(const Assertion& a, std::vector<Conjunct>& out) {
  switch (a->kind) {
    case AssertionNode::Kind::True:
    case AssertionNode::Kind::Emp:
      return;
    case AssertionNode::Kind::Star:
      flatten(a->lhs, out);
      flatten(a->rhs, out);
      return;
    case AssertionNode::Kind::Pure:
      out.push_back(a->pure);
      return;
    case AssertionNode::Kind::Chunk:
      out.push_back(a->chunk);
      return;
  }
}

/// Deepest-failure tracking for error reporting.
struct MatchFail {
  int depth = -1;
  VerifyError err{VerifyError::Kind::MissingChunk, "empty assertion", {}};

  void note(int d, VerifyError e) {
    if (d > depth) {
      depth = d;
      err = std::move(e);
    }
  }
};

/// Renders a chunk pattern with the current bindings substituted, for
/// error messages.
inline std::string render_resolved(const ChunkPat& cp, const Bindings& env) {
  std::string s = cp.coeff.to_string() + cp.pred + "(";
  for (size_t i = 0; i < cp.args.size(); ++i) {
    if (i) s += ", ";
    const ArgPat& a = cp.args[i];
    if (a.kind == ArgPat::Kind::Atom && a.atom.kind == TermAtom::Kind::Name &&
        env.count(a.atom.name))
      s += env.at(a.atom.name).to_string();
    else
      s += a.to_string();
  }
  return s + ")";
}

/// Unifies one argument pattern against a heap term. Ground atoms must be
/// provably equal; unbound binders capture the term; bound binders recheck.
inline bool unify_arg(const ArgPat& pat, const Term& actual, Bindings& env,
                      const PathCondition& pc, std::optional<VerifyError>& hard_err) {
  switch (pat.kind) {
    case ArgPat::Kind::Atom: {
      auto t = resolve_atom(pat.atom, env);
      if (!t) {
        hard_err = t.error();
        return false;
      }
      return pc.proves_equal(t.value(), actual);
    }
    case ArgPat::Kind::Binder: {
      auto it = env.find(pat.binder);
      if (it != env.end()) return pc.proves_equal(it->second, actual);
      env.emplace(pat.binder, actual);
      return true;
    }
    case ArgPat::Kind::App: {
      if (actual.kind() != Term::Kind::PredApp || actual.text() != pat.app_name ||
          actual.kids().size() != pat.app_args.size())
        return false;
      for (size_t i = 0; i < pat.app_args.size(); ++i)
        if (!unify_arg(pat.app_args[i], actual.kids()[i], env, pc, hard_err)) return false;
      return true;
    }
  }
  return false;
}

/// Coefficient demand from a pattern, given current bindings. A bound `?q`
/// behaves like the bound value; an unbound `?q` takes the whole matched
/// chunk and binds q to its coefficient.
inline std::optional<Coeff> consume_coeff(SymbolicState& st, size_t idx, const FracPat& fp,
                                          Bindings& env) {
  const Chunk& c = st.heap.at(idx);
  switch (fp.kind) {
    case FracPat::Kind::One:
      return take_coeff(st, idx, CoeffReq::one());
    case FracPat::Kind::Concrete:
      return take_coeff(st, idx, CoeffReq::concrete(fp.frac));
    case FracPat::Kind::Binder: {
      auto it = env.find(fp.binder);
      if (it != env.end()) return take_coeff(st, idx, CoeffReq::exact_term(it->second));
      Term bound = c.coeff.as_term();
      auto taken = take_coeff(st, idx, CoeffReq::take_all());
      if (taken) env.emplace(fp.binder, bound);
      return taken;
    }
  }
  return std::nullopt;
}

inline std::optional<ConsumeResult> match_conjuncts(const SymbolicState& state,
                                                    const std::vector<Conjunct>& cs, size_t i,
                                                    Bindings env, MatchFail& fail) {
  if (i == cs.size()) return ConsumeResult{state, std::move(env)};

  if (std::holds_alternative<PurePat>(cs[i])) {
    const PurePat& p = std::get<PurePat>(cs[i]);
    auto f = resolve_pure(p, env);
    if (!f) {
      fail.note((int)i, f.error());
      return std::nullopt;
    }
    if (!state.pc.proves(f.value())) {
      fail.note((int)i, {VerifyError::Kind::UnprovenFact,
                         "cannot prove " + f.value().to_string(), p.loc});
      return std::nullopt;
    }
    return match_conjuncts(state, cs, i + 1, std::move(env), fail);
  }

  const ChunkPat& cp = std::get<ChunkPat>(cs[i]);
  bool args_matched = false;
  for (size_t idx = 0; idx < state.heap.size(); ++idx) {
    const Chunk& c = state.heap.at(idx);
    if (c.pred != cp.pred || c.args.size() != cp.args.size()) continue;
    Bindings trial = env;
    std::optional<VerifyError> hard;
    bool ok = true;
    for (size_t k = 0; k < cp.args.size() && ok; ++k)
      ok = unify_arg(cp.args[k], c.args[k], trial, state.pc, hard);
    if (hard) {
      fail.note((int)i, *hard);
      return std::nullopt;
    }
    if (!ok) continue;
    args_matched = true;
    SymbolicState next = state;
    if (!consume_coeff(next, idx, cp.coeff, trial)) continue;
    if (auto r = match_conjuncts(next, cs, i + 1, std::move(trial), fail)) return r;
  }
  if (args_matched)
    fail.note((int)i,
              {VerifyError::Kind::InsufficientFraction,
               "held fraction of " + render_resolved(cp, env) + " is insufficient", cp.loc});
  else
    fail.note((int)i, {VerifyError::Kind::MissingChunk,
                       "no chunk matches " + render_resolved(cp, env), cp.loc});
  return std::nullopt;
}

}  // namespace detail

/// Matches and removes an assertion's chunks left-to-right, backtracking
/// across same-predicate candidates, then proves its pure facts. `?x`
/// argument patterns bind from the matched chunk; fractional demands split
/// tokens, leaving the remainder.
inline Expected<ConsumeResult> consume(const SymbolicState& state, const Assertion& a,
                                       Bindings env) {
  std::vector<detail::Conjunct> cs;
  detail::flatten(a, cs);
  detail::MatchFail fail;
  if (auto r = detail::match_conjuncts(state, cs, 0, std::move(env), fail)) return *r;
  return fail.err;
}

// ---------------------------------------------------------------------------
// Token splitting and merging
// ---------------------------------------------------------------------------

/// Splits `part` off a held token, keeping the remainder (omitted when the
/// split is exact).
inline Expected<Heap> split_token(const Heap& h, const PathCondition& pc, const std::string& pred,
                                  const std::vector<Term>& args, const Fraction& part) {
  SymbolicState st;
  st.heap = h;
  st.pc = pc;
  auto r = take_ground_chunk(st, pred, args, CoeffReq::concrete(part));
  if (!r) return r.error();
  Heap out = r.value().state.heap;
  out.add(Chunk(pred, Coeff(part), args));
  return out;
}

/// Rejoins all concrete-coefficient chunks of `pred` whose arguments are
/// provably equal to `args` into a single chunk. A sum above 1 signals
/// unsound double production of a token.
inline Expected<Heap> merge_tokens(const Heap& h, const PathCondition& pc, const std::string& pred,
                                   const std::vector<Term>& args) {
  Heap out;
  std::optional<Fraction> sum;
  size_t matched = 0;
  for (const auto& c : h.chunks()) {
    bool mergeable =
        c.pred == pred && c.coeff.concrete() && detail::args_match(pc, args, c.args);
    if (!mergeable) {
      out.add(c);
      continue;
    }
    ++matched;
    if (!sum) {
      sum = c.coeff.frac();
    } else {
      auto s = Fraction::add_checked(*sum, c.coeff.frac());
      if (!s)
        return VerifyError{VerifyError::Kind::FractionOverflow,
                           "token fractions of " + Chunk(pred, args).to_string() + " exceed 1"};
      sum = *s;
    }
  }
  if (matched < 2) return h;  // nothing to rejoin
  out.add(Chunk(pred, Coeff(*sum), args));
  return out;
}

}  // namespace mmirv
