#pragma once

#include <string>
#include <vector>

#include "mmirv/consume.hpp"
#include "mmirv/ir.hpp"
#include "mmirv/state.hpp"

namespace mmirv {

/// Per-function verification context fixed at entry: the entry token
/// fractions that must be returned, the ambient thread, and the function
/// lifetime. Contract binders and ghost bindings live in the per-path
/// environment instead.
struct FunctionContext {
  Term fn_lft;
  Term thread;
  std::vector<std::pair<Term, Term>> entry_tokens;  // (lifetime, fraction symbol)
};

struct InitResult {
  SymbolicState state;
  FunctionContext ctx;
  Bindings env;  // parameters, lifetimes, tid
};

/// Builds the entry state a function's signature guarantees: a fresh symbol
/// per parameter, a fractional lifetime token per lifetime parameter (with
/// the outlives fact for the function lifetime), the thread token, and the
/// ownership interpretation chunk for each reference-typed parameter.
inline Expected<InitResult> init_function_resources(const PredTable& preds, const FunctionDef& f,
                                                    SymbolSource& src) {
  InitResult r;
  SymbolicState& st = r.state;

  for (const auto& [name, type] : f.params) {
    Term v;
    switch (type.kind) {
      case TypeExpr::Kind::Unit:
        v = Term::unit();
        break;
      case TypeExpr::Kind::Bool:
        v = src.fresh(name, Sort::Bool);
        break;
      default:
        v = src.fresh(name);
        break;
    }
    st.store.emplace(name, v);
    r.env.emplace(name, v);
  }

  r.ctx.fn_lft = src.fresh_lft("fn");
  r.ctx.thread = src.fresh_thread("t");
  r.env.emplace("tid", r.ctx.thread);
  st.heap.add(Chunk("na_token", {r.ctx.thread}));

  for (const auto& lp : f.lifetime_params) {
    Term lft = src.fresh_lft(lp);
    r.env.emplace("'" + lp, lft);
    Term q = src.fresh("q", Sort::Frac);
    st.pc = st.pc.assume(Fact::lt(Term::int_lit(0), q));
    st.pc = st.pc.assume(Fact::le(q, Term::int_lit(1)));
    st.pc = st.pc.assume(Fact::lft_incl(r.ctx.fn_lft, lft));
    st.heap.add(Chunk("lft", Coeff(q), {lft}));
    r.ctx.entry_tokens.push_back({lft, q});
  }

  // Ownership interpretation per parameter type. Raw addresses guarantee
  // nothing; shared references carry their pointee's own predicate.
  for (const auto& [name, type] : f.params) {
    switch (type.kind) {
      case TypeExpr::Kind::Int:
      case TypeExpr::Kind::Bool:
      case TypeExpr::Kind::Unit:
      case TypeExpr::Kind::RawAddr:
        break;
      case TypeExpr::Kind::SharedRef: {
        if (type.pointee->kind != TypeExpr::Kind::StructRef)
          return VerifyError{VerifyError::Kind::UnsupportedType,
                             "shared references to non-struct types are not supported (parameter '" +
                                 name + "')",
                             f.loc};
        std::string own_pred = "shr_ref_" + type.pointee->name + "_own";
        if (!preds.user_def(own_pred))
          return VerifyError{VerifyError::Kind::UnsupportedType,
                             "parameter '" + name + "' needs predicate '" + own_pred +
                                 "' to interpret its type",
                             f.loc};
        auto lft_it = r.env.find("'" + type.name);
        if (lft_it == r.env.end())
          return VerifyError{VerifyError::Kind::UnsupportedType,
                             "lifetime '" + type.name + "' of parameter '" + name +
                                 "' is not a lifetime parameter",
                             f.loc};
        st.heap.add(Chunk(own_pred, {lft_it->second, r.ctx.thread, r.env.at(name)}));
        break;
      }
      case TypeExpr::Kind::StructRef:
        return VerifyError{VerifyError::Kind::UnsupportedType,
                           "by-value struct parameters are not supported (parameter '" + name +
                               "')",
                           f.loc};
    }
  }
  return r;
}

namespace detail {

/// Consumes the body of a predicate instance (one unfold level). User
/// predicates consume their defining body; built-in chunk families consume
/// the chunk itself.
inline Expected<SymbolicState> consume_instance_body(const SymbolicState& state,
                                                     const PredTable& preds, const Term& inst,
                                                     Loc loc) {
  const std::string& name = inst.text();
  if (const PredicateDef* def = preds.user_def(name)) {
    Bindings env;
    for (size_t i = 0; i < def->formals.size(); ++i) env.emplace(def->formals[i], inst.kids()[i]);
    auto r = consume(state, def->body, std::move(env));
    if (!r) return r.error();
    return r.value().state;
  }
  if (preds.arity(name)) {
    auto r = take_ground_chunk(state, name, inst.kids(), CoeffReq::one(),
                               VerifyError::Kind::MissingChunk, loc);
    if (!r) return r.error();
    return r.value().state;
  }
  return VerifyError{VerifyError::Kind::UndefinedPredicate, "undefined predicate '" + name + "'",
                     loc};
}

/// Produces the body of a predicate instance (one unfold level), fresh
/// symbols for body binders.
inline Expected<SymbolicState> produce_instance_body(SymbolicState state, const PredTable& preds,
                                                     const Term& inst, SymbolSource& src,
                                                     Loc loc) {
  const std::string& name = inst.text();
  if (const PredicateDef* def = preds.user_def(name)) {
    Bindings env;
    for (size_t i = 0; i < def->formals.size(); ++i) env.emplace(def->formals[i], inst.kids()[i]);
    return produce(std::move(state), def->body, env, src);
  }
  if (preds.arity(name)) {
    state.heap.add(Chunk(name, inst.kids()));
    return state;
  }
  return VerifyError{VerifyError::Kind::UndefinedPredicate, "undefined predicate '" + name + "'",
                     loc};
}

}  // namespace detail

struct NaAccResult {
  SymbolicState state;
  Term update_token;
  Coeff taken;
};

/// LftL-na-acc: against a held non-atomic persistent borrow, trades a
/// lifetime token fraction and the thread token for the borrowed payload
/// plus a one-shot update that takes the payload back and returns the
/// tokens. The borrow itself persists.
inline Expected<NaAccResult> apply_lftl_na_acc(const SymbolicState& state, const PredTable& preds,
                                               const Term& lifetime, const CoeffReq& frac,
                                               const Term& thread, const Term& borrow_body,
                                               SymbolSource& src, Loc loc = kNoLoc) {
  if (!holds_chunk(state, "na_bor", {lifetime, thread, borrow_body}))
    return VerifyError{VerifyError::Kind::MissingChunk,
                       "no chunk matches " +
                           Chunk("na_bor", {lifetime, thread, borrow_body}).to_string(),
                       loc};

  auto na_taken = take_ground_chunk(state, "na_token", {thread}, CoeffReq::one(),
                                    VerifyError::Kind::MissingChunk, loc);
  if (!na_taken) return na_taken.error();
  auto lft_taken = take_ground_chunk(na_taken.value().state, "lft", {lifetime}, frac,
                                     VerifyError::Kind::MissingChunk, loc);
  if (!lft_taken) return lft_taken.error();

  auto produced =
      detail::produce_instance_body(lft_taken.value().state, preds, borrow_body, src, loc);
  if (!produced) return produced.error();

  NaAccResult out{std::move(produced.value()), src.fresh("u"), lft_taken.value().taken};
  out.state.heap.add(
      Chunk("na_upd", {out.update_token, lifetime, out.taken.as_term(), thread, borrow_body}));
  return out;
}

/// Applies a one-shot update: consumes the handed-out payload, removes the
/// update chunk and returns the lifetime token fraction and thread token.
inline Expected<SymbolicState> apply_update(const SymbolicState& state, const PredTable& preds,
                                            const Term& token, Loc loc = kNoLoc) {
  if (!token.is_sym())
    return VerifyError{VerifyError::Kind::UnknownUpdate, "not an update token", loc};
  if (state.applied_updates.count(token.id()))
    return VerifyError{VerifyError::Kind::UnknownUpdate, "update already applied", loc};

  const Chunk* upd = nullptr;
  size_t upd_idx = 0;
  for (size_t i = 0; i < state.heap.size(); ++i) {
    const Chunk& c = state.heap.at(i);
    if (c.pred == "na_upd" && c.args.size() == 5 &&
        state.pc.proves_equal(c.args[0], token)) {
      upd = &c;
      upd_idx = i;
      break;
    }
  }
  if (!upd) return VerifyError{VerifyError::Kind::UnknownUpdate, "no such update", loc};

  Term lifetime = upd->args[1], coeff = upd->args[2], thread = upd->args[3],
       payload = upd->args[4];
  SymbolicState st = state;
  st.heap.remove_at(upd_idx);

  auto paid = detail::consume_instance_body(st, preds, payload, loc);
  if (!paid)
    return VerifyError{VerifyError::Kind::MissingChunk,
                       "update payload not given back: " + paid.error().detail, loc};

  st = std::move(paid.value());
  st.heap.add(Chunk("lft",
                    coeff.kind() == Term::Kind::FracLit ? Coeff(coeff.frac_value()) : Coeff(coeff),
                    {lifetime}));
  st.heap.add(Chunk("na_token", {thread}));
  st.applied_updates.insert(token.id());
  return st;
}

/// Replaces a predicate chunk by the produce of its defining body.
inline Expected<SymbolicState> open_predicate(const SymbolicState& state, const PredTable& preds,
                                              const std::string& name,
                                              const std::vector<Term>& args, SymbolSource& src,
                                              Loc loc = kNoLoc) {
  const PredicateDef* def = preds.user_def(name);
  if (!def && name != "unit_own")
    return VerifyError{VerifyError::Kind::UndefinedPredicate,
                       "cannot open undefined predicate '" + name + "'", loc};
  auto taken = take_ground_chunk(state, name, args, CoeffReq::one(),
                                 VerifyError::Kind::MissingChunk, loc);
  if (!taken) return taken.error();
  if (!def) return taken.value().state;  // unit_own's body is emp
  Bindings env;
  for (size_t i = 0; i < def->formals.size(); ++i) env.emplace(def->formals[i], args[i]);
  return produce(std::move(taken.value().state), def->body, env, src);
}

/// Consumes a predicate's defining body and produces the folded chunk.
/// unit_own folds out of thin air.
inline Expected<SymbolicState> close_predicate(const SymbolicState& state, const PredTable& preds,
                                               const std::string& name,
                                               const std::vector<Term>& args, Loc loc = kNoLoc) {
  const PredicateDef* def = preds.user_def(name);
  if (!def && name != "unit_own")
    return VerifyError{VerifyError::Kind::UndefinedPredicate,
                       "cannot close undefined predicate '" + name + "'", loc};
  SymbolicState st = state;
  if (def) {
    Bindings env;
    for (size_t i = 0; i < def->formals.size(); ++i) env.emplace(def->formals[i], args[i]);
    auto r = consume(state, def->body, std::move(env));
    if (!r) return r.error();
    st = std::move(r.value().state);
  }
  st.heap.add(Chunk(name, args));
  return st;
}

/// Return-point obligations: give back the exact entry fraction of every
/// lifetime parameter's token and the thread token, then require the heap
/// to be empty apart from persistent borrows.
inline Expected<SymbolicState> check_return_obligations(const SymbolicState& state,
                                                        const FunctionContext& ctx,
                                                        Loc loc = kNoLoc) {
  SymbolicState st = state;
  for (const auto& [lft, frac] : ctx.entry_tokens) {
    auto r = take_ground_chunk(st, "lft", {lft}, CoeffReq::exact_term(frac),
                               VerifyError::Kind::MissingToken, loc);
    if (!r)
      return VerifyError{VerifyError::Kind::MissingToken,
                         "entry fraction of lft(" + lft.to_string() + ") not returned", loc};
    st = std::move(r.value().state);
  }
  auto r = take_ground_chunk(st, "na_token", {ctx.thread}, CoeffReq::one(),
                             VerifyError::Kind::MissingNaToken, loc);
  if (!r)
    return VerifyError{VerifyError::Kind::MissingNaToken,
                       "thread token na_token(" + ctx.thread.to_string() + ") not returned", loc};
  st = std::move(r.value().state);

  std::vector<std::string> leftovers;
  for (const auto& c : st.heap.chunks())
    if (!PredTable::is_persistent(c.pred)) leftovers.push_back(c.to_string());
  if (!leftovers.empty()) {
    std::sort(leftovers.begin(), leftovers.end());
    std::string detail;
    for (const auto& s : leftovers) detail += (detail.empty() ? "" : ", ") + s;
    return VerifyError{VerifyError::Kind::LeakedChunks, "leaked chunks: {" + detail + "}", loc};
  }
  return st;
}

}  // namespace mmirv
