#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mmirv/consume.hpp"
#include "mmirv/ir.hpp"
#include "mmirv/lifetime.hpp"
#include "mmirv/printer.hpp"
#include "mmirv/state.hpp"

namespace mmirv {

struct ExecOptions {
  bool trace = false;
  size_t max_paths = 10000;
};

enum class Outcome { Ongoing, Verified, Failed, Pruned, SkippedUnwind };

/// One step of one symbolic execution path. Leaves carry non-ongoing
/// outcomes; the tree fans out at allocation, branching, and unwind edges.
struct PathNode {
  std::string block;
  int step_index = -1;  // statement index; -1 for entry/terminator rows
  std::string action;
  SymbolicState state;
  Outcome outcome = Outcome::Ongoing;
  std::optional<VerifyError> error;
  std::vector<std::unique_ptr<PathNode>> children;
};

struct VerificationResult {
  enum class Status { Verified, Failed };

  std::string function;
  Status status = Status::Verified;
  size_t paths_explored = 0;
  size_t skipped_unwind = 0;
  std::optional<std::pair<Loc, VerifyError>> first_failure;
  std::unique_ptr<PathNode> tree;
  bool max_paths_hit = false;

  bool verified() const { return status == Status::Verified && !max_paths_hit; }
};

/// Callee interface at a call site: either a user function or a built-in
/// deallocator `free_S` whose contract consumes the malloc block and every
/// field chunk of S.
struct CalleeSig {
  std::vector<std::string> params;
  std::vector<std::string> lifetime_params;
  TypeExpr return_type = TypeExpr::unit_ty();
  Contract contract;
};

inline std::optional<CalleeSig> callee_signature(const Program& p, const std::string& name) {
  if (const FunctionDef* f = p.find_function(name)) {
    CalleeSig sig;
    for (const auto& [pn, _] : f->params) sig.params.push_back(pn);
    sig.lifetime_params = f->lifetime_params;
    sig.return_type = f->return_type;
    sig.contract = f->contract;
    return sig;
  }
  if (name.rfind("free_", 0) == 0) {
    const StructDef* s = p.find_struct(name.substr(5));
    if (!s) return std::nullopt;
    CalleeSig sig;
    sig.params = {"p"};
    ChunkPat mb{FracPat::one(), "malloc_block_" + s->name,
                {ArgPat::from_atom(TermAtom::named("p"))}, kNoLoc};
    Assertion req = AssertionNode::mk_chunk(mb);
    for (const auto& fl : s->fields) {
      ChunkPat fc{FracPat::one(),
                  s->name + "_" + fl.name,
                  {ArgPat::from_atom(TermAtom::named("p")), ArgPat::from_binder("old_" + fl.name)},
                  kNoLoc};
      req = AssertionNode::mk_star(req, AssertionNode::mk_chunk(fc));
    }
    sig.contract.requires_clause = req;
    sig.contract.ensures_clause = AssertionNode::mk_true();
    return sig;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Single-step semantics
// ---------------------------------------------------------------------------

namespace detail {

inline Bindings ghost_env(const SymbolicState& st) {
  Bindings env = st.env;
  for (const auto& [k, v] : st.store) env[k] = v;  // current locals win
  return env;
}

inline Expected<std::vector<Term>> resolve_ground_args(const std::vector<ArgPat>& args,
                                                       const Bindings& env, Loc loc) {
  std::vector<Term> out;
  out.reserve(args.size());
  for (const auto& a : args) {
    switch (a.kind) {
      case ArgPat::Kind::Atom: {
        auto t = resolve_atom(a.atom, env);
        if (!t) return t.error();
        out.push_back(t.value());
        break;
      }
      case ArgPat::Kind::App: {
        auto kids = resolve_ground_args(a.app_args, env, loc);
        if (!kids) return kids.error();
        out.push_back(Term::pred_app(a.app_name, std::move(kids.value())));
        break;
      }
      case ArgPat::Kind::Binder:
        return VerifyError{VerifyError::Kind::UnboundLocal,
                           "'?" + a.binder + "' is not allowed here; arguments must be ground",
                           loc};
    }
  }
  return out;
}

inline Fact comparison_fact(BinOpKind op, const Term& a, const Term& b) {
  switch (op) {
    case BinOpKind::Eq:
      return Fact::eq(a, b);
    case BinOpKind::Ne:
      return Fact::neq(a, b);
    case BinOpKind::Le:
      return Fact::le(a, b);
    default:
      return Fact::lt(a, b);
  }
}

inline bool eval_comparison(BinOpKind op, long long a, long long b) {
  switch (op) {
    case BinOpKind::Eq:
      return a == b;
    case BinOpKind::Ne:
      return a != b;
    case BinOpKind::Le:
      return a <= b;
    default:
      return a < b;
  }
}

}  // namespace detail

/// Ghost-command dispatch. Commands resolve their arguments against the
/// current locals first, then the ambient environment.
inline Expected<SymbolicState> exec_ghost(const SymbolicState& state, const GhostCommand& g,
                                          const PredTable& preds, SymbolSource& src) {
  Bindings env = detail::ghost_env(state);
  switch (g.kind) {
    case GhostCommand::Kind::Open:
    case GhostCommand::Kind::Close: {
      auto args = detail::resolve_ground_args(g.inst.args, env, g.loc);
      if (!args) return args.error();
      if (g.kind == GhostCommand::Kind::Open)
        return open_predicate(state, preds, g.inst.name, args.value(), src, g.loc);
      return close_predicate(state, preds, g.inst.name, args.value(), g.loc);
    }
    case GhostCommand::Kind::LemmaNaAcc: {
      auto lft_args = detail::resolve_ground_args(g.lft_chunk.args, env, g.loc);
      if (!lft_args) return lft_args.error();
      auto na_args = detail::resolve_ground_args(g.na_chunk.args, env, g.loc);
      if (!na_args) return na_args.error();
      auto body_args = detail::resolve_ground_args(g.borrow_body.args, env, g.loc);
      if (!body_args) return body_args.error();
      Term body = Term::pred_app(g.borrow_body.name, body_args.value());

      CoeffReq frac = CoeffReq::one();
      std::string frac_binder;
      switch (g.lft_chunk.coeff.kind) {
        case FracPat::Kind::One:
          break;
        case FracPat::Kind::Concrete:
          frac = CoeffReq::concrete(g.lft_chunk.coeff.frac);
          break;
        case FracPat::Kind::Binder: {
          auto it = env.find(g.lft_chunk.coeff.binder);
          if (it != env.end()) {
            frac = CoeffReq::exact_term(it->second);
          } else {
            frac = CoeffReq::take_all();
            frac_binder = g.lft_chunk.coeff.binder;
          }
          break;
        }
      }
      auto r = apply_lftl_na_acc(state, preds, lft_args.value()[0], frac, na_args.value()[0],
                                 body, src, g.loc);
      if (!r) return r.error();
      SymbolicState st = std::move(r.value().state);
      if (!frac_binder.empty()) st.env[frac_binder] = r.value().taken.as_term();
      if (!g.update_binder.empty()) st.env[g.update_binder] = r.value().update_token;
      return st;
    }
    case GhostCommand::Kind::Apply: {
      auto t = resolve_atom(g.apply_token, env);
      if (!t)
        return VerifyError{VerifyError::Kind::UnknownUpdate,
                           "unknown update '" + g.apply_token.to_string() + "'", g.loc};
      return apply_update(state, preds, t.value(), g.loc);
    }
    case GhostCommand::Kind::Leak: {
      auto r = consume(state, AssertionNode::mk_chunk(g.leak_chunk), env);
      if (!r) return r.error();
      SymbolicState st = std::move(r.value().state);
      // Record which chunk was discharged (multiset difference).
      auto before = state.heap.render_sorted();
      auto after = st.heap.render_sorted();
      for (const auto& line : before) {
        auto it = std::find(after.begin(), after.end(), line);
        if (it != after.end()) {
          after.erase(it);
        } else {
          st.leaked.push_back(line);
        }
      }
      return st;
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed ghost command", g.loc};
}

/// Statement semantics. Allocation is nondeterministic and yields two
/// states (failure and success); every other statement yields one.
inline Expected<std::vector<SymbolicState>> exec_statement(const SymbolicState& state,
                                                           const Statement& stmt,
                                                           const PredTable& preds,
                                                           SymbolSource& src) {
  switch (stmt.kind) {
    case Statement::Kind::Assign: {
      const Rvalue& rv = stmt.rvalue;
      switch (rv.kind) {
        case Rvalue::Kind::Alloc: {
          // One fresh address; the branch is on whether allocation failed.
          Term addr = src.fresh(stmt.dest);
          SymbolicState fail = state;
          fail.store[stmt.dest] = addr;
          fail.pc = fail.pc.assume(Fact::eq(addr, Term::int_lit(0)));
          SymbolicState ok = state;
          ok.store[stmt.dest] = addr;
          ok.pc = ok.pc.assume(Fact::neq(addr, Term::int_lit(0)));
          ok.heap.add(Chunk("malloc_block_" + rv.struct_name, {addr}));
          const StructDef* s = preds.program()->find_struct(rv.struct_name);
          if (!s)
            return VerifyError{VerifyError::Kind::UnboundLocal,
                               "alloc of unknown struct '" + rv.struct_name + "'", stmt.loc};
          for (const auto& fl : s->fields)
            ok.heap.add(Chunk(rv.struct_name + "_" + fl.name, {addr, Term::poison()}));
          return std::vector<SymbolicState>{std::move(fail), std::move(ok)};
        }
        case Rvalue::Kind::Use: {
          auto v = eval_operand(state.store, rv.a);
          if (!v) return v.error();
          SymbolicState st = state;
          st.store[stmt.dest] = v.value();
          return std::vector<SymbolicState>{std::move(st)};
        }
        case Rvalue::Kind::BinOp: {
          auto a = eval_operand(state.store, rv.a);
          if (!a) return a.error();
          auto b = eval_operand(state.store, rv.b);
          if (!b) return b.error();
          SymbolicState st = state;
          if (rv.op == BinOpKind::Add || rv.op == BinOpKind::Sub) {
            st.store[stmt.dest] = rv.op == BinOpKind::Add ? Term::add(a.value(), b.value())
                                                          : Term::sub(a.value(), b.value());
          } else if (a.value().kind() == Term::Kind::IntLit &&
                     b.value().kind() == Term::Kind::IntLit) {
            st.store[stmt.dest] = Term::bool_lit(
                detail::eval_comparison(rv.op, a.value().int_value(), b.value().int_value()));
          } else {
            Term flag = src.fresh(stmt.dest, Sort::Bool);
            st.bool_defs.emplace(flag.id(), detail::comparison_fact(rv.op, a.value(), b.value()));
            st.store[stmt.dest] = flag;
          }
          return std::vector<SymbolicState>{std::move(st)};
        }
        case Rvalue::Kind::LoadField: {
          auto addr = eval_operand(state.store, Operand::local(rv.base, stmt.loc));
          if (!addr) return addr.error();
          std::string pred = rv.struct_name + "_" + rv.field;
          for (const auto& c : state.heap.chunks()) {
            if (c.pred != pred || !state.pc.proves_equal(c.args[0], addr.value())) continue;
            if (c.args[1].is_poison())
              return VerifyError{VerifyError::Kind::PoisonRead,
                                 "read of uninitialized field '" + rv.base + "." + rv.field + "'",
                                 stmt.loc};
            SymbolicState st = state;
            st.store[stmt.dest] = c.args[1];
            return std::vector<SymbolicState>{std::move(st)};
          }
          return VerifyError{VerifyError::Kind::MissingChunk,
                             "no chunk matches " + pred + "(" + addr.value().to_string() + ", _)",
                             stmt.loc};
        }
      }
      break;
    }
    case Statement::Kind::StoreField: {
      auto addr = eval_operand(state.store, Operand::local(stmt.base, stmt.loc));
      if (!addr) return addr.error();
      auto val = eval_operand(state.store, stmt.value);
      if (!val) return val.error();
      std::string pred = stmt.struct_name + "_" + stmt.field;
      for (size_t i = 0; i < state.heap.size(); ++i) {
        const Chunk& c = state.heap.at(i);
        if (c.pred != pred || !state.pc.proves_equal(c.args[0], addr.value())) continue;
        SymbolicState st = state;
        st.heap.remove_at(i);
        st.heap.add(Chunk(pred, {addr.value(), val.value()}));
        return std::vector<SymbolicState>{std::move(st)};
      }
      return VerifyError{VerifyError::Kind::MissingChunk,
                         "no chunk matches " + pred + "(" + addr.value().to_string() + ", _)",
                         stmt.loc};
    }
    case Statement::Kind::Ghost: {
      auto r = exec_ghost(state, stmt.ghost, preds, src);
      if (!r) return r.error();
      return std::vector<SymbolicState>{std::move(r.value())};
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed statement", stmt.loc};
}

/// Successor of a terminator step.
struct Successor {
  enum class Kind { Continue, UnwindSkip };

  std::string label;
  SymbolicState state;
  Kind kind = Kind::Continue;
  std::string note;
};

/// Terminator semantics for goto/branch/call. Return and abort produce no
/// successors; the path driver finishes those paths itself.
inline Expected<std::vector<Successor>> exec_terminator(const SymbolicState& state,
                                                        const Terminator& t,
                                                        const Program& program,
                                                        SymbolSource& src) {
  switch (t.kind) {
    case Terminator::Kind::Goto:
      return std::vector<Successor>{{t.target, state, Successor::Kind::Continue, ""}};
    case Terminator::Kind::Branch: {
      auto cond = eval_operand(state.store, t.cond);
      if (!cond) return cond.error();
      const Term& c = cond.value();
      if (c.kind() == Term::Kind::BoolLit) {
        std::string label = c.bool_value() ? t.then_label : t.else_label;
        return std::vector<Successor>{{label, state, Successor::Kind::Continue, "literal"}};
      }
      if (!c.is_sym() || c.sort() != Sort::Bool)
        return VerifyError{VerifyError::Kind::BranchOnNonBool,
                           "branch condition '" + t.cond.to_string() + "' is not a boolean",
                           t.loc};
      auto def = state.bool_defs.find(c.id());
      Fact when_true =
          def != state.bool_defs.end() ? def->second : Fact::eq(c, Term::bool_lit(true));
      Fact when_false = def != state.bool_defs.end() ? *def->second.negated()
                                                     : Fact::eq(c, Term::bool_lit(false));
      std::vector<Successor> out;
      SymbolicState s_then = state;
      s_then.pc = s_then.pc.assume(when_true);
      if (s_then.pc.consistent())
        out.push_back({t.then_label, std::move(s_then), Successor::Kind::Continue,
                       "assume " + when_true.to_string()});
      SymbolicState s_else = state;
      s_else.pc = s_else.pc.assume(when_false);
      if (s_else.pc.consistent())
        out.push_back({t.else_label, std::move(s_else), Successor::Kind::Continue,
                       "assume " + when_false.to_string()});
      return out;
    }
    case Terminator::Kind::Call: {
      auto sig = callee_signature(program, t.callee);
      if (!sig)
        return VerifyError{VerifyError::Kind::UnboundLocal,
                           "unresolved function '" + t.callee + "'", t.loc};
      if (t.args.size() != sig->params.size() ||
          t.lifetime_args.size() != sig->lifetime_params.size())
        return VerifyError{VerifyError::Kind::UnboundLocal,
                           "call to '" + t.callee + "' has mismatched arity", t.loc};
      Bindings env_call;
      for (size_t i = 0; i < t.args.size(); ++i) {
        auto v = eval_operand(state.store, t.args[i]);
        if (!v) return v.error();
        env_call.emplace(sig->params[i], v.value());
      }
      // Lifetime arguments must be alive at the call site.
      for (size_t i = 0; i < t.lifetime_args.size(); ++i) {
        auto it = state.env.find("'" + t.lifetime_args[i]);
        if (it == state.env.end())
          return VerifyError{VerifyError::Kind::UnboundLocal,
                             "unknown lifetime '" + t.lifetime_args[i] + "'", t.loc};
        if (!holds_chunk(state, "lft", {it->second}))
          return VerifyError{VerifyError::Kind::MissingToken,
                             "no lft(" + it->second.to_string() + ") token alive at call", t.loc};
        env_call.emplace("'" + sig->lifetime_params[i], it->second);
      }
      auto consumed = consume(state, sig->contract.requires_clause, std::move(env_call));
      if (!consumed) {
        VerifyError e = consumed.error();
        e.detail = "call to '" + t.callee + "': " + e.detail;
        if (!has_loc(e.loc)) e.loc = t.loc;
        return e;
      }
      SymbolicState st = std::move(consumed.value().state);
      Bindings env2 = std::move(consumed.value().env);
      Term result = sig->return_type == TypeExpr::unit_ty() ? Term::unit() : src.fresh(t.dest);
      env2["result"] = result;
      auto produced = produce(std::move(st), sig->contract.ensures_clause, env2, src);
      if (!produced) return produced.error();
      SymbolicState next = std::move(produced.value());
      next.store[t.dest] = result;
      std::vector<Successor> out;
      out.push_back({t.return_label, std::move(next), Successor::Kind::Continue, ""});
      if (!t.unwind_label.empty())
        out.push_back({t.unwind_label, state, Successor::Kind::UnwindSkip, "unwind"});
      return out;
    }
    case Terminator::Kind::Return:
    case Terminator::Kind::Abort:
      return std::vector<Successor>{};
  }
  return std::vector<Successor>{};
}

// ---------------------------------------------------------------------------
// Per-function driver
// ---------------------------------------------------------------------------

namespace detail {

class FunctionVerifier {
 public:
  FunctionVerifier(const Program& p, const FunctionDef& f, ExecOptions opts, uint64_t sym_base)
      : program_(p), fn_(f), preds_(p), opts_(opts), src_(sym_base) {}

  VerificationResult run() {
    result_.function = fn_.name;

    auto init = init_function_resources(preds_, fn_, src_);
    if (!init) {
      fail_at_root(init.error());
      return std::move(result_);
    }
    ctx_ = init.value().ctx;
    SymbolicState state = std::move(init.value().state);
    state.env = std::move(init.value().env);

    Bindings env = state.env;
    auto with_req = produce(std::move(state), fn_.contract.requires_clause, env, src_);
    if (!with_req) {
      fail_at_root(with_req.error());
      return std::move(result_);
    }
    state = std::move(with_req.value());
    state.env = std::move(env);

    root_ = std::make_unique<PathNode>();
    root_->block = fn_.entry;
    root_->action = "entry";
    root_->state = state;
    if (!state.pc.consistent()) {
      root_->outcome = Outcome::Pruned;  // contradictory requires: vacuously safe
    } else {
      explore(root_.get(), std::move(state), fn_.entry, 0);
    }

    result_.tree = std::move(root_);
    result_.status = any_failed_ || result_.max_paths_hit ? VerificationResult::Status::Failed
                                                          : VerificationResult::Status::Verified;
    return std::move(result_);
  }

 private:
  void fail_at_root(const VerifyError& e) {
    result_.status = VerificationResult::Status::Failed;
    result_.first_failure = {has_loc(e.loc) ? e.loc : fn_.loc, e};
    any_failed_ = true;
    root_ = std::make_unique<PathNode>();
    root_->block = fn_.entry;
    root_->action = "entry";
    root_->outcome = Outcome::Failed;
    root_->error = e;
    result_.tree = std::move(root_);
    result_.paths_explored = 1;
  }

  PathNode* add_child(PathNode* parent, const std::string& block, int step,
                      const std::string& action, const SymbolicState& state) {
    auto node = std::make_unique<PathNode>();
    node->block = block;
    node->step_index = step;
    node->action = action;
    node->state = state;
    parent->children.push_back(std::move(node));
    return parent->children.back().get();
  }

  void count_path() {
    ++result_.paths_explored;
    if (result_.paths_explored > opts_.max_paths) {
      result_.max_paths_hit = true;
      stop_ = true;
    }
  }

  void mark_failed(PathNode* node, const VerifyError& e, Loc loc) {
    node->outcome = Outcome::Failed;
    node->error = e;
    any_failed_ = true;
    if (!result_.first_failure)
      result_.first_failure = {has_loc(e.loc) ? e.loc : loc, e};
    count_path();
  }

  // Depth-first exploration. Straight-line continuations loop; only real
  // forks (allocation, live two-way branches) recurse.
  void explore(PathNode* node, SymbolicState state, std::string label, size_t stmt_idx) {
    while (true) {
      if (stop_) return;
      if (!state.pc.consistent()) {
        // Unreachable: a produced fact contradicted the path condition.
        node->outcome = Outcome::Pruned;
        return;
      }
      const BasicBlock& block = fn_.blocks.at(label);

      bool forked = false;
      for (size_t i = stmt_idx; i < block.statements.size(); ++i) {
        const Statement& stmt = block.statements[i];
        auto stepped = exec_statement(state, stmt, preds_, src_);
        if (!stepped) {
          PathNode* leaf = add_child(node, label, (int)i, print_statement(stmt), state);
          mark_failed(leaf, stepped.error(), stmt.loc);
          return;
        }
        auto& states = stepped.value();
        if (states.size() == 2) {
          // Allocation: failure branch first, then success, as in the
          // two-path tree.
          PathNode* n0 =
              add_child(node, label, (int)i, print_statement(stmt) + "  [fail]", states[0]);
          explore(n0, states[0], label, i + 1);
          if (stop_) return;
          PathNode* n1 =
              add_child(node, label, (int)i, print_statement(stmt) + "  [ok]", states[1]);
          node = n1;
          state = std::move(states[1]);
          stmt_idx = i + 1;
          forked = true;
          break;
        }
        state = std::move(states[0]);
        node = add_child(node, label, (int)i, print_statement(stmt), state);
        if (!state.pc.consistent()) {
          node->outcome = Outcome::Pruned;
          return;
        }
      }
      if (forked) continue;

      const Terminator& term = block.term;
      int tstep = (int)block.statements.size();
      if (term.kind == Terminator::Kind::Return) {
        // The node records the pre-ensures state; contract and token
        // obligations run on it.
        PathNode* leaf = add_child(node, label, tstep, print_terminator(term), state);
        auto fin = finish_return(state, term);
        if (!fin) {
          mark_failed(leaf, fin.error(), term.loc);
        } else {
          leaf->outcome = Outcome::Verified;
          count_path();
        }
        return;
      }
      if (term.kind == Terminator::Kind::Abort) {
        PathNode* leaf = add_child(node, label, tstep, "abort", state);
        leaf->outcome = Outcome::Verified;  // divergence is safe
        count_path();
        return;
      }

      auto succs = exec_terminator(state, term, program_, src_);
      if (!succs) {
        PathNode* leaf = add_child(node, label, tstep, print_terminator(term), state);
        mark_failed(leaf, succs.error(), term.loc);
        return;
      }
      if (succs.value().empty()) {
        PathNode* leaf = add_child(node, label, tstep, print_terminator(term), state);
        leaf->outcome = Outcome::Pruned;
        return;
      }

      auto& out = succs.value();
      // Settle every successor but the last recursively; continue the loop
      // with the last one.
      for (size_t k = 0; k + 1 < out.size(); ++k) {
        if (stop_) return;
        PathNode* child = child_for(node, label, tstep, term, out[k]);
        if (out[k].kind == Successor::Kind::UnwindSkip) continue;
        explore(child, std::move(out[k].state), out[k].label, 0);
      }
      if (stop_) return;
      Successor& last = out.back();
      PathNode* child = child_for(node, label, tstep, term, last);
      if (last.kind == Successor::Kind::UnwindSkip) return;
      node = child;
      state = std::move(last.state);
      label = last.label;
      stmt_idx = 0;
    }
  }

  PathNode* child_for(PathNode* node, const std::string& label, int tstep,
                      const Terminator& term, const Successor& succ) {
    std::string action = print_terminator(term) + "  -> " + succ.label;
    if (!succ.note.empty()) action += "  [" + succ.note + "]";
    PathNode* child = add_child(node, label, tstep, action, succ.state);
    if (succ.kind == Successor::Kind::UnwindSkip) {
      child->outcome = Outcome::SkippedUnwind;
      ++result_.skipped_unwind;
      count_path();
    }
    return child;
  }

  Expected<SymbolicState> finish_return(const SymbolicState& state, const Terminator& term) {
    Term result = Term::unit();
    if (term.ret_value) {
      auto v = eval_operand(state.store, *term.ret_value);
      if (!v) return v.error();
      result = v.value();
    }
    Bindings env = state.env;
    env["result"] = result;
    auto consumed = consume(state, fn_.contract.ensures_clause, std::move(env));
    if (!consumed) return consumed.error();
    return check_return_obligations(consumed.value().state, ctx_, term.loc);
  }

  const Program& program_;
  const FunctionDef& fn_;
  PredTable preds_;
  ExecOptions opts_;
  SymbolSource src_;
  FunctionContext ctx_;
  VerificationResult result_;
  std::unique_ptr<PathNode> root_;
  bool any_failed_ = false;
  bool stop_ = false;
};

}  // namespace detail

/// Verifies one function body against its contract: produce requires,
/// explore every feasible CFG path, and at each return consume ensures and
/// the token obligations. Deterministic: symbol ids are assigned in DFS
/// order from `sym_base`.
inline VerificationResult verify_function(const Program& p, const FunctionDef& f,
                                          ExecOptions opts = {}, uint64_t sym_base = 0) {
  return detail::FunctionVerifier(p, f, opts, sym_base).run();
}

}  // namespace mmirv
