#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mmirv/assertion.hpp"
#include "mmirv/diagnostics.hpp"

namespace mmirv {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct TypeExpr {
  enum class Kind { Int, Bool, Unit, RawAddr, StructRef, SharedRef };

  Kind kind = Kind::Unit;
  std::string name;  // struct name (StructRef) or lifetime name (SharedRef)
  std::shared_ptr<TypeExpr> pointee;

  static TypeExpr int_ty() { return {Kind::Int, "", nullptr}; }
  static TypeExpr bool_ty() { return {Kind::Bool, "", nullptr}; }
  static TypeExpr unit_ty() { return {Kind::Unit, "", nullptr}; }
  static TypeExpr raw_addr(TypeExpr pointee) {
    return {Kind::RawAddr, "", std::make_shared<TypeExpr>(std::move(pointee))};
  }
  static TypeExpr struct_ref(std::string name) { return {Kind::StructRef, std::move(name), nullptr}; }
  static TypeExpr shared_ref(std::string lifetime, TypeExpr pointee) {
    return {Kind::SharedRef, std::move(lifetime), std::make_shared<TypeExpr>(std::move(pointee))};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Int:
        return "Int";
      case Kind::Bool:
        return "Bool";
      case Kind::Unit:
        return "()";
      case Kind::RawAddr:
        return "*mut " + pointee->to_string();
      case Kind::StructRef:
        return name;
      case Kind::SharedRef:
        return "&'" + name + " " + pointee->to_string();
    }
    return "?";
  }

  friend bool operator==(const TypeExpr& a, const TypeExpr& b) {
    if (a.kind != b.kind || a.name != b.name) return false;
    if (!a.pointee != !b.pointee) return false;
    return !a.pointee || *a.pointee == *b.pointee;
  }
};

// ---------------------------------------------------------------------------
// Statements and terminators
// ---------------------------------------------------------------------------

struct Operand {
  enum class Kind { Local, Int, Bool, Unit };

  Kind kind = Kind::Unit;
  std::string name;
  long long ival = 0;
  bool bval = false;
  Loc loc;

  static Operand local(std::string n, Loc l = {}) { return {Kind::Local, std::move(n), 0, false, l}; }
  static Operand int_lit(long long v, Loc l = {}) { return {Kind::Int, "", v, false, l}; }
  static Operand bool_lit(bool v, Loc l = {}) { return {Kind::Bool, "", 0, v, l}; }
  static Operand unit(Loc l = {}) { return {Kind::Unit, "", 0, false, l}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Local:
        return name;
      case Kind::Int:
        return std::to_string(ival);
      case Kind::Bool:
        return bval ? "true" : "false";
      case Kind::Unit:
        return "()";
    }
    return "?";
  }
};

enum class BinOpKind { Add, Sub, Eq, Ne, Le, Lt };

inline const char* binop_spelling(BinOpKind k) {
  switch (k) {
    case BinOpKind::Add:
      return "+";
    case BinOpKind::Sub:
      return "-";
    case BinOpKind::Eq:
      return "==";
    case BinOpKind::Ne:
      return "!=";
    case BinOpKind::Le:
      return "<=";
    case BinOpKind::Lt:
      return "<";
  }
  return "?";
}

struct Rvalue {
  enum class Kind { Alloc, Use, LoadField, BinOp };

  Kind kind = Kind::Use;
  std::string struct_name;  // Alloc target, or LoadField struct (elaborated)
  std::string base;         // LoadField base local
  std::string field;        // LoadField field
  Operand a;                // Use / BinOp lhs
  Operand b;                // BinOp rhs
  BinOpKind op = BinOpKind::Add;

  static Rvalue alloc(std::string s) {
    Rvalue r;
    r.kind = Kind::Alloc;
    r.struct_name = std::move(s);
    return r;
  }
  static Rvalue use(Operand op) {
    Rvalue r;
    r.kind = Kind::Use;
    r.a = std::move(op);
    return r;
  }
  static Rvalue load_field(std::string base, std::string field) {
    Rvalue r;
    r.kind = Kind::LoadField;
    r.base = std::move(base);
    r.field = std::move(field);
    return r;
  }
  static Rvalue bin_op(BinOpKind op, Operand a, Operand b) {
    Rvalue r;
    r.kind = Kind::BinOp;
    r.op = op;
    r.a = std::move(a);
    r.b = std::move(b);
    return r;
  }
};

/// Ghost commands: heap bookkeeping steps that exist only for verification.
struct PredInstancePat {
  std::string name;
  std::vector<ArgPat> args;
  Loc loc;

  std::string to_string() const {
    std::string s = name + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += args[i].to_string();
    }
    return s + ")";
  }
};

struct GhostCommand {
  enum class Kind { Open, Close, LemmaNaAcc, Apply, Leak };

  Kind kind = Kind::Open;
  PredInstancePat inst;        // open/close target
  ChunkPat lft_chunk;          // lemma: the lifetime token argument
  ChunkPat na_chunk;           // lemma: the thread token argument
  PredInstancePat borrow_body; // lemma: the borrowed payload
  std::string update_binder;   // lemma: optional `?u` binding for the update
  TermAtom apply_token;        // apply target
  ChunkPat leak_chunk;         // leak target
  Loc loc;
};

struct Statement {
  enum class Kind { Assign, StoreField, Ghost };

  Kind kind = Kind::Assign;
  // Assign
  std::string dest;
  Rvalue rvalue;
  // StoreField
  std::string base;
  std::string struct_name;  // elaborated from the base local's type
  std::string field;
  Operand value;
  // Ghost
  GhostCommand ghost;
  Loc loc;

  static Statement assign(std::string dest, Rvalue rv, Loc l = {}) {
    Statement s;
    s.kind = Kind::Assign;
    s.dest = std::move(dest);
    s.rvalue = std::move(rv);
    s.loc = l;
    return s;
  }
  static Statement store_field(std::string base, std::string field, Operand v, Loc l = {}) {
    Statement s;
    s.kind = Kind::StoreField;
    s.base = std::move(base);
    s.field = std::move(field);
    s.value = std::move(v);
    s.loc = l;
    return s;
  }
  static Statement ghost_cmd(GhostCommand g, Loc l = {}) {
    Statement s;
    s.kind = Kind::Ghost;
    s.ghost = std::move(g);
    s.loc = l;
    return s;
  }
};

struct Terminator {
  enum class Kind { Return, Goto, Branch, Call, Abort };

  Kind kind = Kind::Abort;
  std::optional<Operand> ret_value;   // Return
  std::string target;                 // Goto
  Operand cond;                       // Branch
  std::string then_label;             // Branch
  std::string else_label;             // Branch
  std::string dest;                   // Call
  std::string callee;                 // Call
  std::vector<std::string> lifetime_args;
  std::vector<Operand> args;
  std::string return_label;           // Call
  std::string unwind_label;           // Call, may be empty
  Loc loc;

  static Terminator ret(std::optional<Operand> v, Loc l = {}) {
    Terminator t;
    t.kind = Kind::Return;
    t.ret_value = std::move(v);
    t.loc = l;
    return t;
  }
  static Terminator goto_(std::string label, Loc l = {}) {
    Terminator t;
    t.kind = Kind::Goto;
    t.target = std::move(label);
    t.loc = l;
    return t;
  }
  static Terminator branch(Operand cond, std::string then_l, std::string else_l, Loc l = {}) {
    Terminator t;
    t.kind = Kind::Branch;
    t.cond = std::move(cond);
    t.then_label = std::move(then_l);
    t.else_label = std::move(else_l);
    t.loc = l;
    return t;
  }
  static Terminator abort(Loc l = {}) {
    Terminator t;
    t.kind = Kind::Abort;
    t.loc = l;
    return t;
  }
};

struct BasicBlock {
  std::vector<Statement> statements;
  Terminator term;
  Loc loc;
};

struct Contract {
  Assertion requires_clause = AssertionNode::mk_true();
  Assertion ensures_clause = AssertionNode::mk_true();
};

struct StructField {
  std::string name;
  TypeExpr type;
  Loc loc;
};

struct StructDef {
  std::string name;
  std::vector<StructField> fields;
  Loc loc;
};

struct PredicateDef {
  std::string name;
  std::vector<std::string> formals;
  Assertion body = AssertionNode::mk_emp();
  Loc loc;
};

struct FunctionDef {
  std::string name;
  std::vector<std::string> lifetime_params;
  std::vector<std::pair<std::string, TypeExpr>> params;
  TypeExpr return_type = TypeExpr::unit_ty();
  Contract contract;
  std::map<std::string, BasicBlock> blocks;
  std::string entry = "entry";
  Loc loc;
};

struct Program {
  std::vector<StructDef> structs;
  std::vector<PredicateDef> predicates;
  std::vector<FunctionDef> functions;

  const StructDef* find_struct(const std::string& name) const {
    for (const auto& s : structs)
      if (s.name == name) return &s;
    return nullptr;
  }
  const PredicateDef* find_predicate(const std::string& name) const {
    for (const auto& p : predicates)
      if (p.name == name) return &p;
    return nullptr;
  }
  const FunctionDef* find_function(const std::string& name) const {
    for (const auto& f : functions)
      if (f.name == name) return &f;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Chunk-family table
// ---------------------------------------------------------------------------

/// Reserved chunk families of the lifetime layer. User predicates may not
/// shadow these.
inline bool is_reserved_pred(const std::string& name) {
  return name == "lft" || name == "na_token" || name == "na_bor" || name == "na_upd" ||
         name == "unit_own";
}

/// Arity/shape information for every predicate a chunk may use: built-in
/// token families, per-struct memory families, and user predicate_defs.
class PredTable {
 public:
  PredTable() = default;

  explicit PredTable(const Program& p) : program_(&p) {
    for (const auto& s : p.structs) {
      arity_["malloc_block_" + s.name] = 1;
      for (const auto& f : s.fields) arity_[s.name + "_" + f.name] = 2;
    }
    arity_["lft"] = 1;
    arity_["na_token"] = 1;
    arity_["na_bor"] = 3;
    arity_["na_upd"] = 5;
    arity_["unit_own"] = 2;
    for (const auto& d : p.predicates) arity_[d.name] = (int)d.formals.size();
  }

  std::optional<int> arity(const std::string& pred) const {
    auto it = arity_.find(pred);
    if (it == arity_.end()) return std::nullopt;
    return it->second;
  }

  /// Persistent chunks are matched without being removed.
  static bool is_persistent(const std::string& pred) { return pred == "na_bor"; }

  /// Only lifetime tokens carry fractional coefficients in this tool.
  static bool is_fractional(const std::string& pred) { return pred == "lft"; }

  const PredicateDef* user_def(const std::string& name) const {
    return program_ ? program_->find_predicate(name) : nullptr;
  }

  const Program* program() const { return program_; }

 private:
  const Program* program_ = nullptr;
  std::map<std::string, int> arity_;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

class Validator {
 public:
  explicit Validator(const Program& p) : p_(p), preds_(p) {}

  std::vector<Diagnostic> run() {
    check_unique_names();
    for (const auto& s : p_.structs) check_struct(s);
    for (const auto& d : p_.predicates) check_predicate(d);
    for (const auto& f : p_.functions) check_function(f);
    return std::move(diags_);
  }

 private:
  void error(Loc loc, std::string msg) {
    diags_.push_back({Diagnostic::Severity::Error, std::move(msg), loc});
  }

  void check_unique_names() {
    std::set<std::string> seen;
    for (const auto& s : p_.structs)
      if (!seen.insert("struct:" + s.name).second)
        error(s.loc, "duplicate name: struct '" + s.name + "'");
    for (const auto& d : p_.predicates) {
      if (!seen.insert("pred:" + d.name).second)
        error(d.loc, "duplicate name: predicate '" + d.name + "'");
      if (is_reserved_pred(d.name))
        error(d.loc, "predicate '" + d.name + "' shadows a reserved chunk family");
      // Clashes with generated memory families are as fatal as duplicates.
      for (const auto& s : p_.structs) {
        if (d.name == "malloc_block_" + s.name)
          error(d.loc, "predicate '" + d.name + "' shadows the malloc-block family of struct '" +
                           s.name + "'");
        for (const auto& fl : s.fields)
          if (d.name == s.name + "_" + fl.name)
            error(d.loc, "predicate '" + d.name + "' shadows the field chunk family '" + s.name +
                             "." + fl.name + "'");
      }
    }
    for (const auto& f : p_.functions)
      if (!seen.insert("fn:" + f.name).second)
        error(f.loc, "duplicate name: function '" + f.name + "'");
  }

  void check_type(const TypeExpr& t, Loc loc) {
    switch (t.kind) {
      case TypeExpr::Kind::StructRef:
        if (!p_.find_struct(t.name)) error(loc, "unresolved struct '" + t.name + "'");
        break;
      case TypeExpr::Kind::RawAddr:
      case TypeExpr::Kind::SharedRef:
        check_type(*t.pointee, loc);
        break;
      default:
        break;
    }
  }

  void check_struct(const StructDef& s) {
    std::set<std::string> fields;
    for (const auto& f : s.fields) {
      if (!fields.insert(f.name).second)
        error(f.loc, "duplicate field '" + f.name + "' in struct '" + s.name + "'");
      check_type(f.type, f.loc);
    }
  }

  void check_predicate(const PredicateDef& d) {
    std::set<std::string> formals(d.formals.begin(), d.formals.end());
    if (formals.size() != d.formals.size())
      error(d.loc, "duplicate formal in predicate '" + d.name + "'");
    std::set<std::string> bound = formals;
    check_assertion(d.body, bound, /*allow_result=*/false,
                    "predicate '" + d.name + "'");
  }

  void check_atom(const TermAtom& a, const std::set<std::string>& bound, bool allow_result,
                  const std::string& ctx) {
    if (a.kind != TermAtom::Kind::Name) return;
    if (a.name == "result") {
      if (!allow_result) error(a.loc, "'result' is only available in ensures clauses");
      return;
    }
    if (a.name == "tid") return;  // ambient thread id
    if (!bound.count(a.name))
      error(a.loc, "unbound name '" + a.name + "' in " + ctx);
  }

  void check_arg(const ArgPat& a, std::set<std::string>& bound, bool allow_result,
                 const std::string& ctx) {
    switch (a.kind) {
      case ArgPat::Kind::Atom:
        check_atom(a.atom, bound, allow_result, ctx);
        break;
      case ArgPat::Kind::Binder:
        bound.insert(a.binder);
        break;
      case ArgPat::Kind::App: {
        if (auto ar = preds_.arity(a.app_name)) {
          if (*ar != (int)a.app_args.size())
            error({}, "predicate '" + a.app_name + "' expects " + std::to_string(*ar) +
                          " arguments");
        } else {
          error({}, "unresolved predicate '" + a.app_name + "' in " + ctx);
        }
        for (const auto& k : a.app_args) check_arg(k, bound, allow_result, ctx);
        break;
      }
    }
  }

  // Walks an assertion left-to-right, tracking binder introductions.
  void check_assertion(const Assertion& a, std::set<std::string>& bound, bool allow_result,
                       const std::string& ctx) {
    switch (a->kind) {
      case AssertionNode::Kind::True:
      case AssertionNode::Kind::Emp:
        return;
      case AssertionNode::Kind::Pure:
        check_atom(a->pure.lhs, bound, allow_result, ctx);
        check_atom(a->pure.rhs, bound, allow_result, ctx);
        return;
      case AssertionNode::Kind::Chunk: {
        const ChunkPat& c = a->chunk;
        if (auto ar = preds_.arity(c.pred)) {
          if (*ar != (int)c.args.size())
            error(c.loc, "predicate '" + c.pred + "' expects " + std::to_string(*ar) +
                             " arguments, got " + std::to_string(c.args.size()));
        } else {
          error(c.loc, "unresolved predicate '" + c.pred + "' in " + ctx);
        }
        if (c.coeff.kind != FracPat::Kind::One && !PredTable::is_fractional(c.pred))
          error(c.loc, "only lifetime tokens carry fractional coefficients, not '" + c.pred + "'");
        if (c.coeff.kind == FracPat::Kind::Binder) bound.insert(c.coeff.binder);
        for (const auto& arg : c.args) check_arg(arg, bound, allow_result, ctx);
        return;
      }
      case AssertionNode::Kind::Star:
        check_assertion(a->lhs, bound, allow_result, ctx);
        check_assertion(a->rhs, bound, allow_result, ctx);
        return;
    }
  }

  void check_function(const FunctionDef& f) {
    std::set<std::string> names;
    for (const auto& lp : f.lifetime_params)
      if (!names.insert("'" + lp).second)
        error(f.loc, "duplicate lifetime parameter '" + lp + "' in '" + f.name + "'");
    for (const auto& [pn, pt] : f.params) {
      if (!names.insert(pn).second)
        error(f.loc, "duplicate parameter '" + pn + "' in '" + f.name + "'");
      check_type(pt, f.loc);
    }
    check_type(f.return_type, f.loc);

    // Contract scoping: requires binders extend the ensures scope.
    std::set<std::string> bound;
    for (const auto& [pn, pt] : f.params) bound.insert(pn);
    for (const auto& lp : f.lifetime_params) bound.insert("'" + lp);
    check_assertion(f.contract.requires_clause, bound, false, "requires of '" + f.name + "'");
    check_assertion(f.contract.ensures_clause, bound, true, "ensures of '" + f.name + "'");

    if (!f.blocks.count(f.entry))
      error(f.loc, "entry block '" + f.entry + "' not found in '" + f.name + "'");

    for (const auto& [label, block] : f.blocks) {
      for (const auto& st : block.statements) check_statement(st);
      check_terminator(f, block.term);
    }
    check_acyclic(f);
  }

  void check_label(const FunctionDef& f, const std::string& label, Loc loc) {
    if (!f.blocks.count(label)) error(loc, "unresolved label '" + label + "' in '" + f.name + "'");
  }

  void check_field_access(const std::string& struct_name, const std::string& field, Loc loc) {
    const StructDef* s = p_.find_struct(struct_name);
    if (!s) {
      error(loc, "field access on unknown struct '" + struct_name + "'");
      return;
    }
    for (const auto& fl : s->fields)
      if (fl.name == field) return;
    error(loc, "struct '" + struct_name + "' has no field '" + field + "'");
  }

  void check_statement(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::Assign:
        if (st.rvalue.kind == Rvalue::Kind::Alloc) {
          if (!p_.find_struct(st.rvalue.struct_name))
            error(st.loc, "alloc of unknown struct '" + st.rvalue.struct_name + "'");
        } else if (st.rvalue.kind == Rvalue::Kind::LoadField) {
          if (st.rvalue.struct_name.empty())
            error(st.loc, "unresolved field load '" + st.rvalue.base + "." + st.rvalue.field +
                              "' (base local has no known struct type)");
          else
            check_field_access(st.rvalue.struct_name, st.rvalue.field, st.loc);
        }
        break;
      case Statement::Kind::StoreField:
        if (st.struct_name.empty())
          error(st.loc, "unresolved field store '" + st.base + "." + st.field +
                            "' (base local has no known struct type)");
        else
          check_field_access(st.struct_name, st.field, st.loc);
        break;
      case Statement::Kind::Ghost: {
        const GhostCommand& g = st.ghost;
        auto check_inst = [&](const PredInstancePat& inst) {
          if (auto ar = preds_.arity(inst.name)) {
            if (*ar != (int)inst.args.size())
              error(st.loc, "predicate '" + inst.name + "' expects " + std::to_string(*ar) +
                                " arguments");
          } else {
            error(st.loc, "unresolved predicate '" + inst.name + "'");
          }
        };
        if (g.kind == GhostCommand::Kind::Open || g.kind == GhostCommand::Kind::Close)
          check_inst(g.inst);
        if (g.kind == GhostCommand::Kind::LemmaNaAcc) {
          if (g.lft_chunk.pred != "lft")
            error(st.loc, "lftl_na_acc expects a lft(...) token as its first argument");
          if (g.na_chunk.pred != "na_token")
            error(st.loc, "lftl_na_acc expects na_token(...) as its second argument");
          if (g.na_chunk.coeff.kind != FracPat::Kind::One)
            error(st.loc, "the thread token is not fractional");
          check_inst(g.borrow_body);
        }
        if (g.kind == GhostCommand::Kind::Leak) {
          if (!preds_.arity(g.leak_chunk.pred))
            error(st.loc, "unresolved predicate '" + g.leak_chunk.pred + "' in leak");
          if (g.leak_chunk.coeff.kind != FracPat::Kind::One &&
              !PredTable::is_fractional(g.leak_chunk.pred))
            error(st.loc, "only lifetime tokens carry fractional coefficients, not '" +
                              g.leak_chunk.pred + "'");
        }
        break;
      }
    }
  }

  void check_terminator(const FunctionDef& f, const Terminator& t) {
    switch (t.kind) {
      case Terminator::Kind::Goto:
        check_label(f, t.target, t.loc);
        break;
      case Terminator::Kind::Branch:
        check_label(f, t.then_label, t.loc);
        check_label(f, t.else_label, t.loc);
        break;
      case Terminator::Kind::Call: {
        check_label(f, t.return_label, t.loc);
        if (!t.unwind_label.empty()) check_label(f, t.unwind_label, t.loc);
        for (const auto& la : t.lifetime_args) {
          bool known = false;
          for (const auto& lp : f.lifetime_params) known |= lp == la;
          if (!known)
            error(t.loc, "lifetime argument '" + la + "' is not a lifetime parameter of '" +
                             f.name + "'");
        }
        // Built-in deallocators take one raw address.
        if (t.callee.rfind("free_", 0) == 0 && p_.find_struct(t.callee.substr(5))) {
          if (t.args.size() != 1)
            error(t.loc, "'" + t.callee + "' expects exactly 1 argument");
          if (!t.lifetime_args.empty())
            error(t.loc, "'" + t.callee + "' takes no lifetime arguments");
          break;
        }
        const FunctionDef* callee = p_.find_function(t.callee);
        if (!callee) {
          error(t.loc, "unresolved function '" + t.callee + "'");
          break;
        }
        if (callee->params.size() != t.args.size())
          error(t.loc, "call to '" + t.callee + "' passes " + std::to_string(t.args.size()) +
                           " arguments, expected " + std::to_string(callee->params.size()));
        if (callee->lifetime_params.size() != t.lifetime_args.size())
          error(t.loc, "call to '" + t.callee + "' passes " +
                           std::to_string(t.lifetime_args.size()) + " lifetime arguments, expected " +
                           std::to_string(callee->lifetime_params.size()));
        break;
      }
      default:
        break;
    }
  }

  // Loop support is out of scope: any CFG cycle is rejected up front.
  void check_acyclic(const FunctionDef& f) {
    std::map<std::string, int> mark;  // 0 unseen, 1 on stack, 2 done
    bool cyclic = false;
    std::vector<std::pair<std::string, bool>> stack;  // label, expanded
    if (!f.blocks.count(f.entry)) return;
    stack.push_back({f.entry, false});
    while (!stack.empty() && !cyclic) {
      auto [label, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        mark[label] = 2;
        continue;
      }
      if (mark[label] == 1) continue;
      mark[label] = 1;
      stack.push_back({label, true});
      auto it = f.blocks.find(label);
      if (it == f.blocks.end()) continue;
      std::vector<std::string> succs;
      const Terminator& t = it->second.term;
      if (t.kind == Terminator::Kind::Goto) succs.push_back(t.target);
      if (t.kind == Terminator::Kind::Branch) {
        succs.push_back(t.then_label);
        succs.push_back(t.else_label);
      }
      if (t.kind == Terminator::Kind::Call) {
        succs.push_back(t.return_label);
        if (!t.unwind_label.empty()) succs.push_back(t.unwind_label);
      }
      for (const auto& s : succs) {
        if (mark[s] == 1) {
          error(t.loc, "control-flow cycle through '" + s + "' in '" + f.name +
                           "' (loops are not supported)");
          cyclic = true;
          break;
        }
        if (mark[s] == 0) stack.push_back({s, false});
      }
    }
  }

  const Program& p_;
  PredTable preds_;
  std::vector<Diagnostic> diags_;
};

}  // namespace detail

/// Structural well-formedness check. Pure: identical input yields identical
/// diagnostics in identical order. An accepted program executes without
/// name-resolution failures.
inline std::vector<Diagnostic> validate_program(const Program& p) {
  return detail::Validator(p).run();
}

}  // namespace mmirv
