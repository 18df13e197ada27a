#pragma once

#include <string>

#include "mmirv/ir.hpp"

namespace mmirv {

inline std::string print_type(const TypeExpr& t) { return t.to_string(); }

inline std::string print_rvalue(const Rvalue& rv) {
  switch (rv.kind) {
    case Rvalue::Kind::Alloc:
      return "alloc(" + rv.struct_name + ")";
    case Rvalue::Kind::Use:
      return rv.a.to_string();
    case Rvalue::Kind::LoadField:
      return "load " + rv.base + "." + rv.field;
    case Rvalue::Kind::BinOp:
      return rv.a.to_string() + " " + binop_spelling(rv.op) + " " + rv.b.to_string();
  }
  return "?";
}

inline std::string print_ghost(const GhostCommand& g) {
  switch (g.kind) {
    case GhostCommand::Kind::Open:
      return "open " + g.inst.to_string();
    case GhostCommand::Kind::Close:
      return "close " + g.inst.to_string();
    case GhostCommand::Kind::LemmaNaAcc: {
      std::string s = "lemma lftl_na_acc(" + g.lft_chunk.to_string() + ", " +
                      g.na_chunk.to_string() + ", " + g.borrow_body.to_string();
      if (!g.update_binder.empty()) s += ", ?" + g.update_binder;
      return s + ")";
    }
    case GhostCommand::Kind::Apply:
      return "apply " + g.apply_token.to_string();
    case GhostCommand::Kind::Leak:
      return "leak " + g.leak_chunk.to_string();
  }
  return "?";
}

inline std::string print_statement(const Statement& st) {
  switch (st.kind) {
    case Statement::Kind::Assign:
      return st.dest + " = " + print_rvalue(st.rvalue);
    case Statement::Kind::StoreField:
      return "store " + st.base + "." + st.field + " = " + st.value.to_string();
    case Statement::Kind::Ghost:
      return print_ghost(st.ghost);
  }
  return "?";
}

inline std::string print_terminator(const Terminator& t) {
  switch (t.kind) {
    case Terminator::Kind::Return:
      return t.ret_value ? "return " + t.ret_value->to_string() : "return";
    case Terminator::Kind::Goto:
      return "goto " + t.target;
    case Terminator::Kind::Branch:
      return "branch " + t.cond.to_string() + " ? " + t.then_label + " : " + t.else_label;
    case Terminator::Kind::Call: {
      std::string s = "call " + t.dest + " = " + t.callee;
      if (!t.lifetime_args.empty()) {
        s += "<";
        for (size_t i = 0; i < t.lifetime_args.size(); ++i) {
          if (i) s += ", ";
          s += "'" + t.lifetime_args[i];
        }
        s += ">";
      }
      s += "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ", ";
        s += t.args[i].to_string();
      }
      s += ") -> " + t.return_label;
      if (!t.unwind_label.empty()) s += " unwind " + t.unwind_label;
      return s;
    }
    case Terminator::Kind::Abort:
      return "abort";
  }
  return "?";
}

inline std::string print_function(const FunctionDef& f) {
  std::string s = "fn " + f.name;
  if (!f.lifetime_params.empty()) {
    s += "<";
    for (size_t i = 0; i < f.lifetime_params.size(); ++i) {
      if (i) s += ", ";
      s += "'" + f.lifetime_params[i];
    }
    s += ">";
  }
  s += "(";
  for (size_t i = 0; i < f.params.size(); ++i) {
    if (i) s += ", ";
    s += f.params[i].first + ": " + print_type(f.params[i].second);
  }
  s += ")";
  if (!(f.return_type == TypeExpr::unit_ty())) s += " -> " + print_type(f.return_type);
  s += "\n";
  s += "//@ requires " + f.contract.requires_clause->to_string() + ";\n";
  s += "//@ ensures " + f.contract.ensures_clause->to_string() + ";\n";
  s += "{\n";
  for (const auto& [label, block] : f.blocks) {
    s += "  " + label + ": {\n";
    for (const auto& st : block.statements) {
      bool ghost = st.kind == Statement::Kind::Ghost;
      s += std::string("    ") + (ghost ? "//@ " : "") + print_statement(st) + ";\n";
    }
    s += "    " + print_terminator(block.term) + ";\n";
    s += "  }\n";
  }
  s += "}\n";
  return s;
}

inline std::string print_program(const Program& p) {
  std::string s;
  for (const auto& sd : p.structs) {
    s += "struct " + sd.name + " {";
    for (const auto& f : sd.fields) s += " " + f.name + ": " + print_type(f.type) + ";";
    s += " }\n\n";
  }
  for (const auto& pd : p.predicates) {
    s += "predicate " + pd.name + "(";
    for (size_t i = 0; i < pd.formals.size(); ++i) {
      if (i) s += ", ";
      s += pd.formals[i];
    }
    s += ") = " + pd.body->to_string() + ";\n\n";
  }
  for (const auto& f : p.functions) s += print_function(f) + "\n";
  return s;
}

}  // namespace mmirv
