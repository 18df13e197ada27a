#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mmirv/diagnostics.hpp"
#include "mmirv/fraction.hpp"
#include "mmirv/prover.hpp"

namespace mmirv {

/// Ground atom in an assertion: a name (parameter, binder, lifetime, the
/// `result` keyword, ...), an integer, `poison`, or `()`.
struct TermAtom {
  enum class Kind { Name, Int, Poison, Unit };

  Kind kind = Kind::Unit;
  std::string name;
  long long value = 0;
  Loc loc;

  static TermAtom named(std::string n, Loc l = {}) {
    return {Kind::Name, std::move(n), 0, l};
  }
  static TermAtom int_lit(long long v, Loc l = {}) { return {Kind::Int, "", v, l}; }
  static TermAtom poison(Loc l = {}) { return {Kind::Poison, "", 0, l}; }
  static TermAtom unit(Loc l = {}) { return {Kind::Unit, "", 0, l}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Name:
        return name;
      case Kind::Int:
        return std::to_string(value);
      case Kind::Poison:
        return "poison";
      case Kind::Unit:
        return "()";
    }
    return "?";
  }
};

/// Chunk argument pattern: a ground atom, a `?x` binder, or a nested
/// predicate application (borrow bodies).
struct ArgPat {
  enum class Kind { Atom, Binder, App };

  Kind kind = Kind::Atom;
  TermAtom atom;
  std::string binder;
  std::string app_name;
  std::vector<ArgPat> app_args;

  static ArgPat from_atom(TermAtom a) {
    ArgPat p;
    p.kind = Kind::Atom;
    p.atom = std::move(a);
    return p;
  }
  static ArgPat from_binder(std::string b) {
    ArgPat p;
    p.kind = Kind::Binder;
    p.binder = std::move(b);
    return p;
  }
  static ArgPat app(std::string name, std::vector<ArgPat> args) {
    ArgPat p;
    p.kind = Kind::App;
    p.app_name = std::move(name);
    p.app_args = std::move(args);
    return p;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Atom:
        return atom.to_string();
      case Kind::Binder:
        return "?" + binder;
      case Kind::App: {
        std::string s = app_name + "(";
        for (size_t i = 0; i < app_args.size(); ++i) {
          if (i) s += ", ";
          s += app_args[i].to_string();
        }
        return s + ")";
      }
    }
    return "?";
  }
};

/// Coefficient pattern on a chunk: default 1, an exact rational, or a `?q`
/// binder.
struct FracPat {
  enum class Kind { One, Concrete, Binder };

  Kind kind = Kind::One;
  Fraction frac;
  std::string binder;

  static FracPat one() { return {}; }
  static FracPat concrete(Fraction f) { return {Kind::Concrete, f, ""}; }
  static FracPat from_binder(std::string b) { return {Kind::Binder, Fraction(), std::move(b)}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::One:
        return "";
      case Kind::Concrete:
        return "[" + frac.to_string() + "]";
      case Kind::Binder:
        return "[?" + binder + "]";
    }
    return "";
  }
};

struct ChunkPat {
  FracPat coeff;
  std::string pred;
  std::vector<ArgPat> args;
  Loc loc;

  std::string to_string() const {
    std::string s = coeff.to_string() + pred + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += args[i].to_string();
    }
    return s + ")";
  }
};

struct PurePat {
  Fact::Kind rel = Fact::Kind::Eq;
  TermAtom lhs;
  TermAtom rhs;
  Loc loc;

  std::string to_string() const {
    const char* op = rel == Fact::Kind::Eq    ? " == "
                     : rel == Fact::Kind::Neq ? " != "
                     : rel == Fact::Kind::Le  ? " <= "
                                              : " < ";
    return lhs.to_string() + op + rhs.to_string();
  }
};

struct AssertionNode;
using Assertion = std::shared_ptr<const AssertionNode>;

/// Separation-logic assertion AST: `true`, `emp`, pure comparisons, chunks,
/// and `&*&` conjunction (right-associated).
struct AssertionNode {
  enum class Kind { True, Emp, Pure, Chunk, Star };

  Kind kind = Kind::True;
  PurePat pure;
  ChunkPat chunk;
  Assertion lhs;
  Assertion rhs;
  Loc loc;

  static Assertion mk_true(Loc l = {}) {
    auto n = std::make_shared<AssertionNode>();
    n->kind = Kind::True;
    n->loc = l;
    return n;
  }
  static Assertion mk_emp(Loc l = {}) {
    auto n = std::make_shared<AssertionNode>();
    n->kind = Kind::Emp;
    n->loc = l;
    return n;
  }
  static Assertion mk_pure(PurePat p) {
    auto n = std::make_shared<AssertionNode>();
    n->kind = Kind::Pure;
    n->loc = p.loc;
    n->pure = std::move(p);
    return n;
  }
  static Assertion mk_chunk(ChunkPat c) {
    auto n = std::make_shared<AssertionNode>();
    n->kind = Kind::Chunk;
    n->loc = c.loc;
    n->chunk = std::move(c);
    return n;
  }
  static Assertion mk_star(Assertion a, Assertion b) {
    auto n = std::make_shared<AssertionNode>();
    n->kind = Kind::Star;
    n->loc = a->loc;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::True:
        return "true";
      case Kind::Emp:
        return "emp";
      case Kind::Pure:
        return pure.to_string();
      case Kind::Chunk:
        return chunk.to_string();
      case Kind::Star:
        return lhs->to_string() + " &*& " + rhs->to_string();
    }
    return "?";
  }
};

/// Structural equality on assertion ASTs (used by round-trip tests).
inline bool assertion_equal(const Assertion& a, const Assertion& b);

namespace detail {

inline bool atom_equal(const TermAtom& a, const TermAtom& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == TermAtom::Kind::Name) return a.name == b.name;
  if (a.kind == TermAtom::Kind::Int) return a.value == b.value;
  return true;
}

inline bool argpat_equal(const ArgPat& a, const ArgPat& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ArgPat::Kind::Atom:
      return atom_equal(a.atom, b.atom);
    case ArgPat::Kind::Binder:
      return a.binder == b.binder;
    case ArgPat::Kind::App: {
      if (a.app_name != b.app_name || a.app_args.size() != b.app_args.size()) return false;
      for (size_t i = 0; i < a.app_args.size(); ++i)
        if (!argpat_equal(a.app_args[i], b.app_args[i])) return false;
      return true;
    }
  }
  return false;
}

inline bool chunk_pat_equal(const ChunkPat& a, const ChunkPat& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  if (a.coeff.kind != b.coeff.kind) return false;
  if (a.coeff.kind == FracPat::Kind::Concrete && !(a.coeff.frac == b.coeff.frac)) return false;
  if (a.coeff.kind == FracPat::Kind::Binder && a.coeff.binder != b.coeff.binder) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!argpat_equal(a.args[i], b.args[i])) return false;
  return true;
}

}  // namespace detail

inline bool assertion_equal(const Assertion& a, const Assertion& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case AssertionNode::Kind::True:
    case AssertionNode::Kind::Emp:
      return true;
    case AssertionNode::Kind::Pure:
      return a->pure.rel == b->pure.rel && detail::atom_equal(a->pure.lhs, b->pure.lhs) &&
             detail::atom_equal(a->pure.rhs, b->pure.rhs);
    case AssertionNode::Kind::Chunk:
      return detail::chunk_pat_equal(a->chunk, b->chunk);
    case AssertionNode::Kind::Star:
      return assertion_equal(a->lhs, b->lhs) && assertion_equal(a->rhs, b->rhs);
  }
  return false;
}

}  // namespace mmirv
