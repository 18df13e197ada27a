#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mmirv/fraction.hpp"

namespace mmirv {

/// Sort tag for symbols. The prover's arithmetic reasoning is restricted to
/// integer-sorted terms; fraction-valued symbols (token coefficients) obey
/// rational semantics and must stay out of the integer bounds engine.
enum class Sort { Int, Frac, Bool };

/// Immutable symbolic value. Shared-pointer tree with structural identity;
/// symbols compare by id (the hint is display-only).
class Term {
 public:
  enum class Kind {
    Sym,        // fresh symbol (id, hint, sort)
    IntLit,     // integer literal
    BoolLit,    // boolean literal
    FracLit,    // rational literal, used in token bookkeeping chunks
    Poison,     // uninitialized-memory marker; a whole value, never a subterm
    Unit,       // ()
    Add,        // a + b
    Sub,        // a - b
    LftVar,     // lifetime variable (id, hint)
    ThreadVar,  // thread id variable (id, hint)
    PredApp,    // predicate instance used as a term (borrow bodies)
  };

  Term() : Term(poison()) {}

  static Term sym(uint64_t id, std::string hint, Sort sort = Sort::Int) {
    Term t(Kind::Sym);
    t.mut().id = id;
    t.mut().text = std::move(hint);
    t.mut().sort = sort;
    return t;
  }
  static Term int_lit(long long v) {
    Term t(Kind::IntLit);
    t.mut().ival = v;
    return t;
  }
  static Term bool_lit(bool v) {
    Term t(Kind::BoolLit);
    t.mut().bval = v;
    return t;
  }
  static Term frac_lit(Fraction f) {
    Term t(Kind::FracLit);
    t.mut().frac = f;
    return t;
  }
  static Term poison() { return Term(Kind::Poison); }
  static Term unit() { return Term(Kind::Unit); }
  static Term add(Term a, Term b) {
    if (a.kind() == Kind::IntLit && b.kind() == Kind::IntLit)
      return int_lit(a.int_value() + b.int_value());
    Term t(Kind::Add);
    t.mut().kids = {std::move(a), std::move(b)};
    return t;
  }
  static Term sub(Term a, Term b) {
    if (a.kind() == Kind::IntLit && b.kind() == Kind::IntLit)
      return int_lit(a.int_value() - b.int_value());
    Term t(Kind::Sub);
    t.mut().kids = {std::move(a), std::move(b)};
    return t;
  }
  static Term lft_var(uint64_t id, std::string hint) {
    Term t(Kind::LftVar);
    t.mut().id = id;
    t.mut().text = std::move(hint);
    return t;
  }
  static Term thread_var(uint64_t id, std::string hint) {
    Term t(Kind::ThreadVar);
    t.mut().id = id;
    t.mut().text = std::move(hint);
    return t;
  }
  static Term pred_app(std::string name, std::vector<Term> args) {
    Term t(Kind::PredApp);
    t.mut().text = std::move(name);
    t.mut().kids = std::move(args);
    return t;
  }

  Kind kind() const { return node_->kind; }
  uint64_t id() const { return node_->id; }
  long long int_value() const { return node_->ival; }
  bool bool_value() const { return node_->bval; }
  const Fraction& frac_value() const { return node_->frac; }
  const std::string& text() const { return node_->text; }
  const std::vector<Term>& kids() const { return node_->kids; }
  Sort sort() const { return node_->sort; }

  bool is_sym() const { return kind() == Kind::Sym; }
  bool is_poison() const { return kind() == Kind::Poison; }

  /// True for values the prover treats as pairwise-distinct constants.
  bool is_rigid() const {
    switch (kind()) {
      case Kind::IntLit:
      case Kind::BoolLit:
      case Kind::FracLit:
      case Kind::Poison:
      case Kind::Unit:
        return true;
      default:
        return false;
    }
  }

  /// Total structural order; symbols ordered by id, hints ignored.
  static int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
      case Kind::Sym:
      case Kind::LftVar:
      case Kind::ThreadVar:
        return a.id() < b.id() ? -1 : a.id() > b.id() ? 1 : 0;
      case Kind::IntLit:
        return a.int_value() < b.int_value() ? -1 : a.int_value() > b.int_value() ? 1 : 0;
      case Kind::BoolLit:
        return a.bool_value() == b.bool_value() ? 0 : (a.bool_value() ? 1 : -1);
      case Kind::FracLit: {
        if (a.frac_value() == b.frac_value()) return 0;
        return a.frac_value() < b.frac_value() ? -1 : 1;
      }
      case Kind::Poison:
      case Kind::Unit:
        return 0;
      case Kind::Add:
      case Kind::Sub:
      case Kind::PredApp: {
        if (a.kind() == Kind::PredApp) {
          int c = a.text().compare(b.text());
          if (c != 0) return c < 0 ? -1 : 1;
        }
        if (a.kids().size() != b.kids().size())
          return a.kids().size() < b.kids().size() ? -1 : 1;
        for (size_t i = 0; i < a.kids().size(); ++i) {
          int c = compare(a.kids()[i], b.kids()[i]);
          if (c != 0) return c;
        }
        return 0;
      }
    }
    return 0;
  }

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

  std::string to_string() const {
    switch (kind()) {
      case Kind::Sym:
        return (node_->text.empty() ? "s" : node_->text) + std::to_string(low_id());
      case Kind::IntLit:
        return std::to_string(int_value());
      case Kind::BoolLit:
        return bool_value() ? "true" : "false";
      case Kind::FracLit:
        return frac_value().to_string();
      case Kind::Poison:
        return "poison";
      case Kind::Unit:
        return "()";
      case Kind::Add:
        return "(" + kids()[0].to_string() + " + " + kids()[1].to_string() + ")";
      case Kind::Sub:
        return "(" + kids()[0].to_string() + " - " + kids()[1].to_string() + ")";
      case Kind::LftVar:
        return "'" + node_->text + std::to_string(low_id());
      case Kind::ThreadVar:
        return (node_->text.empty() ? "t" : node_->text) + std::to_string(low_id());
      case Kind::PredApp: {
        std::string s = node_->text + "(";
        for (size_t i = 0; i < kids().size(); ++i) {
          if (i) s += ", ";
          s += kids()[i].to_string();
        }
        return s + ")";
      }
    }
    return "?";
  }

 private:
  struct Node {
    Kind kind;
    uint64_t id = 0;
    long long ival = 0;
    bool bval = false;
    Fraction frac;
    std::string text;
    std::vector<Term> kids;
    Sort sort = Sort::Int;
  };

  explicit Term(Kind k) : node_(std::make_shared<Node>()) {
    std::const_pointer_cast<Node>(node_)->kind = k;
  }
  Node& mut() { return *std::const_pointer_cast<Node>(node_); }

  // Symbol ids are partitioned per verification task (high bits select the
  // task); only the low bits are interesting to a human.
  uint32_t low_id() const { return (uint32_t)(node_->id & 0xffffffffu); }

  std::shared_ptr<const Node> node_;
};

/// Monotone fresh-symbol generator. Ids are never reused; independent
/// verification tasks use disjoint id ranges so ids never collide across a
/// run even when tasks execute in parallel.
class SymbolSource {
 public:
  explicit SymbolSource(uint64_t base = 0) : next_(base) {}

  Term fresh(const std::string& hint, Sort sort = Sort::Int) {
    return Term::sym(next_++, hint, sort);
  }
  Term fresh_lft(const std::string& hint) { return Term::lft_var(next_++, hint); }
  Term fresh_thread(const std::string& hint) { return Term::thread_var(next_++, hint); }

  uint64_t next_id() const { return next_; }

 private:
  uint64_t next_;
};

}  // namespace mmirv
