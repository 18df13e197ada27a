#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mmirv/diagnostics.hpp"
#include "mmirv/heap.hpp"
#include "mmirv/ir.hpp"
#include "mmirv/prover.hpp"

namespace mmirv {

/// Verification-failure payload. These are expected outcomes, not
/// exceptions: they travel in results and end up in the report.
struct VerifyError {
  enum class Kind {
    MissingChunk,
    UnprovenFact,
    InsufficientFraction,
    FractionOverflow,
    PoisonRead,
    UnboundLocal,
    MissingToken,
    MissingNaToken,
    LeakedChunks,
    UnknownUpdate,
    UndefinedPredicate,
    UnsupportedType,
    BranchOnNonBool,
    DuplicateBinder,
    MaxPathsExceeded,
  };

  Kind kind = Kind::MissingChunk;
  std::string detail;
  Loc loc = kNoLoc;

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::MissingChunk: return "MissingChunk";
      case Kind::UnprovenFact: return "UnprovenFact";
      case Kind::InsufficientFraction: return "InsufficientFraction";
      case Kind::FractionOverflow: return "FractionOverflow";
      case Kind::PoisonRead: return "PoisonRead";
      case Kind::UnboundLocal: return "UnboundLocal";
      case Kind::MissingToken: return "MissingToken";
      case Kind::MissingNaToken: return "MissingNaToken";
      case Kind::LeakedChunks: return "LeakedChunks";
      case Kind::UnknownUpdate: return "UnknownUpdate";
      case Kind::UndefinedPredicate: return "UndefinedPredicate";
      case Kind::UnsupportedType: return "UnsupportedType";
      case Kind::BranchOnNonBool: return "BranchOnNonBool";
      case Kind::DuplicateBinder: return "DuplicateBinder";
      case Kind::MaxPathsExceeded: return "MaxPathsExceeded";
    }
    return "?";
  }

  std::string to_string() const {
    return std::string(kind_name(kind)) + (detail.empty() ? "" : ": " + detail);
  }
};

/// Minimal result type: a value or a VerifyError.
template <typename T>
class Expected {
 public:
  Expected(T v) : v_(std::move(v)) {}               // NOLINT
  Expected(VerifyError e) : v_(std::move(e)) {}     // NOLINT

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }
  T& value() { return std::get<T>(v_); }
  const T& value() const { return std::get<T>(v_); }
  const VerifyError& error() const { return std::get<VerifyError>(v_); }

 private:
  std::variant<T, VerifyError> v_;
};

/// One point in the symbolic execution: store, heap, path condition, plus
/// engine bookkeeping that travels with the path (boolean symbol
/// definitions, applied one-shot updates, intentionally leaked chunks).
/// Value semantics: path forks copy the state.
struct SymbolicState {
  std::map<std::string, Term> store;
  Heap heap;
  PathCondition pc;

  /// Definitions of boolean symbols produced by comparison rvalues; a
  /// branch on such a symbol assumes the fact (or its negation).
  std::map<uint64_t, Fact> bool_defs;

  /// Update tokens already applied (one-shot enforcement).
  std::set<uint64_t> applied_updates;

  /// Rendered chunks discharged via `leak`, exempt from the leak check.
  std::vector<std::string> leaked;

  /// Ambient names visible to assertions and ghost commands on this path:
  /// parameters (entry values), lifetimes, `tid`, contract binders, and
  /// bindings introduced by ghost commands.
  std::map<std::string, Term> env;

  bool terminal() const { return !pc.consistent(); }
};

/// Operand evaluation against the store. Reading a local bound to poison is
/// a verification failure (producing an invalid value).
inline Expected<Term> eval_operand(const std::map<std::string, Term>& store, const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::Int:
      return Term::int_lit(op.ival);
    case Operand::Kind::Bool:
      return Term::bool_lit(op.bval);
    case Operand::Kind::Unit:
      return Term::unit();
    case Operand::Kind::Local: {
      auto it = store.find(op.name);
      if (it == store.end())
        return VerifyError{VerifyError::Kind::UnboundLocal, "local '" + op.name + "' is unbound",
                           op.loc};
      if (it->second.is_poison())
        return VerifyError{VerifyError::Kind::PoisonRead,
                           "local '" + op.name + "' holds an uninitialized value", op.loc};
      return it->second;
    }
  }
  return VerifyError{VerifyError::Kind::UnboundLocal, "malformed operand", op.loc};
}

}  // namespace mmirv
