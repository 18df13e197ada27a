#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mmirv/fraction.hpp"
#include "mmirv/prover.hpp"
#include "mmirv/term.hpp"

namespace mmirv {

/// Chunk coefficient: an exact rational, or a fraction-sorted symbolic term
/// (the amount a function receives for a lifetime parameter is symbolic).
class Coeff {
 public:
  Coeff() : v_(Fraction::one()) {}
  Coeff(Fraction f) : v_(f) {}       // NOLINT: implicit by design
  explicit Coeff(Term t) : v_(std::move(t)) {}

  bool concrete() const { return std::holds_alternative<Fraction>(v_); }
  const Fraction& frac() const { return std::get<Fraction>(v_); }
  const Term& term() const { return std::get<Term>(v_); }
  bool is_one() const { return concrete() && frac().is_one(); }

  /// The coefficient as a term (for embedding into bookkeeping chunks).
  Term as_term() const {
    return concrete() ? Term::frac_lit(frac()) : term();
  }

  std::string to_string() const {
    return concrete() ? frac().to_string() : term().to_string();
  }

  friend bool operator==(const Coeff& a, const Coeff& b) {
    if (a.concrete() != b.concrete()) return false;
    return a.concrete() ? a.frac() == b.frac() : a.term() == b.term();
  }

 private:
  std::variant<Fraction, Term> v_;
};

/// One separation-logic resource: a predicate applied to argument terms,
/// scaled by a coefficient (1 for everything except lifetime tokens).
struct Chunk {
  std::string pred;
  Coeff coeff;
  std::vector<Term> args;

  Chunk() = default;
  Chunk(std::string p, std::vector<Term> a) : pred(std::move(p)), args(std::move(a)) {}
  Chunk(std::string p, Coeff c, std::vector<Term> a)
      : pred(std::move(p)), coeff(std::move(c)), args(std::move(a)) {}

  std::string to_string() const {
    std::string s;
    if (!coeff.is_one()) s += "[" + coeff.to_string() + "]";
    s += pred + "(";
    for (size_t i = 0; i < args.size(); ++i) {
      if (i) s += ", ";
      s += args[i].to_string();
    }
    return s + ")";
  }
};

/// The symbolic heap: a multiset of chunks. Internal order is an artifact of
/// construction and never observable through operation results.
class Heap {
 public:
  Heap() = default;

  const std::vector<Chunk>& chunks() const { return chunks_; }
  size_t size() const { return chunks_.size(); }
  bool empty() const { return chunks_.empty(); }

  void add(Chunk c) { chunks_.push_back(std::move(c)); }
  void remove_at(size_t i) { chunks_.erase(chunks_.begin() + (long)i); }
  Chunk& at(size_t i) { return chunks_[i]; }
  const Chunk& at(size_t i) const { return chunks_[i]; }

  std::vector<std::string> render_sorted() const {
    std::vector<std::string> out;
    out.reserve(chunks_.size());
    for (const auto& c : chunks_) out.push_back(c.to_string());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Multiset equality via the canonical rendering.
  friend bool operator==(const Heap& a, const Heap& b) {
    return a.render_sorted() == b.render_sorted();
  }

 private:
  std::vector<Chunk> chunks_;
};

/// Binder environment: maps `?x` names (and ambient names such as parameters,
/// lifetimes and `tid`) to terms. Each `?x` is bound exactly once per
/// consume.
using Bindings = std::map<std::string, Term>;

}  // namespace mmirv
