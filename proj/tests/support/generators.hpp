// Shared randomized-input generators for the matcher and prover suites.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "mmirv/assertion.hpp"
#include "mmirv/consume.hpp"
#include "mmirv/state.hpp"

namespace generators {

using namespace mmirv;

/// Heaps of up to 5 ground chunks over three fixed-arity predicates, and
/// assertions of up to 4 conjuncts, biased toward heap-derived patterns so
/// both match and mismatch cases occur.
struct MatcherGen {
  std::mt19937 rng;
  SymbolSource src;
  Term x = src.fresh("x"), y = src.fresh("y"), z = src.fresh("z");
  Bindings base_env{{"x", x}, {"y", y}, {"z", z}};

  explicit MatcherGen(unsigned seed) : rng(seed) {}

  static size_t arity_of(const std::string& pred) { return pred == "P" ? 1 : 2; }

  Term random_ground_term() {
    switch (rng() % 5) {
      case 0:
        return x;
      case 1:
        return y;
      case 2:
        return z;
      case 3:
        return Term::int_lit((long long)(rng() % 3));
      default:
        return Term::poison();
    }
  }

  TermAtom atom_for(const Term& t) {
    if (t == x) return TermAtom::named("x");
    if (t == y) return TermAtom::named("y");
    if (t == z) return TermAtom::named("z");
    if (t.kind() == Term::Kind::IntLit) return TermAtom::int_lit(t.int_value());
    return TermAtom::poison();
  }

  SymbolicState random_state() {
    SymbolicState st;
    size_t n = rng() % 6;
    static const char* preds[] = {"P", "Q", "R"};
    for (size_t i = 0; i < (n > 5 ? 5 : n); ++i) {
      std::string pred = preds[rng() % 3];
      std::vector<Term> args;
      for (size_t k = 0; k < arity_of(pred); ++k) args.push_back(random_ground_term());
      st.heap.add(Chunk(pred, std::move(args)));
    }
    if (rng() % 3 == 0) st.pc = st.pc.assume(Fact::eq(x, y));
    return st;
  }

  ArgPat random_arg_pat() {
    switch (rng() % 6) {
      case 0:
        return ArgPat::from_atom(TermAtom::named("x"));
      case 1:
        return ArgPat::from_atom(TermAtom::named("y"));
      case 2:
        return ArgPat::from_atom(TermAtom::named("z"));
      case 3:
        return ArgPat::from_atom(TermAtom::int_lit((long long)(rng() % 3)));
      case 4:
        return ArgPat::from_atom(TermAtom::poison());
      default:
        return ArgPat::from_binder("v" + std::to_string(rng() % 3));
    }
  }

  ChunkPat random_chunk_pat(const SymbolicState& st) {
    ChunkPat c;
    if (!st.heap.empty() && rng() % 10 < 7) {
      const Chunk& picked = st.heap.at(rng() % st.heap.size());
      c.pred = picked.pred;
      for (const Term& t : picked.args) {
        if (rng() % 3 == 0)
          c.args.push_back(ArgPat::from_binder("v" + std::to_string(rng() % 3)));
        else
          c.args.push_back(ArgPat::from_atom(atom_for(t)));
      }
      return c;
    }
    static const char* preds[] = {"P", "Q", "R"};
    c.pred = preds[rng() % 3];
    for (size_t k = 0; k < arity_of(c.pred); ++k) c.args.push_back(random_arg_pat());
    return c;
  }

  Assertion random_assertion(const SymbolicState& st) {
    size_t n = 1 + rng() % 4;
    Assertion a = nullptr;
    for (size_t i = 0; i < n; ++i) {
      Assertion conj;
      if (rng() % 5 == 0) {
        PurePat p;
        p.rel = rng() % 2 ? Fact::Kind::Eq : Fact::Kind::Neq;
        p.lhs = rng() % 2 ? TermAtom::named("x") : TermAtom::named("v" + std::to_string(rng() % 3));
        p.rhs = rng() % 2 ? TermAtom::named("y") : TermAtom::int_lit((long long)(rng() % 3));
        conj = AssertionNode::mk_pure(std::move(p));
      } else {
        conj = AssertionNode::mk_chunk(random_chunk_pat(st));
      }
      a = a ? AssertionNode::mk_star(a, conj) : conj;
    }
    return a;
  }
};

/// Random fact sets over up to 4 integer symbols with literals in [-8, 8].
struct FactGen {
  std::mt19937 rng;

  explicit FactGen(unsigned seed) : rng(seed) {}

  Term random_term(int nsyms) {
    if (rng() % 5 < 3) return Term::sym(rng() % (uint64_t)nsyms, "x");
    return Term::int_lit((long long)(rng() % 17) - 8);
  }

  Fact random_fact(int nsyms) {
    Term a = random_term(nsyms), b = random_term(nsyms);
    switch (rng() % 4) {
      case 0:
        return Fact::eq(a, b);
      case 1:
        return Fact::neq(a, b);
      case 2:
        return Fact::le(a, b);
      default:
        return Fact::lt(a, b);
    }
  }

  std::vector<Fact> random_fact_set() {
    int nsyms = 2 + (int)(rng() % 3);
    std::vector<Fact> facts;
    int nfacts = 2 + (int)(rng() % 4);
    for (int i = 0; i < nfacts; ++i) facts.push_back(random_fact(nsyms));
    return facts;
  }
};

}  // namespace generators
