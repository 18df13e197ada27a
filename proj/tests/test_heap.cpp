#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mmirv/consume.hpp"
#include "mmirv/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace mmirv;

namespace {

Assertion parsed(const std::string& text) {
  auto r = parse_assertion(text);
  REQUIRE(r.assertion);
  return *r.assertion;
}

SymbolicState with_chunks(std::vector<Chunk> chunks) {
  SymbolicState st;
  for (auto& c : chunks) st.heap.add(std::move(c));
  return st;
}

}  // namespace

TEST_CASE("producing the deque ensures clause builds the return heap") {
  SymbolSource src;
  Term l = src.fresh("l");
  SymbolicState st;
  Bindings env{{"result", l}};
  auto r = produce(st,
                   parsed("result != 0 &*& malloc_block_Node(result) &*& "
                          "Node_prev(result, result) &*& Node_value(result, ?value) &*& "
                          "Node_next(result, result)"),
                   env, src);
  REQUIRE(r.ok());
  const SymbolicState& out = r.value();
  CHECK(out.heap.size() == 4);
  CHECK(out.pc.proves(Fact::neq(l, Term::int_lit(0))));
  REQUIRE(env.count("value"));
  CHECK(env.at("value").is_sym());
  CHECK(holds_chunk(out, "malloc_block_Node", {l}));
  CHECK(holds_chunk(out, "Node_prev", {l, l}));
  CHECK(holds_chunk(out, "Node_next", {l, l}));
}

TEST_CASE("producing true or emp changes nothing") {
  SymbolSource src;
  SymbolicState st = with_chunks({Chunk("na_token", {src.fresh_thread("t")})});
  Bindings env;
  for (const char* text : {"true", "emp"}) {
    auto r = produce(st, parsed(text), env, src);
    REQUIRE(r.ok());
    CHECK(r.value().heap == st.heap);
    CHECK(r.value().pc.facts() == st.pc.facts());
  }
}

TEST_CASE("produce binds fraction patterns to fresh bounded symbols") {
  SymbolSource src;
  SymbolicState st;
  Bindings env{{"'a", src.fresh_lft("a")}};
  auto r = produce(st, parsed("[?q]lft('a)"), env, src);
  REQUIRE(r.ok());
  REQUIRE(env.count("q"));
  Term q = env.at("q");
  CHECK(q.sort() == Sort::Frac);
  CHECK(r.value().pc.proves(Fact::lt(Term::int_lit(0), q)));
  CHECK(r.value().pc.proves(Fact::le(q, Term::int_lit(1))));
}

TEST_CASE("consume matches by provable equality and binds positionally") {
  SymbolSource src;
  Term l = src.fresh("l"), k = src.fresh("k");
  SymbolicState st = with_chunks({Chunk("Node_prev", {l, l})});
  st.pc = st.pc.assume(Fact::eq(k, l));
  auto r = consume(st, parsed("Node_prev(k, ?v)"), {{"k", k}});
  REQUIRE(r.ok());
  CHECK(r.value().state.heap.empty());
  REQUIRE(r.value().env.count("v"));
  CHECK(r.value().env.at("v") == l);
}

TEST_CASE("consume on an empty heap reports the missing chunk") {
  SymbolSource src;
  Term l = src.fresh("l");
  SymbolicState st;
  auto r = consume(st, parsed("Node_prev(l, ?v)"), {{"l", l}});
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == VerifyError::Kind::MissingChunk);
  CHECK(r.error().detail.find("Node_prev") != std::string::npos);
}

TEST_CASE("consume proves pure conjuncts and reports unproven ones") {
  SymbolSource src;
  Term x = src.fresh("x");
  SymbolicState st;
  st.pc = st.pc.assume(Fact::neq(x, Term::int_lit(0)));
  CHECK(consume(st, parsed("x != 0"), {{"x", x}}).ok());
  auto r = consume(st, parsed("x == 1"), {{"x", x}});
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == VerifyError::Kind::UnprovenFact);
}

TEST_CASE("consume backtracks across candidates when a later conjunct fails") {
  SymbolSource src;
  Term a = src.fresh("a"), b = src.fresh("b");
  // Two P chunks; only the second pairs with a Q chunk through the binder.
  SymbolicState st = with_chunks({Chunk("P", {a}), Chunk("P", {b}), Chunk("Q", {b})});
  auto r = consume(st, parsed("P(?v) &*& Q(v)"), {});
  REQUIRE(r.ok());
  CHECK(r.value().env.at("v") == b);
  CHECK(r.value().state.heap.size() == 1);
  CHECK(r.value().state.heap.at(0).pred == "P");
  CHECK(r.value().state.heap.at(0).args[0] == a);
}

TEST_CASE("fractional consume splits tokens and binds whole coefficients") {
  SymbolSource src;
  Term a = src.fresh_lft("a");
  SECTION("a concrete demand leaves the remainder") {
    SymbolicState st = with_chunks({Chunk("lft", Coeff(Fraction(1, 1)), {a})});
    auto r = consume(st, parsed("[1/2]lft('a)"), {{"'a", a}});
    REQUIRE(r.ok());
    REQUIRE(r.value().state.heap.size() == 1);
    const Chunk& rem = r.value().state.heap.at(0);
    CHECK(rem.coeff.concrete());
    CHECK(rem.coeff.frac() == Fraction(1, 2));
  }
  SECTION("an over-demand is an insufficient fraction") {
    SymbolicState st = with_chunks({Chunk("lft", Coeff(Fraction(1, 3)), {a})});
    auto r = consume(st, parsed("[1/2]lft('a)"), {{"'a", a}});
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::InsufficientFraction);
  }
  SECTION("a binder takes the whole token and records its coefficient") {
    Term q = src.fresh("q", Sort::Frac);
    SymbolicState st = with_chunks({Chunk("lft", Coeff(q), {a})});
    auto r = consume(st, parsed("[?f]lft('a)"), {{"'a", a}});
    REQUIRE(r.ok());
    CHECK(r.value().state.heap.empty());
    CHECK(r.value().env.at("f") == q);
  }
}

TEST_CASE("split and merge follow exact fraction accounting") {
  SymbolSource src;
  Term a = src.fresh_lft("a"), b = src.fresh_lft("b");
  PathCondition pc;

  SECTION("symmetric split") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 1)), {a}));
    auto r = split_token(h, pc, "lft", {a}, Fraction(1, 2));
    REQUIRE(r.ok());
    auto rendered = r.value().render_sorted();
    REQUIRE(rendered.size() == 2);
    CHECK(rendered[0] == "[1/2]lft('a0)");
    CHECK(rendered[1] == "[1/2]lft('a0)");
  }
  SECTION("exact split leaves no remainder chunk") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 2)), {a}));
    auto r = split_token(h, pc, "lft", {a}, Fraction(1, 2));
    REQUIRE(r.ok());
    CHECK(r.value().size() == 1);
  }
  SECTION("over-demand fails") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 3)), {a}));
    auto r = split_token(h, pc, "lft", {a}, Fraction(1, 2));
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::InsufficientFraction);
  }
  SECTION("halves rejoin") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 2)), {a}));
    h.add(Chunk("lft", Coeff(Fraction(1, 2)), {a}));
    auto r = merge_tokens(h, pc, "lft", {a});
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 1);
    CHECK(r.value().at(0).coeff.frac().is_one());
  }
  SECTION("sums above one are overflow") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 2)), {a}));
    h.add(Chunk("lft", Coeff(Fraction(2, 3)), {a}));
    auto r = merge_tokens(h, pc, "lft", {a});
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::FractionOverflow);
  }
  SECTION("tokens of unprovably-equal lifetimes do not merge") {
    Heap h;
    h.add(Chunk("lft", Coeff(Fraction(1, 4)), {a}));
    h.add(Chunk("lft", Coeff(Fraction(1, 4)), {b}));
    auto r = merge_tokens(h, pc, "lft", {a});
    REQUIRE(r.ok());
    CHECK(r.value() == h);
  }
}

// ---------------------------------------------------------------------------
// Randomized properties
// ---------------------------------------------------------------------------

TEST_CASE("matcher agrees with the permutation oracle") {
  generators::MatcherGen gen(99);
  int successes = 0;
  for (int round = 0; round < 1000; ++round) {
    SymbolicState st = gen.random_state();
    Assertion a = gen.random_assertion(st);
    auto impl = consume(st, a, gen.base_env);
    auto oracle = oracles::oracle_consume(st, a, gen.base_env);
    INFO("assertion: " << a->to_string());
    CHECK(impl.ok() == oracle.success);
    if (impl.ok() && oracle.success) {
      ++successes;
      CHECK(impl.value().state.heap.render_sorted() == oracle.heap.render_sorted());
    }
  }
  CHECK(successes > 100);  // the generator must hit real matches
}

TEST_CASE("frame property: extra chunks never break a consume") {
  generators::MatcherGen gen(1234);
  int checked = 0;
  for (int round = 0; round < 1200 && checked < 120; ++round) {
    SymbolicState st = gen.random_state();
    Assertion a = gen.random_assertion(st);
    auto r = consume(st, a, gen.base_env);
    if (!r.ok()) continue;
    ++checked;
    SymbolicState framed = st;
    Chunk extra("FrameMarker", {gen.random_ground_term()});
    framed.heap.add(extra);
    auto r2 = consume(framed, a, gen.base_env);
    REQUIRE(r2.ok());
    bool found = false;
    for (const auto& c : r2.value().state.heap.chunks()) found |= c.pred == "FrameMarker";
    CHECK(found);
  }
  CHECK(checked >= 100);
}

TEST_CASE("ground produce/consume round-trip restores the heap") {
  generators::MatcherGen gen(555);
  SymbolSource src(1000);
  for (int round = 0; round < 300; ++round) {
    SymbolicState base = gen.random_state();
    // Ground assertion: chunks with ground args plus a satisfiable fact.
    Assertion a = nullptr;
    size_t n = 1 + gen.rng() % 3;
    for (size_t i = 0; i < n; ++i) {
      ChunkPat c;
      c.pred = gen.rng() % 2 ? "S" : "T";
      c.args.push_back(ArgPat::from_atom(TermAtom::named(gen.rng() % 2 ? "x" : "y")));
      Assertion conj = AssertionNode::mk_chunk(std::move(c));
      a = a ? AssertionNode::mk_star(a, conj) : conj;
    }
    if (gen.rng() % 2) {
      PurePat p;
      p.rel = Fact::Kind::Le;
      p.lhs = TermAtom::named("x");
      p.rhs = TermAtom::int_lit(100);
      a = AssertionNode::mk_star(a, AssertionNode::mk_pure(std::move(p)));
    }
    Bindings env = gen.base_env;
    auto produced = produce(base, a, env, src);
    REQUIRE(produced.ok());
    REQUIRE(produced.value().pc.consistent());
    auto consumed = consume(produced.value(), a, env);
    REQUIRE(consumed.ok());
    CHECK(consumed.value().state.heap.render_sorted() == base.heap.render_sorted());
    for (const auto& f : base.pc.facts()) CHECK(consumed.value().state.pc.facts().count(f) == 1);
  }
}

TEST_CASE("consume never removes chunks of a different predicate") {
  SymbolSource src;
  Term a = src.fresh("a");
  SymbolicState st = with_chunks({Chunk("P", {a}), Chunk("Q", {a})});
  auto r = consume(st, parsed("P(?v)"), {});
  REQUIRE(r.ok());
  REQUIRE(r.value().state.heap.size() == 1);
  CHECK(r.value().state.heap.at(0).pred == "Q");
}
