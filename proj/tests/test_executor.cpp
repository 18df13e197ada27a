#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "mmirv/executor.hpp"
#include "mmirv/parser.hpp"

using namespace mmirv;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Program load(const std::string& name) {
  ParseResult r = parse_program({name, slurp(std::string(CORPUS_DIR) + "/" + name)});
  REQUIRE(r.ok());
  return std::move(*r.program);
}

Program parse_src(const std::string& src) {
  ParseResult r = parse_program({"inline.mmir", src});
  INFO(src);
  if (!r.ok())
    for (const auto& d : r.diagnostics) UNSCOPED_INFO(d.to_string());
  REQUIRE(r.ok());
  return std::move(*r.program);
}

VerificationResult verify(const Program& p, const std::string& fn, ExecOptions opts = {}) {
  const FunctionDef* f = p.find_function(fn);
  REQUIRE(f);
  return verify_function(p, *f, opts);
}

}  // namespace

TEST_CASE("create_deque verifies along exactly two paths") {
  Program p = load("deque.mmir");
  VerificationResult r = verify(p, "create_deque");
  CHECK(r.status == VerificationResult::Status::Verified);
  CHECK(r.paths_explored == 2);
}

TEST_CASE("statement semantics") {
  Program p = load("deque.mmir");
  PredTable preds(p);
  SymbolSource src;

  SECTION("a field store consumes the old chunk and produces the new value") {
    Term l = src.fresh("l");
    SymbolicState st;
    st.store["s"] = l;
    st.heap.add(Chunk("Node_prev", {l, Term::poison()}));
    Statement stmt = Statement::store_field("s", "prev", Operand::local("s"));
    stmt.struct_name = "Node";
    auto r = exec_statement(st, stmt, preds, src);
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 1);
    CHECK(holds_chunk(r.value()[0], "Node_prev", {l, l}));
    CHECK(r.value()[0].heap.size() == 1);
  }

  SECTION("a field store without the chunk is an illegal access") {
    SymbolicState st;
    st.store["s"] = src.fresh("l");
    Statement stmt = Statement::store_field("s", "prev", Operand::int_lit(0));
    stmt.struct_name = "Node";
    auto r = exec_statement(st, stmt, preds, src);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::MissingChunk);
  }

  SECTION("loading a poison field gets stuck") {
    Term l = src.fresh("l");
    SymbolicState st;
    st.store["s"] = l;
    st.heap.add(Chunk("Node_value", {l, Term::poison()}));
    Statement stmt = Statement::assign("v", Rvalue::load_field("s", "value"));
    stmt.rvalue.struct_name = "Node";
    auto r = exec_statement(st, stmt, preds, src);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::PoisonRead);
  }

  SECTION("loading an initialized field binds the stored term") {
    Term l = src.fresh("l");
    SymbolicState st;
    st.store["s"] = l;
    st.heap.add(Chunk("Node_value", {l, Term::int_lit(7)}));
    Statement stmt = Statement::assign("v", Rvalue::load_field("s", "value"));
    stmt.rvalue.struct_name = "Node";
    auto r = exec_statement(st, stmt, preds, src);
    REQUIRE(r.ok());
    CHECK(r.value()[0].store.at("v") == Term::int_lit(7));
    CHECK(r.value()[0].heap.size() == 1);  // chunk reproduced
  }

  SECTION("allocation forks into failure and success") {
    SymbolicState st;
    Statement stmt = Statement::assign("s", Rvalue::alloc("Node"));
    auto r = exec_statement(st, stmt, preds, src);
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 2);
    const SymbolicState& fail = r.value()[0];
    const SymbolicState& ok = r.value()[1];
    Term addr = fail.store.at("s");
    CHECK(fail.pc.proves(Fact::eq(addr, Term::int_lit(0))));
    CHECK(fail.heap.empty());
    CHECK(ok.pc.proves(Fact::neq(addr, Term::int_lit(0))));
    CHECK(ok.heap.size() == 4);  // malloc block + three fields, all poison
    CHECK(holds_chunk(ok, "malloc_block_Node", {addr}));
  }

  SECTION("reading an unbound or poison local fails") {
    SymbolicState st;
    st.store["p"] = Term::poison();
    auto r1 = exec_statement(st, Statement::assign("x", Rvalue::use(Operand::local("nope"))),
                             preds, src);
    REQUIRE_FALSE(r1.ok());
    CHECK(r1.error().kind == VerifyError::Kind::UnboundLocal);
    auto r2 =
        exec_statement(st, Statement::assign("x", Rvalue::use(Operand::local("p"))), preds, src);
    REQUIRE_FALSE(r2.ok());
    CHECK(r2.error().kind == VerifyError::Kind::PoisonRead);
  }
}

TEST_CASE("terminator semantics") {
  Program p = load("deque.mmir");
  SymbolSource src;

  SECTION("branch prunes the side its path condition refutes") {
    SymbolicState st;
    Term l = src.fresh("l");
    st.pc = st.pc.assume(Fact::neq(l, Term::int_lit(0)));
    Term flag = src.fresh("c", Sort::Bool);
    st.bool_defs.emplace(flag.id(), Fact::eq(l, Term::int_lit(0)));
    st.store["c"] = flag;
    Terminator t = Terminator::branch(Operand::local("c"), "then_l", "else_l");
    auto r = exec_terminator(st, t, p, src);
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 1);
    CHECK(r.value()[0].label == "else_l");
  }

  SECTION("branch on an unconstrained boolean explores both sides") {
    SymbolicState st;
    Term flag = src.fresh("c", Sort::Bool);
    st.store["c"] = flag;
    Terminator t = Terminator::branch(Operand::local("c"), "then_l", "else_l");
    auto r = exec_terminator(st, t, p, src);
    REQUIRE(r.ok());
    CHECK(r.value().size() == 2);
  }

  SECTION("branch on a non-boolean is rejected") {
    SymbolicState st;
    st.store["c"] = Term::int_lit(3);
    Terminator t = Terminator::branch(Operand::local("c"), "a", "b");
    auto r = exec_terminator(st, t, p, src);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::BranchOnNonBool);
  }

  SECTION("a call applies the contract without touching the body") {
    // Empty caller state: the spec'd effect is r != 0 plus the four chunks.
    SymbolicState st;
    Terminator t;
    t.kind = Terminator::Kind::Call;
    t.dest = "r";
    t.callee = "create_deque";
    t.return_label = "next";
    auto r = exec_terminator(st, t, p, src);
    REQUIRE(r.ok());
    REQUIRE(r.value().size() == 1);
    const SymbolicState& out = r.value()[0].state;
    Term res = out.store.at("r");
    CHECK(out.pc.proves(Fact::neq(res, Term::int_lit(0))));
    CHECK(out.heap.size() == 4);
    CHECK(holds_chunk(out, "malloc_block_Node", {res}));
    CHECK(holds_chunk(out, "Node_prev", {res, res}));
    CHECK(holds_chunk(out, "Node_next", {res, res}));
  }

  SECTION("a call whose requires cannot be consumed fails") {
    SymbolicState st;  // no chunks to free
    st.store["d"] = src.fresh("d");
    Terminator t;
    t.kind = Terminator::Kind::Call;
    t.dest = "u";
    t.callee = "free_Node";
    t.args = {Operand::local("d")};
    t.return_label = "next";
    auto r = exec_terminator(st, t, p, src);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::MissingChunk);
  }
}

TEST_CASE("ghost leak discharges the leak check") {
  Program p = parse_src(R"(
struct Node { prev: *mut Node; value: Int; next: *mut Node; }
fn leaky() -> *mut Node
requires true;
ensures result != 0;
{
  entry: {
    s = alloc(Node);
    c = s == 0;
    branch c ? oom : keep;
  }
  oom: { abort; }
  keep: {
    leak malloc_block_Node(s);
    leak Node_prev(s, ?a);
    leak Node_value(s, ?b);
    leak Node_next(s, ?d);
    return s;
  }
}
)");
  VerificationResult r = verify(p, "leaky");
  INFO((r.first_failure ? r.first_failure->second.to_string() : std::string("no failure")));
  CHECK(r.status == VerificationResult::Status::Verified);
}

TEST_CASE("a forgotten chunk is reported as a leak") {
  Program p = parse_src(R"(
struct Node { prev: *mut Node; value: Int; next: *mut Node; }
fn leaky() -> *mut Node
requires true;
ensures result != 0;
{
  entry: {
    s = alloc(Node);
    c = s == 0;
    branch c ? oom : keep;
  }
  oom: { abort; }
  keep: { return s; }
}
)");
  VerificationResult r = verify(p, "leaky");
  REQUIRE(r.status == VerificationResult::Status::Failed);
  REQUIRE(r.first_failure);
  CHECK(r.first_failure->second.kind == VerifyError::Kind::LeakedChunks);
}

TEST_CASE("unwind edges are recorded but not verified") {
  Program p = parse_src(R"(
fn callee() requires true; ensures true; { entry: { return (); } }
fn caller() -> ()
requires true;
ensures true;
{
  entry: { call x = callee() -> done unwind bail; }
  bail: { abort; }
  done: { return (); }
}
)");
  VerificationResult r = verify(p, "caller");
  CHECK(r.status == VerificationResult::Status::Verified);
  CHECK(r.skipped_unwind == 1);
  CHECK(r.paths_explored == 2);  // the normal path plus the skipped one
}

TEST_CASE("a contradictory callee ensures prunes the continuation") {
  // The continuation after the call is unreachable; even an illegal load
  // there must not be reported.
  Program p = parse_src(R"(
struct Node { value: Int; }
fn oracle() -> Int requires true; ensures result == 0 &*& result != 0;
{
  entry: { abort; }
}
fn caller(x: *mut Node) -> Int
requires true;
ensures true;
{
  entry: { call r = oracle() -> cont; }
  cont: {
    v = load x.value;
    return v;
  }
}
)");
  VerificationResult r = verify(p, "caller");
  INFO((r.first_failure ? r.first_failure->second.to_string() : std::string("ok")));
  CHECK(r.status == VerificationResult::Status::Verified);
  CHECK(r.paths_explored == 0);
}

TEST_CASE("an inconsistent requires clause prunes the whole function") {
  Program p = parse_src(R"(
fn absurd(x: Int) requires x == 0 &*& x != 0; ensures true; { entry: { return (); } }
)");
  VerificationResult r = verify(p, "absurd");
  CHECK(r.status == VerificationResult::Status::Verified);
  CHECK(r.paths_explored == 0);
  REQUIRE(r.tree);
  CHECK(r.tree->outcome == Outcome::Pruned);
}

TEST_CASE("contract-bound heap values flow through loads") {
  Program p = parse_src(R"(
struct Box { v: Int; }
fn pass_through(p: *mut Box) -> Int
requires Box_v(p, ?x);
ensures Box_v(p, x) &*& result == x;
{
  entry: {
    w = load p.v;
    return w;
  }
}
)");
  VerificationResult r = verify(p, "pass_through");
  INFO((r.first_failure ? r.first_failure->second.to_string() : std::string("ok")));
  CHECK(r.status == VerificationResult::Status::Verified);
}

TEST_CASE("calls with lifetime arguments require a live token") {
  Program p = parse_src(R"(
fn idle<'k>(n: Int) requires true; ensures true; { entry: { return (); } }
fn outer<'a>(m: Int) -> ()
requires true;
ensures true;
{
  entry: { call u = idle<'a>(m) -> done; }
  done: { return (); }
}
)");
  SECTION("the caller's entry token satisfies the aliveness check") {
    VerificationResult r = verify(p, "outer");
    INFO((r.first_failure ? r.first_failure->second.to_string() : std::string("ok")));
    CHECK(r.status == VerificationResult::Status::Verified);
    CHECK(verify(p, "idle").status == VerificationResult::Status::Verified);
  }
  SECTION("without any token the call is rejected") {
    SymbolSource src;
    SymbolicState st;
    st.store["m"] = src.fresh("m");
    st.env["'a"] = src.fresh_lft("a");
    const Terminator& call = p.find_function("outer")->blocks.at("entry").term;
    auto r = exec_terminator(st, call, p, src);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == VerifyError::Kind::MissingToken);
  }
}

TEST_CASE("applying an unknown update name fails at the ghost level") {
  Program p = parse_src(R"(
struct Cell { value: Int; }
fn f(x: Int) requires true; ensures true; { entry: { return (); } }
)");
  PredTable preds(p);
  SymbolSource src;
  SymbolicState st;
  GhostCommand g;
  g.kind = GhostCommand::Kind::Apply;
  g.apply_token = TermAtom::named("u");
  auto r = exec_ghost(st, g, preds, src);
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == VerifyError::Kind::UnknownUpdate);
}

TEST_CASE("a deleted field write fails the ensures consume") {
  Program p = parse_program({"deque_missing_store.mmir",
                             slurp(std::string(CORPUS_DIR) +
                                   "/mutations/deque_missing_store.mmir")})
                  .program.value();
  VerificationResult r = verify(p, "create_deque");
  REQUIRE(r.status == VerificationResult::Status::Failed);
  REQUIRE(r.first_failure);
  CHECK(r.first_failure->second.kind == VerifyError::Kind::MissingChunk);
  CHECK(r.first_failure->second.detail.find("Node_prev") != std::string::npos);
}

TEST_CASE("long straight-line goto chains execute without deep recursion") {
  std::string src = "fn long_walk() requires true; ensures true; {\n";
  const int kBlocks = 20000;
  for (int i = 0; i < kBlocks; ++i) {
    src += "b" + std::to_string(i) + ": { goto b" + std::to_string(i + 1) + "; }\n";
  }
  src += "b" + std::to_string(kBlocks) + ": { return (); }\n}\n";
  Program p = parse_src(src);
  VerificationResult r = verify(p, "long_walk");
  CHECK(r.status == VerificationResult::Status::Verified);
  CHECK(r.paths_explored == 1);
}

TEST_CASE("verification is deterministic across runs") {
  Program p = load("deque.mmir");
  ExecOptions opts;
  opts.trace = true;
  VerificationResult r1 = verify(p, "create_deque", opts);
  VerificationResult r2 = verify(p, "create_deque", opts);
  CHECK(r1.paths_explored == r2.paths_explored);
  REQUIRE(r1.tree);
  REQUIRE(r2.tree);
  // Compare the full trees structurally via rendered states.
  std::function<void(const PathNode&, const PathNode&)> compare =
      [&](const PathNode& a, const PathNode& b) {
        CHECK(a.action == b.action);
        CHECK(a.state.heap.render_sorted() == b.state.heap.render_sorted());
        REQUIRE(a.children.size() == b.children.size());
        for (size_t i = 0; i < a.children.size(); ++i) compare(*a.children[i], *b.children[i]);
      };
  compare(*r1.tree, *r2.tree);
}

namespace {

void collect_state_syms(const Term& t, std::set<uint64_t>& out) {
  if (t.is_sym() || t.kind() == Term::Kind::LftVar || t.kind() == Term::Kind::ThreadVar)
    out.insert(t.id());
  for (const auto& k : t.kids()) collect_state_syms(k, out);
}

void collect_tree_syms(const PathNode& n, std::set<uint64_t>& out) {
  for (const auto& [name, t] : n.state.store) collect_state_syms(t, out);
  for (const auto& c : n.state.heap.chunks()) {
    if (!c.coeff.concrete()) collect_state_syms(c.coeff.term(), out);
    for (const auto& a : c.args) collect_state_syms(a, out);
  }
  for (const auto& c : n.children) collect_tree_syms(*c, out);
}

}  // namespace

TEST_CASE("fresh ids never collide across sequentially verified functions") {
  // Distinct verification tasks draw from disjoint id ranges.
  std::vector<std::string> files = {"deque.mmir", "cell.mmir", "unsound.mmir", "modular_a.mmir"};
  std::vector<std::set<uint64_t>> per_task;
  uint64_t task = 0;
  for (const auto& file : files) {
    Program p = load(file);
    for (const auto& f : p.functions) {
      ++task;
      ExecOptions opts;
      opts.trace = true;
      VerificationResult r = verify_function(p, f, opts, task << 32);
      std::set<uint64_t> ids;
      collect_tree_syms(*r.tree, ids);
      per_task.push_back(std::move(ids));
    }
  }
  for (size_t i = 0; i < per_task.size(); ++i)
    for (size_t j = i + 1; j < per_task.size(); ++j)
      for (uint64_t id : per_task[i]) {
        INFO("task " << i << " vs " << j);
        REQUIRE(per_task[j].count(id) == 0);
      }
}

TEST_CASE("path-wide resource invariants hold on every corpus trace") {
  std::vector<std::string> files = {"deque.mmir", "cell.mmir", "modular_a.mmir",
                                    "modular_b.mmir"};
  for (const auto& file : files) {
    Program p = load(file);
    for (const auto& f : p.functions) {
      ExecOptions opts;
      opts.trace = true;
      VerificationResult r = verify_function(p, f, opts);
      // Walk every root-to-leaf path tracking borrow counts and thread
      // tokens per-step state.
      std::function<void(const PathNode&, size_t)> walk = [&](const PathNode& n,
                                                              size_t borrows_before) {
        size_t borrows = 0;
        std::map<std::string, int> na_tokens;
        for (const auto& c : n.state.heap.chunks()) {
          if (c.pred == "na_bor") ++borrows;
          if (c.pred == "na_token") ++na_tokens[c.args[0].to_string()];
        }
        INFO(file << " / " << f.name << " / " << n.action);
        // Persistence: the number of borrows never decreases along a path.
        REQUIRE(borrows >= borrows_before);
        // Thread-token uniqueness: at most one token per thread symbol.
        for (const auto& [tname, count] : na_tokens) REQUIRE(count <= 1);
        for (const auto& c : n.children) walk(*c, borrows);
      };
      walk(*r.tree, 0);
    }
  }
}
