#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "mmirv/ir.hpp"
#include "mmirv/parser.hpp"

using namespace mmirv;

namespace {

Program parse_ok(const std::string& src) {
  ParseResult r = parse_program({"test.mmir", src});
  REQUIRE(r.ok());
  return std::move(*r.program);
}

// Raw parse without validation, for feeding validate_program directly.
Program parse_raw(const std::string& src) {
  detail::Parser p(detail::Lexer(src).run());
  Program prog = p.parse_program();
  detail::elaborate_field_accesses(prog);
  return prog;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("the deque program validates cleanly") {
  Program p = parse_ok(slurp(std::string(CORPUS_DIR) + "/deque.mmir"));
  CHECK(validate_program(p).empty());
}

TEST_CASE("validate_program is deterministic") {
  Program p = parse_raw(R"(
struct Node { v: Int; }
struct Node { w: Int; }
fn f() requires true; ensures true; { entry: { goto missing; } }
)");
  auto d1 = validate_program(p);
  auto d2 = validate_program(p);
  REQUIRE(d1.size() == d2.size());
  for (size_t i = 0; i < d1.size(); ++i) {
    CHECK(d1[i].message == d2[i].message);
    CHECK(d1[i].location.line == d2[i].location.line);
  }
}

TEST_CASE("dangling labels are reported") {
  Program p = parse_raw(R"(
fn f() requires true; ensures true; { entry: { goto missing_label; } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  bool found = false;
  for (const auto& d : diags) found |= d.message.find("unresolved label") != std::string::npos;
  CHECK(found);
}

TEST_CASE("duplicate struct names are reported") {
  Program p = parse_raw(R"(
struct Node { v: Int; }
struct Node { w: Int; }
)");
  auto diags = validate_program(p);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("duplicate name") != std::string::npos);
  CHECK(diags[0].message.find("Node") != std::string::npos);
}

TEST_CASE("reserved predicate names cannot be shadowed") {
  Program p = parse_raw("predicate lft(k) = emp;");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("reserved") != std::string::npos);
}

TEST_CASE("field chunk families cannot be shadowed") {
  Program p = parse_raw(R"(
struct Node { value: Int; }
predicate Node_value(a, b) = emp;
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("shadows") != std::string::npos);
}

TEST_CASE("call arity mismatches are reported") {
  Program p = parse_raw(R"(
fn callee(a: Int, b: Int) requires true; ensures true; { entry: { return (); } }
fn caller() requires true; ensures true; {
  entry: { call x = callee(1) -> done; }
  done: { return (); }
}
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("passes 1 arguments") != std::string::npos);
}

TEST_CASE("result is rejected outside ensures") {
  Program p = parse_raw(R"(
fn f() -> Int requires result == 0; ensures true; { entry: { return 0; } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("result") != std::string::npos);
}

TEST_CASE("unknown names in contracts are reported") {
  Program p = parse_raw(R"(
fn f() requires nonsuch == 0; ensures true; { entry: { return (); } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("unbound name 'nonsuch'") != std::string::npos);
}

TEST_CASE("requires binders scope over ensures") {
  Program p = parse_raw(R"(
struct Node { value: Int; }
fn f(p: *mut Node) requires Node_value(p, ?v); ensures Node_value(p, v);
{ entry: { return (); } }
)");
  CHECK(validate_program(p).empty());
}

TEST_CASE("control-flow cycles are rejected") {
  Program p = parse_raw(R"(
fn f() requires true; ensures true; {
  entry: { goto loop; }
  loop: { goto entry; }
}
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("cycle") != std::string::npos);
}

TEST_CASE("unresolved predicates in assertions are reported") {
  Program p = parse_raw(R"(
fn f() requires mystery(1); ensures true; { entry: { return (); } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("unresolved predicate 'mystery'") != std::string::npos);
}

TEST_CASE("chunk arity in assertions is checked") {
  Program p = parse_raw(R"(
struct Node { value: Int; }
fn f(p: *mut Node) requires Node_value(p); ensures true; { entry: { return (); } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("expects 2 arguments") != std::string::npos);
}

TEST_CASE("fractional coefficients are restricted to lifetime tokens") {
  Program p = parse_raw(R"(
struct Node { value: Int; }
fn f(p: *mut Node) requires [1/2]Node_value(p, ?v); ensures true; { entry: { return (); } }
)");
  auto diags = validate_program(p);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].message.find("fractional") != std::string::npos);

  Program ok = parse_raw(R"(
fn g<'a>() requires [1/2]lft('a); ensures [1/2]lft('a); { entry: { return (); } }
)");
  CHECK(validate_program(ok).empty());
}

TEST_CASE("unwind edges parse and validate") {
  Program p = parse_raw(R"(
fn callee() requires true; ensures true; { entry: { return (); } }
fn caller() requires true; ensures true; {
  entry: { call x = callee() -> done unwind cleanup; }
  cleanup: { abort; }
  done: { return (); }
}
)");
  CHECK(validate_program(p).empty());
  const Terminator& t = p.find_function("caller")->blocks.at("entry").term;
  CHECK(t.unwind_label == "cleanup");
}
