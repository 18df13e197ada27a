#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmirv/diagnostics.hpp"
#include "mmirv/ir.hpp"

namespace mmirv {

namespace detail {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Ident, Int, Lifetime, Punct, End, Bad };

  Kind kind = Kind::End;
  std::string text;
  long long value = 0;
  Loc loc;

  bool is(const char* punct) const { return kind == Kind::Punct && text == punct; }
  bool is_ident(const char* word) const { return kind == Kind::Ident && text == word; }
};

struct ParseError {
  Loc loc;
  std::string message;
};

/// Total lexer: any byte sequence produces a token stream, with Bad tokens
/// for bytes outside the language. `//` starts a line comment unless
/// immediately followed by `@`, in which case the rest of the line is
/// ordinary annotation input.
class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      Token t = next();
      out.push_back(t);
      if (t.kind == Token::Kind::End) break;
    }
    return out;
  }

 private:
  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '/' && peek(1) == '/') {
        if (peek(2) == '@') {
          take();
          take();
          take();  // the `//@` marker itself is trivia
        } else {
          while (pos_ < text_.size() && peek() != '\n') take();
        }
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_trivia();
    Loc loc{line_, col_};
    if (pos_ >= text_.size()) return {Token::Kind::End, "", 0, loc};
    char c = peek();

    if (ident_start(c)) {
      std::string word;
      while (pos_ < text_.size() && ident_char(peek())) word += take();
      return {Token::Kind::Ident, word, 0, loc};
    }
    if (c >= '0' && c <= '9') {
      std::string digits;
      while (pos_ < text_.size() && peek() >= '0' && peek() <= '9') digits += take();
      long long v = 0;
      try {
        v = std::stoll(digits);
      } catch (...) {
        return {Token::Kind::Bad, digits, 0, loc};
      }
      return {Token::Kind::Int, digits, v, loc};
    }
    if (c == '\'') {
      take();
      std::string word;
      while (pos_ < text_.size() && ident_char(peek())) word += take();
      if (word.empty()) return {Token::Kind::Bad, "'", 0, loc};
      return {Token::Kind::Lifetime, word, 0, loc};
    }

    // Multi-character punctuation, longest first.
    static const char* multi[] = {"&*&", "->", "==", "!=", "<="};
    for (const char* m : multi) {
      size_t n = std::string(m).size();
      if (text_.compare(pos_, n, m) == 0) {
        for (size_t i = 0; i < n; ++i) take();
        return {Token::Kind::Punct, m, 0, loc};
      }
    }
    static const std::string singles = "{}()[]<>,;:=?.+-/*&";
    if (singles.find(c) != std::string::npos) {
      take();
      return {Token::Kind::Punct, std::string(1, c), 0, loc};
    }
    take();
    return {Token::Kind::Bad, std::string(1, c), 0, loc};
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program parse_program() {
    Program p;
    while (!at_end()) {
      if (peek().is_ident("struct")) {
        p.structs.push_back(parse_struct());
      } else if (peek().is_ident("predicate")) {
        p.predicates.push_back(parse_predicate());
      } else if (peek().is_ident("fn")) {
        p.functions.push_back(parse_fn());
      } else {
        fail("expected 'struct', 'predicate' or 'fn'");
      }
    }
    return p;
  }

  Assertion parse_assertion_only() {
    Assertion a = parse_assertion();
    if (!at_end()) fail("unexpected input after assertion");
    return a;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError{peek().loc, msg}; }

  // Recursion guard so pathological nesting stays a diagnostic, not a
  // stack overflow.
  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p_(p) {
      if (++p_.depth_ > 256) {
        --p_.depth_;
        p_.fail("nesting too deep");
      }
    }
    ~DepthGuard() { --p_.depth_; }
    Parser& p_;
  };

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  Token expect_punct(const char* p) {
    if (!peek().is(p)) fail(std::string("expected '") + p + "'");
    return take();
  }
  Token expect_keyword(const char* w) {
    if (!peek().is_ident(w)) fail(std::string("expected '") + w + "'");
    return take();
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what);
    return take().text;
  }
  std::string expect_lifetime() {
    if (peek().kind != Token::Kind::Lifetime) fail("expected a lifetime ('a)");
    return take().text;
  }

  // -- types --

  TypeExpr parse_type() {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.is_ident("Int")) {
      take();
      return TypeExpr::int_ty();
    }
    if (t.is_ident("Bool")) {
      take();
      return TypeExpr::bool_ty();
    }
    if (t.is("(")) {
      take();
      expect_punct(")");
      return TypeExpr::unit_ty();
    }
    if (t.is("*")) {
      take();
      if (peek().is_ident("mut") || peek().is_ident("const")) take();
      else fail("expected 'mut' or 'const' after '*'");
      return TypeExpr::raw_addr(parse_type());
    }
    if (t.is("&")) {
      take();
      std::string lft = expect_lifetime();
      return TypeExpr::shared_ref(lft, parse_type());
    }
    if (t.kind == Token::Kind::Ident) return TypeExpr::struct_ref(take().text);
    fail("expected a type");
  }

  // -- items --

  StructDef parse_struct() {
    StructDef s;
    s.loc = peek().loc;
    expect_keyword("struct");
    s.name = expect_ident("struct name");
    expect_punct("{");
    while (!peek().is("}")) {
      StructField f;
      f.loc = peek().loc;
      f.name = expect_ident("field name");
      expect_punct(":");
      f.type = parse_type();
      expect_punct(";");
      s.fields.push_back(std::move(f));
    }
    expect_punct("}");
    return s;
  }

  PredicateDef parse_predicate() {
    PredicateDef d;
    d.loc = peek().loc;
    expect_keyword("predicate");
    d.name = expect_ident("predicate name");
    expect_punct("(");
    if (!peek().is(")")) {
      d.formals.push_back(expect_ident("formal"));
      while (peek().is(",")) {
        take();
        d.formals.push_back(expect_ident("formal"));
      }
    }
    expect_punct(")");
    expect_punct("=");
    d.body = parse_assertion();
    expect_punct(";");
    return d;
  }

  FunctionDef parse_fn() {
    FunctionDef f;
    f.loc = peek().loc;
    expect_keyword("fn");
    f.name = expect_ident("function name");
    if (peek().is("<")) {
      take();
      f.lifetime_params.push_back(expect_lifetime());
      while (peek().is(",")) {
        take();
        f.lifetime_params.push_back(expect_lifetime());
      }
      expect_punct(">");
    }
    expect_punct("(");
    if (!peek().is(")")) {
      parse_param(f);
      while (peek().is(",")) {
        take();
        parse_param(f);
      }
    }
    expect_punct(")");
    if (peek().is("->")) {
      take();
      f.return_type = parse_type();
    }
    expect_keyword("requires");
    f.contract.requires_clause = parse_assertion();
    expect_punct(";");
    expect_keyword("ensures");
    f.contract.ensures_clause = parse_assertion();
    expect_punct(";");
    expect_punct("{");
    bool first = true;
    while (!peek().is("}")) {
      auto [label, block] = parse_block();
      if (first) {
        f.entry = label;
        first = false;
      }
      if (f.blocks.count(label)) fail("duplicate block label '" + label + "'");
      f.blocks.emplace(std::move(label), std::move(block));
    }
    expect_punct("}");
    if (first) fail("function body needs at least one block");
    return f;
  }

  void parse_param(FunctionDef& f) {
    std::string name = expect_ident("parameter name");
    expect_punct(":");
    f.params.emplace_back(std::move(name), parse_type());
  }

  // -- blocks --

  std::pair<std::string, BasicBlock> parse_block() {
    BasicBlock b;
    b.loc = peek().loc;
    std::string label = expect_ident("block label");
    expect_punct(":");
    expect_punct("{");
    while (true) {
      const Token& t = peek();
      if (t.is_ident("return") || t.is_ident("goto") || t.is_ident("branch") ||
          t.is_ident("call") || t.is_ident("abort")) {
        b.term = parse_terminator();
        expect_punct(";");
        break;
      }
      if (t.is("}")) fail("block needs a terminator");
      b.statements.push_back(parse_statement());
    }
    expect_punct("}");
    return {std::move(label), std::move(b)};
  }

  Statement parse_statement() {
    Loc loc = peek().loc;
    const Token& t = peek();
    if (t.is_ident("store")) {
      take();
      std::string base = expect_ident("base local");
      expect_punct(".");
      std::string field = expect_ident("field name");
      expect_punct("=");
      Operand v = parse_operand();
      expect_punct(";");
      return Statement::store_field(std::move(base), std::move(field), std::move(v), loc);
    }
    if (t.is_ident("open") || t.is_ident("close") || t.is_ident("lemma") || t.is_ident("apply") ||
        t.is_ident("leak")) {
      GhostCommand g = parse_ghost();
      expect_punct(";");
      return Statement::ghost_cmd(std::move(g), loc);
    }
    std::string dest = expect_ident("local name");
    expect_punct("=");
    Rvalue rv = parse_rvalue();
    expect_punct(";");
    return Statement::assign(std::move(dest), std::move(rv), loc);
  }

  Rvalue parse_rvalue() {
    const Token& t = peek();
    if (t.is_ident("alloc")) {
      take();
      expect_punct("(");
      std::string s = expect_ident("struct name");
      expect_punct(")");
      return Rvalue::alloc(std::move(s));
    }
    if (t.is_ident("load")) {
      take();
      std::string base = expect_ident("base local");
      expect_punct(".");
      std::string field = expect_ident("field name");
      return Rvalue::load_field(std::move(base), std::move(field));
    }
    Operand a = parse_operand();
    std::optional<BinOpKind> op;
    if (peek().is("+")) op = BinOpKind::Add;
    else if (peek().is("-")) op = BinOpKind::Sub;
    else if (peek().is("==")) op = BinOpKind::Eq;
    else if (peek().is("!=")) op = BinOpKind::Ne;
    else if (peek().is("<=")) op = BinOpKind::Le;
    else if (peek().is("<")) op = BinOpKind::Lt;
    if (!op) return Rvalue::use(std::move(a));
    take();
    Operand b = parse_operand();
    return Rvalue::bin_op(*op, std::move(a), std::move(b));
  }

  Operand parse_operand() {
    Loc loc = peek().loc;
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) return Operand::int_lit(take().value, loc);
    if (t.is("-")) {
      take();
      if (peek().kind != Token::Kind::Int) fail("expected an integer after '-'");
      return Operand::int_lit(-take().value, loc);
    }
    if (t.is_ident("true")) {
      take();
      return Operand::bool_lit(true, loc);
    }
    if (t.is_ident("false")) {
      take();
      return Operand::bool_lit(false, loc);
    }
    if (t.is("(")) {
      take();
      expect_punct(")");
      return Operand::unit(loc);
    }
    if (t.kind == Token::Kind::Ident) return Operand::local(take().text, loc);
    fail("expected an operand");
  }

  Terminator parse_terminator() {
    Loc loc = peek().loc;
    const Token& t = peek();
    if (t.is_ident("return")) {
      take();
      if (peek().is(";")) return Terminator::ret(std::nullopt, loc);
      return Terminator::ret(parse_operand(), loc);
    }
    if (t.is_ident("goto")) {
      take();
      return Terminator::goto_(expect_ident("label"), loc);
    }
    if (t.is_ident("branch")) {
      take();
      Operand cond = parse_operand();
      expect_punct("?");
      std::string then_l = expect_ident("label");
      expect_punct(":");
      std::string else_l = expect_ident("label");
      return Terminator::branch(std::move(cond), std::move(then_l), std::move(else_l), loc);
    }
    if (t.is_ident("abort")) {
      take();
      return Terminator::abort(loc);
    }
    expect_keyword("call");
    Terminator c;
    c.kind = Terminator::Kind::Call;
    c.loc = loc;
    c.dest = expect_ident("destination local");
    expect_punct("=");
    c.callee = expect_ident("function name");
    if (peek().is("<")) {
      take();
      c.lifetime_args.push_back(expect_lifetime());
      while (peek().is(",")) {
        take();
        c.lifetime_args.push_back(expect_lifetime());
      }
      expect_punct(">");
    }
    expect_punct("(");
    if (!peek().is(")")) {
      c.args.push_back(parse_operand());
      while (peek().is(",")) {
        take();
        c.args.push_back(parse_operand());
      }
    }
    expect_punct(")");
    expect_punct("->");
    c.return_label = expect_ident("return label");
    if (peek().is_ident("unwind")) {
      take();
      c.unwind_label = expect_ident("unwind label");
    }
    return c;
  }

  // -- ghost commands --

  GhostCommand parse_ghost() {
    GhostCommand g;
    g.loc = peek().loc;
    if (peek().is_ident("open") || peek().is_ident("close")) {
      g.kind = take().text == "open" ? GhostCommand::Kind::Open : GhostCommand::Kind::Close;
      g.inst = parse_pred_instance();
      return g;
    }
    if (peek().is_ident("lemma")) {
      take();
      expect_keyword("lftl_na_acc");
      g.kind = GhostCommand::Kind::LemmaNaAcc;
      expect_punct("(");
      g.lft_chunk = parse_chunk();
      expect_punct(",");
      g.na_chunk = parse_chunk();
      expect_punct(",");
      g.borrow_body = parse_pred_instance();
      if (peek().is(",")) {
        take();
        expect_punct("?");
        g.update_binder = expect_ident("update binder");
      }
      expect_punct(")");
      return g;
    }
    if (peek().is_ident("apply")) {
      take();
      g.kind = GhostCommand::Kind::Apply;
      g.apply_token = parse_term_atom();
      return g;
    }
    expect_keyword("leak");
    g.kind = GhostCommand::Kind::Leak;
    g.leak_chunk = parse_chunk();
    return g;
  }

  PredInstancePat parse_pred_instance() {
    PredInstancePat inst;
    inst.loc = peek().loc;
    inst.name = expect_ident("predicate name");
    expect_punct("(");
    if (!peek().is(")")) {
      inst.args.push_back(parse_arg_pat());
      while (peek().is(",")) {
        take();
        inst.args.push_back(parse_arg_pat());
      }
    }
    expect_punct(")");
    return inst;
  }

  // -- assertions --

  Assertion parse_assertion() {
    std::vector<Assertion> atoms{parse_assertion_atom()};
    while (peek().is("&*&")) {
      take();
      if (atoms.size() >= 4096) fail("assertion has too many conjuncts");
      atoms.push_back(parse_assertion_atom());
    }
    // Right-associate.
    Assertion a = atoms.back();
    for (size_t i = atoms.size() - 1; i-- > 0;) a = AssertionNode::mk_star(atoms[i], a);
    return a;
  }

  Assertion parse_assertion_atom() {
    Loc loc = peek().loc;
    if (peek().is_ident("true") &&
        !(peek(1).is("==") || peek(1).is("!=") || peek(1).is("<=") || peek(1).is("<"))) {
      take();
      return AssertionNode::mk_true(loc);
    }
    if (peek().is_ident("emp")) {
      take();
      return AssertionNode::mk_emp(loc);
    }
    if (peek().is("[")) return AssertionNode::mk_chunk(parse_chunk());
    if (peek().kind == Token::Kind::Ident && peek(1).is("("))
      return AssertionNode::mk_chunk(parse_chunk());
    PurePat p;
    p.loc = loc;
    p.lhs = parse_term_atom();
    if (peek().is("==")) p.rel = Fact::Kind::Eq;
    else if (peek().is("!=")) p.rel = Fact::Kind::Neq;
    else if (peek().is("<=")) p.rel = Fact::Kind::Le;
    else if (peek().is("<")) p.rel = Fact::Kind::Lt;
    else fail("expected a comparison");
    take();
    p.rhs = parse_term_atom();
    return AssertionNode::mk_pure(std::move(p));
  }

  ChunkPat parse_chunk() {
    ChunkPat c;
    c.loc = peek().loc;
    if (peek().is("[")) {
      take();
      if (peek().is("?")) {
        take();
        c.coeff = FracPat::from_binder(expect_ident("fraction binder"));
      } else {
        if (peek().kind != Token::Kind::Int) fail("expected a fraction");
        long long num = take().value;
        long long den = 1;
        if (peek().is("/")) {
          take();
          if (peek().kind != Token::Kind::Int) fail("expected a denominator");
          den = take().value;
        }
        if (num <= 0 || den <= 0 || num > den) fail("fraction must be in (0, 1]");
        c.coeff = FracPat::concrete(Fraction(num, den));
      }
      expect_punct("]");
    }
    c.pred = expect_ident("predicate name");
    expect_punct("(");
    if (!peek().is(")")) {
      c.args.push_back(parse_arg_pat());
      while (peek().is(",")) {
        take();
        c.args.push_back(parse_arg_pat());
      }
    }
    expect_punct(")");
    return c;
  }

  ArgPat parse_arg_pat() {
    DepthGuard guard(*this);
    if (peek().is("?")) {
      take();
      return ArgPat::from_binder(expect_ident("binder name"));
    }
    if (peek().kind == Token::Kind::Ident && peek(1).is("(") && !peek().is_ident("result") &&
        !peek().is_ident("poison")) {
      std::string name = take().text;
      expect_punct("(");
      std::vector<ArgPat> args;
      if (!peek().is(")")) {
        args.push_back(parse_arg_pat());
        while (peek().is(",")) {
          take();
          args.push_back(parse_arg_pat());
        }
      }
      expect_punct(")");
      return ArgPat::app(std::move(name), std::move(args));
    }
    return ArgPat::from_atom(parse_term_atom());
  }

  TermAtom parse_term_atom() {
    Loc loc = peek().loc;
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) return TermAtom::int_lit(take().value, loc);
    if (t.is("-")) {
      take();
      if (peek().kind != Token::Kind::Int) fail("expected an integer after '-'");
      return TermAtom::int_lit(-take().value, loc);
    }
    if (t.kind == Token::Kind::Lifetime) return TermAtom::named("'" + take().text, loc);
    if (t.is_ident("poison")) {
      take();
      return TermAtom::poison(loc);
    }
    if (t.is("(")) {
      take();
      expect_punct(")");
      return TermAtom::unit(loc);
    }
    if (t.kind == Token::Kind::Ident) return TermAtom::named(take().text, loc);
    fail("expected a term");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int depth_ = 0;
};

// ---------------------------------------------------------------------------
// Local typing / field-access elaboration
// ---------------------------------------------------------------------------

/// Infers local types from parameters and assignments, then fills in the
/// struct name of every field access. Surface syntax writes `store x.f = v`
/// without naming the struct; the base local's pointee type decides it.
inline void elaborate_field_accesses(Program& p) {
  for (auto& f : p.functions) {
    std::map<std::string, TypeExpr> locals;
    for (const auto& [pn, pt] : f.params) locals[pn] = pt;

    auto pointee_struct = [&](const std::string& local) -> std::string {
      auto it = locals.find(local);
      if (it == locals.end()) return "";
      const TypeExpr& t = it->second;
      if ((t.kind == TypeExpr::Kind::RawAddr || t.kind == TypeExpr::Kind::SharedRef) &&
          t.pointee->kind == TypeExpr::Kind::StructRef)
        return t.pointee->name;
      return "";
    };

    auto operand_type = [&](const Operand& op) -> std::optional<TypeExpr> {
      switch (op.kind) {
        case Operand::Kind::Int:
          return TypeExpr::int_ty();
        case Operand::Kind::Bool:
          return TypeExpr::bool_ty();
        case Operand::Kind::Unit:
          return TypeExpr::unit_ty();
        case Operand::Kind::Local: {
          auto it = locals.find(op.name);
          if (it == locals.end()) return std::nullopt;
          return it->second;
        }
      }
      return std::nullopt;
    };

    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 64) {
      changed = false;
      auto learn = [&](const std::string& name, const TypeExpr& t) {
        auto it = locals.find(name);
        if (it == locals.end()) {
          locals[name] = t;
          changed = true;
        }
      };
      for (auto& [label, block] : f.blocks) {
        for (auto& st : block.statements) {
          if (st.kind == Statement::Kind::StoreField && st.struct_name.empty()) {
            std::string s = pointee_struct(st.base);
            if (!s.empty()) {
              st.struct_name = s;
              changed = true;
            }
          }
          if (st.kind != Statement::Kind::Assign) continue;
          Rvalue& rv = st.rvalue;
          switch (rv.kind) {
            case Rvalue::Kind::Alloc:
              learn(st.dest, TypeExpr::raw_addr(TypeExpr::struct_ref(rv.struct_name)));
              break;
            case Rvalue::Kind::Use:
              if (auto t = operand_type(rv.a)) learn(st.dest, *t);
              break;
            case Rvalue::Kind::BinOp:
              learn(st.dest, rv.op == BinOpKind::Add || rv.op == BinOpKind::Sub
                                 ? TypeExpr::int_ty()
                                 : TypeExpr::bool_ty());
              break;
            case Rvalue::Kind::LoadField: {
              if (rv.struct_name.empty()) {
                std::string s = pointee_struct(rv.base);
                if (!s.empty()) {
                  rv.struct_name = s;
                  changed = true;
                }
              }
              if (!rv.struct_name.empty()) {
                if (const StructDef* sd = p.find_struct(rv.struct_name)) {
                  for (const auto& fl : sd->fields)
                    if (fl.name == rv.field) learn(st.dest, fl.type);
                }
              }
              break;
            }
          }
        }
        Terminator& t = block.term;
        if (t.kind == Terminator::Kind::Call) {
          if (const FunctionDef* callee = p.find_function(t.callee)) {
            learn(t.dest, callee->return_type);
          } else if (t.callee.rfind("free_", 0) == 0) {
            learn(t.dest, TypeExpr::unit_ty());
          }
        }
      }
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public frontend operations
// ---------------------------------------------------------------------------

struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value() && diagnostics.empty(); }
};

/// Parses, elaborates and validates one source file. Total: any byte
/// sequence yields either a validated program or diagnostics.
inline ParseResult parse_program(const SourceFile& src) {
  ParseResult out;
  try {
    detail::Parser parser(detail::Lexer(src.text).run());
    Program p = parser.parse_program();
    detail::elaborate_field_accesses(p);
    auto diags = validate_program(p);
    if (!diags.empty()) {
      out.diagnostics = std::move(diags);
      return out;
    }
    out.program = std::move(p);
    return out;
  } catch (const detail::ParseError& e) {
    out.diagnostics.push_back({Diagnostic::Severity::Error, e.message, e.loc});
    return out;
  }
}

struct AssertionParseResult {
  std::optional<Assertion> assertion;
  std::optional<Diagnostic> diagnostic;
};

/// Parses a standalone assertion (contract clause surface syntax).
inline AssertionParseResult parse_assertion(const std::string& text) {
  AssertionParseResult out;
  try {
    detail::Parser parser(detail::Lexer(text).run());
    out.assertion = parser.parse_assertion_only();
    return out;
  } catch (const detail::ParseError& e) {
    out.diagnostic = Diagnostic{Diagnostic::Severity::Error, e.message, e.loc};
    return out;
  }
}

}  // namespace mmirv
