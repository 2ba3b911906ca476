#include "jetvar/parser.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "jetvar/calculus.hpp"
#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

// ---------------------------------------------------------------------------
// Lexing

enum class Tok {
  Ident,
  Str,
  Int,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Comma,
  Semi,
  Equals,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long value = 0;
  std::size_t offset = 0;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Str: return "quoted string";
    case Tok::Int: return "integer";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Equals: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::End: return "end of input";
  }
  return "token";
}

// Formats "line L, column C (byte N)" plus a caret excerpt of the offending
// line, appended to every parse diagnostic.
std::string locate(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1, line_start = 0;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
      line_start = i + 1;
    } else {
      ++col;
    }
  }
  std::size_t line_end = text.find('\n', line_start);
  if (line_end == std::string::npos) line_end = text.size();
  std::string excerpt = text.substr(line_start, line_end - line_start);
  std::string out = " at line " + std::to_string(line) + ", column " + std::to_string(col) +
                    " (byte " + std::to_string(offset) + ")";
  if (!excerpt.empty()) {
    out += "\n  " + excerpt + "\n  " + std::string(col - 1, ' ') + "^";
  }
  return out;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> toks;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](Tok k, std::size_t at, std::string s = "", long v = 0) {
    toks.push_back({k, std::move(s), v, at});
  };
  while (i < n) {
    char c = text[i];
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      push(Tok::Ident, at, text.substr(i, j - i));
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      std::string digits = text.substr(i, j - i);
      if (digits.size() > 18)
        throw Error(Errc::SyntaxError, "integer literal too large" + locate(text, at), at);
      push(Tok::Int, at, digits, std::stol(digits));
      i = j;
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < n && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= n || text[j] != '"')
        throw Error(Errc::SyntaxError, "unterminated string" + locate(text, at), at);
      push(Tok::Str, at, text.substr(i + 1, j - i - 1));
      i = j + 1;
      continue;
    }
    Tok k;
    switch (c) {
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '=': k = Tok::Equals; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      default:
        throw Error(Errc::SyntaxError,
                    std::string("unexpected character '") + c + "'" + locate(text, at), at);
    }
    push(k, at);
    ++i;
  }
  toks.push_back({Tok::End, "", 0, n});
  return toks;
}

// ---------------------------------------------------------------------------
// Expression AST.  Letter indices stay symbolic until elaboration, where
// every letter repeated within a top-level additive term is summed over its
// declared range.

struct IdxEntry {
  bool is_letter = false;
  int value = 0;
  std::string letter;
  std::size_t offset = 0;
};

struct SymRef {
  std::string name;  // family, param, "x", or placeholder family for "E"
  bool is_placeholder = false;
  std::vector<IdxEntry> indices;
  std::vector<IdxEntry> jets;
  std::size_t offset = 0;
};

struct ExprT;

struct FactorT {
  enum K { Num, Ref, Sub, Deriv } k = Num;
  Rational num;
  SymRef ref;
  std::unique_ptr<ExprT> sub;  // Sub body or Deriv argument
  IdxEntry deriv_axis;
  int exp = 1;
  Rational divisor = 1;
  std::size_t offset = 0;
};

struct TermT {
  std::vector<FactorT> factors;
};

struct ExprT {
  std::vector<std::pair<int, TermT>> terms;  // sign, term
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text), toks_(lex(text)) {}

  TheoryModel parse_document() {
    while (peek().kind != Tok::End) parse_statement();
    if (!have_dimension_)
      throw Error(Errc::SyntaxError, "missing dimension declaration" + locate(text_, 0), 0);
    ensure_finalized();
    return std::move(model_);
  }

  GradedPoly parse_single_expression(const TheoryModel& m) {
    model_ = m;
    finalized_ = true;
    have_dimension_ = true;
    ExprT e = parse_expr();
    expect(Tok::End, "end of expression");
    return eval_block_expr(e);
  }

 private:
  const std::string& text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  TheoryModel model_;
  bool have_dimension_ = false;
  bool finalized_ = false;

  // --- token plumbing ------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      throw Error(Errc::SyntaxError,
                  "expected " + what + " (" + tok_name(k) + "), found " + tok_name(peek().kind) +
                      locate(text_, peek().offset),
                  peek().offset);
    return next();
  }
  [[noreturn]] void fail(Errc code, const std::string& msg, std::size_t offset) const {
    throw Error(code, msg + locate(text_, offset), offset);
  }

  // Re-throws an engine error with source location attached, without
  // doubling the code-name prefix Error's constructor adds.
  [[noreturn]] void rethrow_at(const Error& e, std::size_t offset) const {
    std::string w = e.what();
    std::string prefix = std::string(errc_name(e.code())) + ": ";
    if (w.rfind(prefix, 0) == 0) w = w.substr(prefix.size());
    fail(e.code(), w, offset);
  }

  // --- statements ----------------------------------------------------------

  void parse_statement() {
    const Token& t = peek();
    if (t.kind != Tok::Ident)
      fail(Errc::SyntaxError, "expected a statement keyword, found " + std::string(tok_name(t.kind)),
           t.offset);
    const std::string& kw = t.text;
    if (kw == "model") {
      require_declaration_phase(t);
      next();
      model_.name = expect(Tok::Str, "model name").text;
    } else if (kw == "dimension") {
      require_declaration_phase(t);
      next();
      const Token& v = expect(Tok::Int, "base dimension");
      if (v.value < 1) fail(Errc::SyntaxError, "dimension must be positive", v.offset);
      model_.ctx.dim = static_cast<int>(v.value);
      have_dimension_ = true;
    } else if (kw == "jet_order") {
      require_declaration_phase(t);
      next();
      const Token& v = expect(Tok::Int, "maximum jet order");
      if (v.value < 1) fail(Errc::SyntaxError, "jet order must be positive", v.offset);
      model_.ctx.max_jet_order = static_cast<int>(v.value);
    } else if (kw == "param") {
      require_declaration_phase(t);
      next();
      parse_param();
    } else if (kw == "field") {
      require_declaration_phase(t);
      next();
      parse_family(Kind::Field);
    } else if (kw == "ghost") {
      require_declaration_phase(t);
      next();
      parse_family(Kind::Ghost);
    } else if (kw == "antifield") {
      require_declaration_phase(t);
      next();
      parse_family(Kind::Antifield);
    } else if (kw == "ghost_antifield") {
      require_declaration_phase(t);
      next();
      parse_family(Kind::GhostAntifield);
    } else if (kw == "lagrangian") {
      next();
      ensure_finalized();
      model_.lagrangian = parse_braced_expr();
      model_.has_lagrangian = true;
    } else if (kw == "ni") {
      next();
      ensure_finalized();
      parse_ni();
    } else if (kw == "derivation") {
      next();
      ensure_finalized();
      std::string name = expect(Tok::Str, "derivation name").text;
      int parity = parse_parity_keyword();
      model_.derivations.emplace(name, Derivation(parity, parse_component_rows()));
    } else if (kw == "gauge") {
      next();
      ensure_finalized();
      model_.derivations.emplace("gauge", Derivation(1, parse_component_rows()));
    } else if (kw == "brst") {
      next();
      ensure_finalized();
      model_.brst = Derivation(1, parse_component_rows());
    } else if (kw == "extended") {
      next();
      ensure_finalized();
      model_.extended = parse_braced_expr();
    } else {
      fail(Errc::SyntaxError, "unknown statement keyword '" + kw + "'", t.offset);
    }
  }

  void require_declaration_phase(const Token& t) {
    if (finalized_)
      fail(Errc::SyntaxError, "declaration '" + t.text + "' must precede expression blocks",
           t.offset);
  }

  void ensure_finalized() {
    if (finalized_) return;
    if (!have_dimension_)
      fail(Errc::SyntaxError, "missing dimension declaration before first expression block",
           peek().offset);
    model_.finalize();
    finalized_ = true;
  }

  std::vector<int> parse_int_list_brackets(bool allow_empty) {
    expect(Tok::LBracket, "index list");
    std::vector<int> out;
    if (peek().kind == Tok::RBracket) {
      if (!allow_empty)
        fail(Errc::SyntaxError, "expected at least one index", peek().offset);
      next();
      return out;
    }
    while (true) {
      const Token& v = expect(Tok::Int, "index");
      out.push_back(static_cast<int>(v.value));
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RBracket, "end of index list");
    return out;
  }

  Rational parse_rational_literal() {
    bool neg = accept(Tok::Minus);
    const Token& numt = expect(Tok::Int, "numerator");
    Rational q(numt.value);
    if (accept(Tok::Slash)) {
      const Token& dent = expect(Tok::Int, "denominator");
      if (dent.value == 0) fail(Errc::SyntaxError, "zero denominator", dent.offset);
      q /= Rational(dent.value);
    }
    return neg ? Rational(-q) : q;
  }

  void parse_param() {
    const Token& namet = expect(Tok::Ident, "parameter name");
    ParamTensor t;
    t.name = namet.text;
    if (model_.params.count(t.name))
      fail(Errc::GradingInconsistency, "parameter '" + t.name + "' declared twice", namet.offset);
    t.shape = parse_int_list_brackets(/*allow_empty=*/false);
    while (peek().kind == Tok::Ident) {
      const Token& a = next();
      if (a.text == "symmetric") t.attr_symmetric = true;
      else if (a.text == "antisymmetric") t.attr_totally_antisymmetric = true;
      else if (a.text == "jacobi") t.attr_jacobi = true;
      else if (a.text == "invertible") t.attr_invertible = true;
      else fail(Errc::SyntaxError, "unknown parameter attribute '" + a.text + "'", a.offset);
    }
    expect(Tok::LBrace, "parameter entry block");
    while (peek().kind != Tok::RBrace) {
      std::size_t at = peek().offset;
      std::vector<int> idx = parse_int_list_brackets(/*allow_empty=*/false);
      expect(Tok::Equals, "'=' after entry indices");
      Rational val = parse_rational_literal();
      try {
        t.set(idx, val);
      } catch (const Error& e) {
        rethrow_at(e, at);
      }
    }
    next();  // consume '}'
    t.finalize();
    model_.params.emplace(t.name, std::move(t));
  }

  int parse_parity_keyword() {
    const Token& p = expect(Tok::Ident, "parity ('even' or 'odd')");
    if (p.text == "even") return 0;
    if (p.text == "odd") return 1;
    fail(Errc::SyntaxError, "expected 'even' or 'odd', found '" + p.text + "'", p.offset);
  }

  void parse_family(Kind kind) {
    const Token& namet = expect(Tok::Ident, "family name");
    GeneratorFamily f;
    f.name = namet.text;
    f.kind = kind;
    if (model_.family(f.name))
      fail(Errc::GradingInconsistency, "family '" + f.name + "' declared twice", namet.offset);
    f.shape = parse_int_list_brackets(/*allow_empty=*/true);

    bool parity_odd = false, have_parity = false;
    int stage = 0;
    std::string partner;
    std::size_t partner_offset = namet.offset;
    while (peek().kind == Tok::Ident) {
      const std::string& kw = peek().text;
      if (kw != "even" && kw != "odd" && kw != "symmetric" && kw != "stage" && kw != "for")
        break;  // start of the next statement
      const Token& a = next();
      if (a.text == "even" || a.text == "odd") {
        parity_odd = a.text == "odd";
        have_parity = true;
      } else if (a.text == "symmetric") {
        f.symmetric = true;
      } else if (a.text == "stage") {
        stage = static_cast<int>(expect(Tok::Int, "stage number").value);
      } else {
        partner_offset = peek().offset;
        partner = expect(Tok::Ident, "partner family name").text;
      }
    }

    if (kind == Kind::Field || kind == Kind::Ghost) {
      if (!have_parity)
        fail(Errc::SyntaxError, "family '" + f.name + "' needs 'even' or 'odd'", namet.offset);
      if (kind == Kind::Field) {
        f.base = field_grading(parity_odd);
      } else {
        f.base = ghost_grading(parity_odd, stage);
        f.stage = stage;
      }
    } else {
      if (partner.empty())
        fail(Errc::SyntaxError, "antifield family '" + f.name + "' needs 'for <partner>'",
             namet.offset);
      const GeneratorFamily* pf = model_.family(partner);
      if (!pf)
        fail(Errc::UnknownIdentifier, "unknown partner family '" + partner + "'", partner_offset);
      Kind want = kind == Kind::Antifield ? Kind::Field : Kind::Ghost;
      if (pf->kind != want)
        fail(Errc::GradingInconsistency,
             "'" + f.name + "' pairs with a " + (want == Kind::Field ? "field" : "ghost") +
                 " family, but '" + partner + "' is not one",
             partner_offset);
      if (pf->shape != f.shape)
        fail(Errc::IndexArityMismatch,
             "antifield shape must match partner '" + partner + "'", partner_offset);
      f.base = antifield_grading(pf->base);
      f.partner = partner;
      f.symmetric = pf->symmetric;
      f.stage = pf->stage;
    }
    model_.families.push_back(std::move(f));
  }

  void parse_ni() {
    NoetherFamily ni;
    ni.name = expect(Tok::Str, "identity family name").text;
    const Token& gkw = expect(Tok::Ident, "'ghost'");
    if (gkw.text != "ghost") fail(Errc::SyntaxError, "expected 'ghost'", gkw.offset);
    const Token& gname = expect(Tok::Ident, "ghost family name");
    const GeneratorFamily* gf = model_.family(gname.text);
    if (!gf) fail(Errc::UnknownIdentifier, "unknown family '" + gname.text + "'", gname.offset);
    if (gf->kind != Kind::Ghost)
      fail(Errc::GradingInconsistency, "'" + gname.text + "' is not a ghost family", gname.offset);
    ni.ghost_family = gname.text;
    ni.delta.resize(static_cast<std::size_t>(gf->size()));
    expect(Tok::LBrace, "identity block");
    while (peek().kind != Tok::RBrace) {
      const Token& d = expect(Tok::Ident, "'delta' row");
      if (d.text != "delta") fail(Errc::SyntaxError, "expected 'delta'", d.offset);
      std::vector<int> gidx = parse_int_list_brackets(/*allow_empty=*/true);
      int slot = 0;
      try {
        slot = gf->slot_of(gidx);
      } catch (const Error& e) {
        rethrow_at(e, d.offset);
      }
      SymRef key = parse_sym_ref();
      auto [gen, jet] = resolve_delta_key(key);
      expect(Tok::Equals, "'=' after identity key");
      GradedPoly value = eval_block_expr(parse_expr());
      auto& row = ni.delta[static_cast<std::size_t>(slot)];
      auto [it, inserted] = row.try_emplace({gen, jet}, value);
      if (!inserted) it->second += value;
    }
    next();  // consume '}'
    model_.noether.push_back(std::move(ni));
  }

  std::map<VariableId, GradedPoly> parse_component_rows() {
    expect(Tok::LBrace, "component block");
    std::map<VariableId, GradedPoly> comps;
    while (peek().kind != Tok::RBrace) {
      SymRef key = parse_sym_ref();
      auto [gen, jet] = resolve_delta_key(key);
      if (!jet.empty())
        fail(Errc::GradingInconsistency, "component keys must be base generators (no jet suffix)",
             key.offset);
      expect(Tok::Equals, "'=' after component key");
      GradedPoly value = eval_block_expr(parse_expr());
      auto [it, inserted] = comps.try_emplace(gen, value);
      if (!inserted) it->second += value;
    }
    next();  // consume '}'
    return comps;
  }

  GradedPoly parse_braced_expr() {
    expect(Tok::LBrace, "expression block");
    GradedPoly p = eval_block_expr(parse_expr());
    expect(Tok::RBrace, "end of expression block");
    return p;
  }

  // Resolves a concrete (letter-free) reference to a base generator plus the
  // jet multi-index spelled in its suffix.
  std::pair<VariableId, MultiIndex> resolve_delta_key(const SymRef& ref) {
    if (ref.is_placeholder || ref.name == "x")
      fail(Errc::GradingInconsistency, "keys must name a declared generator family", ref.offset);
    const GeneratorFamily* f = model_.family(ref.name);
    if (!f) fail(Errc::UnknownIdentifier, "unknown family '" + ref.name + "'", ref.offset);
    std::vector<int> idx;
    for (const IdxEntry& e : ref.indices) {
      if (e.is_letter)
        fail(Errc::IndexArityMismatch, "letter indices are not allowed in keys", e.offset);
      idx.push_back(e.value);
    }
    MultiIndex jet;
    for (const IdxEntry& e : ref.jets) {
      if (e.is_letter)
        fail(Errc::IndexArityMismatch, "letter indices are not allowed in keys", e.offset);
      check_axis(e);
      jet = jet.plus(e.value);
    }
    VariableId gen;
    try {
      gen = model_.var(ref.name, idx);
    } catch (const Error& e) {
      rethrow_at(e, ref.offset);
    }
    return {gen, jet};
  }

  void check_axis(const IdxEntry& e) const {
    if (e.value < 0 || e.value >= model_.ctx.dim)
      throw Error(Errc::IndexArityMismatch,
                  "axis " + std::to_string(e.value) + " out of range for dimension " +
                      std::to_string(model_.ctx.dim) + locate(text_, e.offset),
                  e.offset);
  }

  // --- expression parsing --------------------------------------------------

  IdxEntry parse_idx_entry() {
    const Token& t = peek();
    IdxEntry e;
    e.offset = t.offset;
    if (t.kind == Tok::Int) {
      next();
      e.value = static_cast<int>(t.value);
    } else if (t.kind == Tok::Ident) {
      next();
      e.is_letter = true;
      e.letter = t.text;
    } else {
      fail(Errc::SyntaxError, "expected an index (integer or letter)", t.offset);
    }
    return e;
  }

  // name[i,j;mu,nu] — or E[family;i,j;mu,nu] — or a bare scalar name.
  SymRef parse_sym_ref() {
    const Token& namet = expect(Tok::Ident, "symbol name");
    SymRef ref;
    ref.name = namet.text;
    ref.offset = namet.offset;
    if (peek().kind != Tok::LBracket) return ref;
    next();  // consume '['
    if (ref.name == "E") {
      ref.is_placeholder = true;
      const Token& fam = expect(Tok::Ident, "placeholder family name");
      ref.name = fam.text;
      if (accept(Tok::RBracket)) return ref;
      expect(Tok::Semi, "';' after placeholder family name");
    }
    bool in_jets = false;
    while (peek().kind != Tok::RBracket) {
      if (accept(Tok::Semi)) {
        if (in_jets)
          fail(Errc::SyntaxError, "only one ';' jet separator is allowed", peek().offset);
        in_jets = true;
        continue;
      }
      IdxEntry e = parse_idx_entry();
      (in_jets ? ref.jets : ref.indices).push_back(e);
      if (peek().kind != Tok::RBracket && peek().kind != Tok::Semi)
        expect(Tok::Comma, "',' between indices");
    }
    next();  // consume ']'
    return ref;
  }

  ExprT parse_expr() {
    ExprT e;
    int sign = accept(Tok::Minus) ? -1 : 1;
    e.terms.emplace_back(sign, parse_term());
    while (true) {
      if (accept(Tok::Plus)) {
        e.terms.emplace_back(1, parse_term());
      } else if (accept(Tok::Minus)) {
        e.terms.emplace_back(-1, parse_term());
      } else {
        break;
      }
    }
    return e;
  }

  TermT parse_term() {
    TermT t;
    t.factors.push_back(parse_factor());
    while (accept(Tok::Star)) t.factors.push_back(parse_factor());
    return t;
  }

  FactorT parse_factor() {
    FactorT f;
    const Token& t = peek();
    f.offset = t.offset;
    if (t.kind == Tok::Int) {
      next();
      f.k = FactorT::Num;
      f.num = Rational(t.value);
    } else if (t.kind == Tok::LParen) {
      next();
      f.k = FactorT::Sub;
      f.sub = std::make_unique<ExprT>(parse_expr());
      expect(Tok::RParen, "')'");
    } else if (t.kind == Tok::Ident && t.text == "d" && peek(1).kind == Tok::LBracket) {
      next();
      next();  // consume 'd' '['
      f.k = FactorT::Deriv;
      f.deriv_axis = parse_idx_entry();
      expect(Tok::RBracket, "']' after derivative axis");
      expect(Tok::LParen, "'(' before derivative argument");
      f.sub = std::make_unique<ExprT>(parse_expr());
      expect(Tok::RParen, "')' after derivative argument");
    } else if (t.kind == Tok::Ident) {
      f.k = FactorT::Ref;
      f.ref = parse_sym_ref();
    } else {
      fail(Errc::SyntaxError,
           "expected a factor (number, symbol, 'd[axis](...)', or parenthesized expression)",
           t.offset);
    }
    while (true) {
      if (accept(Tok::Caret)) {
        const Token& e = expect(Tok::Int, "exponent");
        if (e.value < 1) fail(Errc::SyntaxError, "exponent must be >= 1", e.offset);
        f.exp = static_cast<int>(f.exp * e.value);
      } else if (peek().kind == Tok::Slash) {
        next();
        const Token& dv = expect(Tok::Int, "divisor");
        if (dv.value == 0) fail(Errc::SyntaxError, "division by zero", dv.offset);
        f.divisor *= Rational(dv.value);
      } else {
        break;
      }
    }
    return f;
  }

  // --- elaboration ---------------------------------------------------------

  struct LetterInfo {
    int count = 0;
    int range = -1;
    std::size_t offset = 0;
  };

  using Env = std::map<std::string, int>;

  void note_letter(std::map<std::string, LetterInfo>& letters, const IdxEntry& e,
                   int range) const {
    if (!e.is_letter) return;
    auto& info = letters[e.letter];
    ++info.count;
    if (info.count == 1) {
      info.range = range;
      info.offset = e.offset;
    } else if (info.range != range) {
      throw Error(Errc::IndexArityMismatch,
                  "index '" + e.letter + "' ranges over " + std::to_string(info.range) + " and " +
                      std::to_string(range) + " in the same term" + locate(text_, e.offset),
                  e.offset);
    }
  }

  // The ranges a reference imposes on each of its index positions.
  void collect_ref_letters(const SymRef& ref, std::map<std::string, LetterInfo>& letters) const {
    std::vector<int> ranges;
    if (ref.is_placeholder) {
      const GeneratorFamily* f = model_.placeholder_of(ref.name);
      if (!f)
        throw Error(Errc::UnknownIdentifier,
                    "no placeholder for field family '" + ref.name + "'" +
                        locate(text_, ref.offset),
                    ref.offset);
      ranges = f->shape;
    } else if (ref.name == "x") {
      ranges = {model_.ctx.dim};
    } else if (const GeneratorFamily* f = model_.family(ref.name);
               f && f->shape.size() == ref.indices.size()) {
      ranges = f->shape;
    } else if (auto it = model_.params.find(ref.name);
               it != model_.params.end() && it->second.shape.size() == ref.indices.size()) {
      ranges = it->second.shape;
    } else if (model_.family(ref.name) || model_.params.count(ref.name)) {
      throw Error(Errc::IndexArityMismatch,
                  "'" + ref.name + "' used with " + std::to_string(ref.indices.size()) +
                      " indices, which matches no declaration" + locate(text_, ref.offset),
                  ref.offset);
    } else {
      throw Error(Errc::UnknownIdentifier,
                  "unknown symbol '" + ref.name + "'" + locate(text_, ref.offset), ref.offset);
    }
    if (ref.indices.size() != ranges.size())
      throw Error(Errc::IndexArityMismatch,
                  "'" + ref.name + "' takes " + std::to_string(ranges.size()) +
                      " indices, got " + std::to_string(ref.indices.size()) +
                      locate(text_, ref.offset),
                  ref.offset);
    for (std::size_t i = 0; i < ref.indices.size(); ++i)
      note_letter(letters, ref.indices[i], ranges[i]);
    for (const IdxEntry& e : ref.jets) note_letter(letters, e, model_.ctx.dim);
  }

  void collect_term_letters(const TermT& t, std::map<std::string, LetterInfo>& letters) const {
    for (const FactorT& f : t.factors) {
      switch (f.k) {
        case FactorT::Num: break;
        case FactorT::Ref: collect_ref_letters(f.ref, letters); break;
        case FactorT::Deriv:
          note_letter(letters, f.deriv_axis, model_.ctx.dim);
          [[fallthrough]];
        case FactorT::Sub:
          for (const auto& [sign, term] : f.sub->terms) collect_term_letters(term, letters);
          break;
      }
    }
  }

  int resolve_idx(const IdxEntry& e, const Env& env) const {
    if (!e.is_letter) return e.value;
    auto it = env.find(e.letter);
    if (it == env.end())
      throw Error(Errc::IndexArityMismatch,
                  "index '" + e.letter + "' appears only once in its term (free indices are not "
                  "allowed)" +
                      locate(text_, e.offset),
                  e.offset);
    return it->second;
  }

  GradedPoly eval_ref(const SymRef& ref, const Env& env) const {
    std::vector<int> idx;
    for (const IdxEntry& e : ref.indices) idx.push_back(resolve_idx(e, env));
    if (ref.is_placeholder) {
      const GeneratorFamily* f = model_.placeholder_of(ref.name);
      if (!f)
        throw Error(Errc::UnknownIdentifier,
                    "no placeholder for field family '" + ref.name + "'" +
                        locate(text_, ref.offset),
                    ref.offset);
      MultiIndex jet = resolve_jets(ref, env);
      try {
        return GradedPoly::variable(f->var(idx, jet));
      } catch (const Error& e) {
        rethrow_at(e, ref.offset);
      }
    }
    if (ref.name == "x") {
      if (idx.size() != 1 || !ref.jets.empty())
        throw Error(Errc::IndexArityMismatch,
                    "base coordinates are written x[axis]" + locate(text_, ref.offset),
                    ref.offset);
      IdxEntry resolved{false, idx[0], "", ref.indices[0].offset};
      check_axis(resolved);
      return GradedPoly::variable(base_coordinate(idx[0]));
    }
    if (const GeneratorFamily* f = model_.family(ref.name);
        f && f->shape.size() == ref.indices.size()) {
      MultiIndex jet = resolve_jets(ref, env);
      try {
        return GradedPoly::variable(f->var(idx, jet));
      } catch (const Error& e) {
        rethrow_at(e, ref.offset);
      }
    }
    if (auto it = model_.params.find(ref.name);
        it != model_.params.end() && it->second.shape.size() == ref.indices.size()) {
      if (!ref.jets.empty())
        throw Error(Errc::IndexArityMismatch,
                    "parameter '" + ref.name + "' carries no jet indices" +
                        locate(text_, ref.offset),
                    ref.offset);
      try {
        return GradedPoly::constant(it->second.at(idx));
      } catch (const Error& e) {
        rethrow_at(e, ref.offset);
      }
    }
    // collect_ref_letters already classified the failure; reproduce it.
    std::map<std::string, LetterInfo> scratch;
    collect_ref_letters(ref, scratch);
    throw Error(Errc::UnknownIdentifier,
                "unknown symbol '" + ref.name + "'" + locate(text_, ref.offset), ref.offset);
  }

  MultiIndex resolve_jets(const SymRef& ref, const Env& env) const {
    MultiIndex jet;
    for (const IdxEntry& e : ref.jets) {
      IdxEntry resolved{false, resolve_idx(e, env), "", e.offset};
      check_axis(resolved);
      jet = jet.plus(resolved.value);
    }
    return jet;
  }

  GradedPoly eval_factor(const FactorT& f, const Env& env) const {
    GradedPoly base;
    switch (f.k) {
      case FactorT::Num: base = GradedPoly::constant(f.num); break;
      case FactorT::Ref: base = eval_ref(f.ref, env); break;
      case FactorT::Sub: base = eval_expr(*f.sub, env); break;
      case FactorT::Deriv: {
        GradedPoly arg = eval_expr(*f.sub, env);
        int axis = resolve_idx(f.deriv_axis, env);
        IdxEntry resolved{false, axis, "", f.deriv_axis.offset};
        check_axis(resolved);
        base = total_derivative(arg, axis, model_.ctx);
        break;
      }
    }
    GradedPoly out = GradedPoly::constant(1);
    for (int i = 0; i < f.exp; ++i) out = out * base;
    if (f.divisor != 1) out = out * Rational(Rational(1) / f.divisor);
    return out;
  }

  GradedPoly eval_term(const TermT& t, const Env& env) const {
    GradedPoly out = GradedPoly::constant(1);
    for (const FactorT& f : t.factors) out = out * eval_factor(f, env);
    return out;
  }

  GradedPoly eval_expr(const ExprT& e, const Env& env) const {
    GradedPoly out;
    for (const auto& [sign, term] : e.terms) {
      GradedPoly v = eval_term(term, env);
      if (sign < 0)
        out -= v;
      else
        out += v;
    }
    return out;
  }

  // Block-level evaluation: bind every repeated letter of each top-level
  // term and sum over its declared range.
  GradedPoly eval_block_expr(const ExprT& e) const {
    GradedPoly out;
    for (const auto& [sign, term] : e.terms) {
      std::map<std::string, LetterInfo> letters;
      collect_term_letters(term, letters);
      std::vector<std::pair<std::string, LetterInfo>> bound;
      for (const auto& [name, info] : letters) {
        if (info.count < 2)
          throw Error(Errc::IndexArityMismatch,
                      "index '" + name + "' appears only once in its term (free indices are not "
                      "allowed)" +
                          locate(text_, info.offset),
                      info.offset);
        bound.emplace_back(name, info);
      }
      GradedPoly sum;
      Env env;
      sum_over(bound, 0, env, term, sum);
      if (sign < 0)
        out -= sum;
      else
        out += sum;
    }
    return out;
  }

  void sum_over(const std::vector<std::pair<std::string, LetterInfo>>& bound, std::size_t k,
                Env& env, const TermT& term, GradedPoly& acc) const {
    if (k == bound.size()) {
      acc += eval_term(term, env);
      return;
    }
    for (int v = 0; v < bound[k].second.range; ++v) {
      env[bound[k].first] = v;
      sum_over(bound, k + 1, env, term, acc);
    }
    env.erase(bound[k].first);
  }
};

}  // namespace

TheoryModel parse_theory(const std::string& text) { return Parser(text).parse_document(); }

GradedPoly parse_expression(const std::string& text, const TheoryModel& m) {
  return Parser(text).parse_single_expression(m);
}

}  // namespace jetvar
