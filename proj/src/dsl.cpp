#include "vxa/dsl.hpp"

#include <json.hpp>

#include <cctype>
#include <functional>
#include <random>
#include <sstream>

#include "vxa/cdr.hpp"
#include "vxa/coord.hpp"
#include "vxa/liecocycle.hpp"
#include "vxa/sheaf.hpp"

namespace vxa {
namespace dsl {

using nlohmann::json;

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << (severity == Severity::kError ? "error" : "warning") << " at " << span.line
     << ":" << span.col << ": " << message;
  return os.str();
}

namespace {

struct Token {
  enum class Kind { kIdent, kInt, kString, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  long value = 0;
  char punct = 0;
  Span span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> lex(std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      Span sp{line_, col_, 1};
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string id;
        while (pos_ < src_.size() &&
               (std::isalpha(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '-')) {
          // hyphenated keywords like check-opes; stop a hyphen before digits
          if (src_[pos_] == '-' &&
              (pos_ + 1 >= src_.size() ||
               !std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))))
            break;
          id += src_[pos_];
          advance();
        }
        sp.length = static_cast<int>(id.size());
        out.push_back(Token{Token::Kind::kIdent, id, 0, 0, sp});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        long v = 0;
        int len = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          v = v * 10 + (src_[pos_] - '0');
          advance();
          ++len;
        }
        sp.length = len;
        out.push_back(Token{Token::Kind::kInt, "", v, 0, sp});
        continue;
      }
      if (c == '"') {
        advance();
        std::string s;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          s += src_[pos_];
          advance();
        }
        if (pos_ >= src_.size()) {
          diags.push_back({Diagnostic::Severity::kError, "unterminated string", sp});
        } else {
          advance();
        }
        sp.length = static_cast<int>(s.size()) + 2;
        out.push_back(Token{Token::Kind::kString, s, 0, 0, sp});
        continue;
      }
      out.push_back(Token{Token::Kind::kPunct, std::string(1, c), 0, c, sp});
      advance();
    }
    out.push_back(Token{Token::Kind::kEnd, "", 0, 0, Span{line_, col_, 1}});
    return out;
  }

 private:
  void advance() {
    ++pos_;
    ++col_;
  }
  const std::string& src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::string& src)
      : toks_(std::move(toks)), src_(src) {}

  ParseResult parse_script() {
    ParseResult res;
    Script script;
    while (!at_end()) {
      size_t before = i_;
      auto st = parse_statement();
      if (st) script.statements.push_back(std::move(*st));
      if (!diags_.empty()) break;
      if (i_ == before) {
        error("unexpected input", cur().span);
        break;
      }
    }
    res.diagnostics = diags_;
    if (diags_.empty()) res.script = std::move(script);
    return res;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == Token::Kind::kEnd; }
  void error(const std::string& msg, Span sp) {
    diags_.push_back({Diagnostic::Severity::kError, msg, sp});
  }
  bool accept_punct(char c) {
    if (cur().kind == Token::Kind::kPunct && cur().punct == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool expect_punct(char c) {
    if (accept_punct(c)) return true;
    error(std::string("expected '") + c + "'", cur().span);
    return false;
  }
  bool accept_ident(const std::string& s) {
    if (cur().kind == Token::Kind::kIdent && cur().text == s) {
      ++i_;
      return true;
    }
    return false;
  }
  std::optional<long> expect_int() {
    bool neg = accept_punct('-');
    if (cur().kind != Token::Kind::kInt) {
      error("expected an integer", cur().span);
      return std::nullopt;
    }
    long v = cur().value;
    ++i_;
    return neg ? -v : v;
  }

  // captures raw source text of a ref: a bound name, a single generator
  // letter, or a parenthesized expression
  std::optional<std::string> parse_ref() {
    if (cur().kind == Token::Kind::kPunct && cur().punct == '(') {
      size_t start = i_;
      int depth = 0;
      std::string text;
      do {
        if (cur().kind == Token::Kind::kEnd) {
          error("unbalanced parentheses in reference", toks_[start].span);
          return std::nullopt;
        }
        if (cur().kind == Token::Kind::kPunct && cur().punct == '(') ++depth;
        if (cur().kind == Token::Kind::kPunct && cur().punct == ')') --depth;
        text += token_text(cur());
        text += " ";
        ++i_;
      } while (depth > 0);
      return text;
    }
    if (cur().kind != Token::Kind::kIdent) {
      error("expected a state reference", cur().span);
      return std::nullopt;
    }
    std::string fam = cur().text;
    bool is_letter = (fam == "a" || fam == "b" || fam == "phi" || fam == "psi") &&
                     peek().kind == Token::Kind::kInt;
    if (!is_letter) {
      std::string name = cur().text;
      ++i_;
      return name;
    }
    // letter: fam INT _ { [-] INT }
    std::string text = fam;
    ++i_;
    text += std::to_string(cur().value);
    ++i_;
    if (!expect_punct('_')) return std::nullopt;
    text += "_";
    if (!expect_punct('{')) return std::nullopt;
    text += "{";
    auto v = expect_int();
    if (!v) return std::nullopt;
    text += std::to_string(*v);
    if (!expect_punct('}')) return std::nullopt;
    text += "}";
    return text;
  }

  static std::string token_text(const Token& t) {
    switch (t.kind) {
      case Token::Kind::kIdent: return t.text;
      case Token::Kind::kInt: return std::to_string(t.value);
      case Token::Kind::kString: return "\"" + t.text + "\"";
      case Token::Kind::kPunct: return std::string(1, t.punct);
      case Token::Kind::kEnd: return "";
    }
    return "";
  }

  std::optional<Statement> parse_statement() {
    if (cur().kind != Token::Kind::kIdent) {
      error("expected a statement keyword", cur().span);
      return std::nullopt;
    }
    Statement st;
    st.span = cur().span;
    const std::string kw = cur().text;
    if (kw == "system") {
      ++i_;
      st.kind = Statement::Kind::kSystem;
      if (cur().kind != Token::Kind::kIdent ||
          (cur().text != "heis" && cur().text != "cliff" && cur().text != "omega")) {
        error("expected heis, cliff or omega", cur().span);
        return std::nullopt;
      }
      st.word = cur().text;
      ++i_;
      if (!accept_ident("N")) {
        error("expected N", cur().span);
        return std::nullopt;
      }
      if (!expect_punct('=')) return std::nullopt;
      auto n = expect_int();
      if (!n) return std::nullopt;
      st.ints.push_back(*n);
      if (accept_ident("ring")) {
        if (cur().kind != Token::Kind::kIdent) {
          error("expected poly, rat or series", cur().span);
          return std::nullopt;
        }
        st.name = cur().text;
        ++i_;
        if (st.name == "series") {
          if (!expect_punct('(')) return std::nullopt;
          auto d = expect_int();
          if (!d) return std::nullopt;
          st.ints.push_back(*d);
          if (!expect_punct(')')) return std::nullopt;
        }
      } else {
        st.name = "poly";
      }
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "let") {
      ++i_;
      st.kind = Statement::Kind::kLet;
      if (cur().kind != Token::Kind::kIdent) {
        error("expected a name after let", cur().span);
        return std::nullopt;
      }
      st.name = cur().text;
      ++i_;
      if (!expect_punct('=')) return std::nullopt;
      std::string text;
      int depth = 0;
      while (!(cur().kind == Token::Kind::kPunct && cur().punct == ';' && depth == 0)) {
        if (cur().kind == Token::Kind::kEnd) {
          error("missing ';' after let", st.span);
          return std::nullopt;
        }
        if (cur().kind == Token::Kind::kPunct && cur().punct == '(') ++depth;
        if (cur().kind == Token::Kind::kPunct && cur().punct == ')') --depth;
        text += token_text(cur());
        text += " ";
        ++i_;
      }
      ++i_;  // ';'
      if (text.empty()) {
        error("empty state expression", st.span);
        return std::nullopt;
      }
      st.refs.push_back(text);
      return st;
    }
    if (kw == "ope" || kw == "nproduct") {
      ++i_;
      st.kind = kw == "ope" ? Statement::Kind::kOpe : Statement::Kind::kNProduct;
      auto r1 = parse_ref();
      if (!r1) return std::nullopt;
      if (st.kind == Statement::Kind::kNProduct) {
        auto n = expect_int();
        if (!n) return std::nullopt;
        st.ints.push_back(*n);
      }
      auto r2 = parse_ref();
      if (!r2) return std::nullopt;
      st.refs = {*r1, *r2};
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "check") {
      ++i_;
      st.kind = Statement::Kind::kCheck;
      if (cur().kind != Token::Kind::kIdent ||
          (cur().text != "virasoro" && cur().text != "topological" &&
           cur().text != "borcherds")) {
        error("expected virasoro, topological or borcherds", cur().span);
        return std::nullopt;
      }
      st.word = cur().text;
      ++i_;
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "cohomology" || kw == "character") {
      ++i_;
      st.kind = kw == "cohomology" ? Statement::Kind::kCohomology
                                   : Statement::Kind::kCharacter;
      if (!accept_ident("wmax")) {
        error("expected wmax", cur().span);
        return std::nullopt;
      }
      if (!expect_punct('=')) return std::nullopt;
      auto w = expect_int();
      if (!w) return std::nullopt;
      st.ints.push_back(*w);
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "transform") {
      ++i_;
      st.kind = Statement::Kind::kTransform;
      if (!accept_ident("map")) {
        error("expected map", cur().span);
        return std::nullopt;
      }
      if (cur().kind != Token::Kind::kString) {
        error("expected a quoted map string", cur().span);
        return std::nullopt;
      }
      st.name = cur().text;
      ++i_;
      if (!accept_ident("order")) {
        error("expected order", cur().span);
        return std::nullopt;
      }
      auto d = expect_int();
      if (!d) return std::nullopt;
      st.ints.push_back(*d);
      if (cur().kind != Token::Kind::kIdent) {
        error("expected check-opes, apply or structure", cur().span);
        return std::nullopt;
      }
      st.word = cur().text;
      ++i_;
      if (st.word == "apply") {
        auto r = parse_ref();
        if (!r) return std::nullopt;
        st.refs.push_back(*r);
      } else if (st.word != "check-opes" && st.word != "structure") {
        error("expected check-opes, apply or structure", st.span);
        return std::nullopt;
      }
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "p" && peek().kind == Token::Kind::kInt && peek().value == 1) {
      i_ += 2;
      st.kind = Statement::Kind::kP1;
      if (cur().kind != Token::Kind::kIdent) {
        error("expected glue, wakimoto, sections, euler or reflect", cur().span);
        return std::nullopt;
      }
      st.word = cur().text;
      ++i_;
      if (st.word == "sections" || st.word == "euler") {
        auto w = expect_int();
        if (!w) return std::nullopt;
        st.ints.push_back(*w);
      } else if (st.word == "reflect") {
        auto r = parse_ref();
        if (!r) return std::nullopt;
        st.refs.push_back(*r);
      } else if (st.word != "glue" && st.word != "wakimoto") {
        error("unknown p1 subcommand", st.span);
        return std::nullopt;
      }
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    if (kw == "cocycle") {
      ++i_;
      st.kind = Statement::Kind::kCocycle;
      if (cur().kind != Token::Kind::kIdent) {
        error("expected check-identities, compare-69 or eval", cur().span);
        return std::nullopt;
      }
      st.word = cur().text;
      ++i_;
      if (st.word == "eval") {
        if (cur().kind != Token::Kind::kIdent) {
          error("expected a cocycle kind (c, c2, c3, c2p, c3p)", cur().span);
          return std::nullopt;
        }
        st.name = cur().text;
        ++i_;
        while (cur().kind == Token::Kind::kString) {
          st.strings.push_back(cur().text);
          ++i_;
        }
      } else if (st.word == "compare") {
        // the lexer splits "compare-69" into ident, '-', int
        if (accept_punct('-') && cur().kind == Token::Kind::kInt &&
            cur().value == 69) {
          ++i_;
          st.word = "compare-69";
        } else {
          error("expected compare-69", cur().span);
          return std::nullopt;
        }
      } else if (st.word != "check-identities") {
        error("unknown cocycle subcommand", st.span);
        return std::nullopt;
      }
      if (!expect_punct(';')) return std::nullopt;
      return st;
    }
    error("unknown statement '" + kw + "'", cur().span);
    return std::nullopt;
  }

  std::vector<Token> toks_;
  const std::string& src_;
  size_t i_ = 0;
  std::vector<Diagnostic> diags_;
};

// ---- expression parsing against a concrete system ----

class ExprParser {
 public:
  ExprParser(const System& sys, const std::string& src) : sys_(sys), src_(src) {
    std::vector<Diagnostic> diags;
    toks_ = Lexer(src).lex(diags);
    if (!diags.empty()) throw Error(ErrorCode::kDomainError, diags[0].str());
  }

  State parse_state() {
    State acc = State::zero(sys_);
    bool neg = accept('-');
    acc += parse_term(neg);
    while (true) {
      if (accept('+')) {
        acc += parse_term(false);
      } else if (accept('-')) {
        acc += parse_term(true);
      } else {
        break;
      }
    }
    if (!at_end()) throw Error(ErrorCode::kDomainError, "trailing input in state expression");
    return acc;
  }

  FunctionElem parse_coeff_top() {
    FunctionElem f = parse_expr();
    if (!at_end()) throw Error(ErrorCode::kDomainError, "trailing input in expression");
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& peek(size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return cur().kind == Token::Kind::kEnd; }
  bool accept(char c) {
    if (cur().kind == Token::Kind::kPunct && cur().punct == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw Error(ErrorCode::kDomainError, std::string("expected '") + c + "'");
  }

  bool at_letter() const {
    return cur().kind == Token::Kind::kIdent &&
           (cur().text == "a" || cur().text == "b" || cur().text == "phi" ||
            cur().text == "psi") &&
           peek().kind == Token::Kind::kInt;
  }
  bool at_vacuum() const {
    return cur().kind == Token::Kind::kPunct && cur().punct == '|';
  }

  ModeVar parse_letter() {
    Family f = Family::kA;
    if (cur().text == "a") f = Family::kA;
    else if (cur().text == "b") f = Family::kB;
    else if (cur().text == "phi") f = Family::kPhi;
    else if (cur().text == "psi") f = Family::kPsi;
    ++i_;
    int index = static_cast<int>(cur().value);
    ++i_;
    expect('_');
    expect('{');
    bool neg = accept('-');
    if (cur().kind != Token::Kind::kInt)
      throw Error(ErrorCode::kDomainError, "expected a mode integer");
    long mode = cur().value;
    ++i_;
    expect('}');
    return ModeVar{f, index, neg ? -mode : mode};
  }

  State parse_term(bool negate) {
    FunctionElem coeff = sys_.scalar(Rational(negate ? -1 : 1));
    std::vector<ModeVar> vars;
    bool saw_any = false;
    while (true) {
      if (at_letter()) {
        vars.push_back(parse_letter());
        saw_any = true;
        accept('*');
        continue;
      }
      if (at_vacuum()) {
        ++i_;  // '|'
        if (cur().kind != Token::Kind::kInt || cur().value != 0)
          throw Error(ErrorCode::kDomainError, "expected |0>");
        ++i_;
        expect('>');
        saw_any = true;
        break;
      }
      if (cur().kind == Token::Kind::kInt || cur().kind == Token::Kind::kIdent ||
          (cur().kind == Token::Kind::kPunct && cur().punct == '(')) {
        coeff = coeff * parse_power();
        saw_any = true;
        if (accept('*')) continue;
        if (accept('/')) {
          coeff = coeff * parse_power().inverse();
          while (accept('/')) coeff = coeff * parse_power().inverse();
          continue;
        }
        continue;
      }
      break;
    }
    if (!saw_any) throw Error(ErrorCode::kDomainError, "empty term");
    return State::term(sys_, coeff, std::move(vars));
  }

  // full coefficient expression (inside parentheses and map strings)
  FunctionElem parse_expr() {
    bool neg = accept('-');
    FunctionElem acc = parse_mult();
    if (neg) acc = -acc;
    while (true) {
      if (accept('+')) acc += parse_mult();
      else if (accept('-')) acc -= parse_mult();
      else break;
    }
    return acc;
  }

  FunctionElem parse_mult() {
    FunctionElem acc = parse_power();
    while (true) {
      if (accept('*')) acc *= parse_power();
      else if (accept('/')) acc = acc * parse_power().inverse();
      else break;
    }
    return acc;
  }

  FunctionElem parse_power() {
    FunctionElem base = parse_atom();
    if (accept('^')) {
      if (cur().kind != Token::Kind::kInt)
        throw Error(ErrorCode::kDomainError, "expected an exponent");
      long e = cur().value;
      ++i_;
      FunctionElem acc = sys_.scalar(Rational(1));
      for (long t = 0; t < e; ++t) acc *= base;
      return acc;
    }
    return base;
  }

  FunctionElem parse_atom() {
    if (cur().kind == Token::Kind::kInt) {
      Rational v(cur().value);
      ++i_;
      return sys_.scalar(v);
    }
    if (cur().kind == Token::Kind::kIdent &&
        (cur().text == "x" || cur().text == "b") &&
        peek().kind == Token::Kind::kInt) {
      int idx = static_cast<int>(peek().value);
      if (idx < 1 || idx > sys_.nvars)
        throw Error(ErrorCode::kDomainError, "coordinate index out of range");
      i_ += 2;
      return sys_.coordinate(idx - 1);
    }
    if (cur().kind == Token::Kind::kIdent && cur().text == "b" && sys_.nvars == 1) {
      ++i_;
      return sys_.coordinate(0);
    }
    if (accept('(')) {
      FunctionElem f = parse_expr();
      expect(')');
      return f;
    }
    throw Error(ErrorCode::kDomainError, "expected a coefficient atom");
  }

  const System& sys_;
  std::string src_;
  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

ParseResult parse(const std::string& source) {
  std::vector<Diagnostic> diags;
  auto toks = Lexer(source).lex(diags);
  if (!diags.empty()) {
    ParseResult r;
    r.diagnostics = diags;
    return r;
  }
  return Parser(std::move(toks), source).parse_script();
}

State parse_state_expr(const System& sys, const std::string& source) {
  return ExprParser(sys, source).parse_state();
}

FunctionElem parse_coeff_expr(const System& sys, const std::string& source) {
  return ExprParser(sys, source).parse_coeff_top();
}

namespace {

struct Runner {
  RunOptions opt;
  std::optional<System> sys;
  std::map<std::string, State> names;
  std::ostringstream text;
  json out = json::array();
  bool any_fail = false;

  const System& system(const Statement& st) {
    if (!sys)
      throw Error(ErrorCode::kDomainError, "no system declared before statement");
    return *sys;
  }

  State resolve(const Statement& st, const std::string& ref) {
    auto it = names.find(ref);
    if (it != names.end()) return it->second;
    // single identifiers that are not letters must be bound names
    bool looks_like_expr = ref.find('_') != std::string::npos ||
                           ref.find('(') != std::string::npos ||
                           ref.find('|') != std::string::npos ||
                           ref.find_first_of("0123456789") != std::string::npos;
    if (!looks_like_expr)
      throw Error(ErrorCode::kDomainError, "unbound name '" + ref + "'");
    return parse_state_expr(system(st), ref);
  }

  void emit_report(const std::string& cmd, const Report& rep, json extra = json::object()) {
    if (!rep.ok()) any_fail = true;
    text << rep.str();
    json j;
    j["command"] = cmd;
    j["ok"] = rep.ok();
    j["items"] = json::array();
    for (const auto& item : rep.items) {
      j["items"].push_back({{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
    }
    for (auto& [k, v] : extra.items()) j[k] = v;
    out.push_back(std::move(j));
  }

  void run_statement(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::kSystem: {
        System s;
        s.nvars = static_cast<int>(st.ints[0]);
        if (s.nvars < 1) throw Error(ErrorCode::kDomainError, "N must be positive");
        s.kind = st.word == "heis" ? SystemKind::kHeisenberg
                 : st.word == "cliff" ? SystemKind::kClifford
                                      : SystemKind::kOmega;
        if (st.name == "poly") s.coeff_mode = CoeffMode::kPoly;
        else if (st.name == "rat") s.coeff_mode = CoeffMode::kRational;
        else {
          s.coeff_mode = CoeffMode::kSeries;
          s.series_order = static_cast<int>(st.ints[1]);
        }
        sys = s;
        names.clear();
        text << "system " << st.word << " N=" << s.nvars << "\n";
        out.push_back({{"command", "system"}, {"kind", st.word}, {"N", s.nvars}});
        break;
      }
      case Statement::Kind::kLet: {
        State s = parse_state_expr(system(st), st.refs[0]);
        names[st.name] = s;
        text << st.name << " = " << s.str() << "\n";
        out.push_back({{"command", "let"}, {"name", st.name}, {"state", s.str()}});
        break;
      }
      case Statement::Kind::kOpe: {
        State a = resolve(st, st.refs[0]);
        State b = resolve(st, st.refs[1]);
        auto o = engine::ope(a, b);
        text << "ope = " << o.str() << "\n";
        json poles = json::array();
        for (const auto& [k, v] : o.poles)
          poles.push_back({{"order", k}, {"state", v.str()}});
        out.push_back({{"command", "ope"}, {"poles", poles}});
        break;
      }
      case Statement::Kind::kNProduct: {
        State a = resolve(st, st.refs[0]);
        State b = resolve(st, st.refs[1]);
        State r = engine::nth_product(a, st.ints[0], b);
        text << "a_(" << st.ints[0] << ")b = " << r.str() << "\n";
        out.push_back({{"command", "nproduct"}, {"n", st.ints[0]}, {"state", r.str()}});
        break;
      }
      case Statement::Kind::kCheck: {
        const System& s = system(st);
        if (st.word == "virasoro") {
          Rational c = s.kind == SystemKind::kHeisenberg ? Rational(2 * s.nvars)
                       : s.kind == SystemKind::kClifford ? Rational(-2 * s.nvars)
                                                         : Rational(0);
          Report rep = cdr::check_virasoro(cdr::build_structure(s).L, c);
          text << "central charge c = " << c.str() << "\n";
          emit_report("check virasoro", rep, {{"c", c.str()}});
        } else if (st.word == "topological") {
          if (s.kind != SystemKind::kOmega)
            throw Error(ErrorCode::kDomainError, "check topological needs omega");
          emit_report("check topological", cdr::check_topological(cdr::build_structure(s)));
        } else {
          emit_report("check borcherds", borcherds_suite(s));
        }
        break;
      }
      case Statement::Kind::kCohomology: {
        const System& s = system(st);
        if (s.kind != SystemKind::kOmega || s.coeff_mode != CoeffMode::kPoly)
          throw Error(ErrorCode::kDomainError, "cohomology needs omega with ring poly");
        json rows = json::array();
        Report rep;
        rep.title = "cohomology of the chiral de Rham complex";
        for (long w = 0; w <= st.ints[0]; ++w) {
          auto res = cdr::cohomology(s, w, static_cast<int>(w) + opt.degree_window);
          for (const auto& [p, h] : res.h_by_charge) {
            rows.push_back({{"weight", w}, {"charge", p}, {"dim_H", h}});
            text << "H(w=" << w << ", p=" << p << ") = " << h << "\n";
          }
          bool expected = (w == 0) ? (res.h_by_charge.count(0) && res.h_by_charge.at(0) == 1 &&
                                      res.total_h() == 1)
                                   : res.total_h() == 0;
          rep.add("weight " + std::to_string(w), expected);
        }
        emit_report("cohomology", rep, {{"rows", rows}});
        break;
      }
      case Statement::Kind::kCharacter: {
        const System& s = system(st);
        auto tab = cdr::character(s, st.ints[0]);
        json rows = json::array();
        for (const auto& [key, n] : tab.ranks) {
          rows.push_back({{"weight", key.first}, {"charge", key.second}, {"rank", n}});
          text << "rank(w=" << key.first << ", p=" << key.second << ") = " << n << "\n";
        }
        json euler = json::array();
        for (const auto& [w, e] : tab.euler) {
          euler.push_back({{"weight", w}, {"euler", e}});
          text << "euler(w=" << w << ") = " << e << "\n";
        }
        out.push_back({{"command", "character"}, {"rows", rows}, {"euler", euler}});
        break;
      }
      case Statement::Kind::kTransform: run_transform(st); break;
      case Statement::Kind::kP1: run_p1(st); break;
      case Statement::Kind::kCocycle: run_cocycle(st); break;
    }
  }

  Report borcherds_suite(const System& s) {
    Report rep;
    rep.title = "engine soundness (seeded)";
    std::mt19937 rng(opt.seed);
    std::vector<State> pool;
    for (long w = 1; w <= 2; ++w) {
      auto mons = monomials_of_weight_with_phi0(s, w);
      for (size_t t = 0; t < mons.size(); t += (mons.size() / 3 + 1))
        pool.push_back(State::term(s, s.scalar(Rational(1)), mons[t].vars()));
    }
    std::vector<State> targets = {State::vacuum(s)};
    auto mons1 = monomials_of_weight_with_phi0(s, 1);
    for (const auto& m : mons1)
      targets.push_back(State::term(s, s.scalar(Rational(1)), m.vars()));
    bool comm_ok = true, trans_ok = true, deriv_ok = true;
    int checks = 0;
    for (const auto& a : pool) {
      for (const auto& b : pool) {
        int sgn = (a.parity() == 1 && b.parity() == 1) ? -1 : 1;
        long m = static_cast<long>(rng() % 5) - 2;
        long n = static_cast<long>(rng() % 5) - 2;
        for (const auto& target : targets) {
          ++checks;
          State lhs = engine::field_mode(a, m, engine::field_mode(b, n, target)) -
                      engine::field_mode(b, n, engine::field_mode(a, m, target)) *
                          Rational(sgn);
          State rhs = State::zero(s);
          for (long k = 0; k <= a.max_weight() + b.max_weight(); ++k) {
            State akb = engine::field_mode(a, k, b);
            if (akb.is_zero()) continue;
            Rational c(binomial(m, k), 1);
            if (!c.is_zero()) rhs += engine::field_mode(akb, m + n - k, target) * c;
          }
          if (lhs != rhs) comm_ok = false;
        }
        State da = engine::translate(a);
        for (long nn = -2; nn <= 2; ++nn) {
          if (engine::field_mode(da, nn, b) !=
              engine::field_mode(a, nn - 1, b) * Rational(-nn))
            trans_ok = false;
        }
        State d0 = engine::fourier_derivation(a)(b);
        State alt = engine::field_mode(a, 0, b);
        if (d0 != alt) deriv_ok = false;
      }
    }
    rep.add("Borcherds commutator formula on " + std::to_string(checks) + " samples",
            comm_ok);
    rep.add("translation identity", trans_ok);
    rep.add("fourier zero mode", deriv_ok);
    return rep;
  }

  void run_transform(const Statement& st) {
    const System& base = system(st);
    int order = static_cast<int>(st.ints[0]);
    System s{base.nvars, base.kind, CoeffMode::kSeries, order};
    // parse "b -> expr" or "b1 -> e1, b2 -> e2"
    std::vector<FunctionElem> g(static_cast<size_t>(s.nvars),
                                FunctionElem::series(Poly(s.nvars), order));
    std::vector<bool> seen(static_cast<size_t>(s.nvars), false);
    std::string str = st.name;
    size_t pos = 0;
    while (pos < str.size()) {
      size_t arrow = str.find("->", pos);
      if (arrow == std::string::npos)
        throw Error(ErrorCode::kDomainError, "map needs 'b -> expression'");
      std::string lhs = str.substr(pos, arrow - pos);
      size_t comma = str.find(',', arrow);
      std::string rhs = str.substr(arrow + 2, (comma == std::string::npos ? str.size() : comma) -
                                                  arrow - 2);
      // target index from "b" or "bK"
      int idx = 1;
      for (char c : lhs) {
        if (std::isdigit(static_cast<unsigned char>(c)))
          idx = c - '0';
      }
      if (idx < 1 || idx > s.nvars)
        throw Error(ErrorCode::kDomainError, "map component out of range");
      g[static_cast<size_t>(idx - 1)] = parse_coeff_expr(s, rhs);
      seen[static_cast<size_t>(idx - 1)] = true;
      pos = comma == std::string::npos ? str.size() : comma + 1;
    }
    for (int i = 0; i < s.nvars; ++i)
      if (!seen[static_cast<size_t>(i)])
        throw Error(ErrorCode::kDomainError,
                    "map misses component b" + std::to_string(i + 1));
    coord::CoordChange cc = coord::make_series_change(s, g, order);
    if (st.word == "check-opes") {
      Report rep = coord::verify_ope_preservation(cc, opt.max_weight);
      emit_report("transform check-opes", rep, {{"order", order}});
    } else if (st.word == "structure") {
      auto tr = coord::structure_transform(cc);
      emit_report("transform structure", tr.report,
                  {{"dJ", tr.dJ.str()}, {"dQ", tr.dQ.str()}});
    } else {
      State v = parse_state_expr(s, st.refs[0]);
      State r = coord::transform_state(cc, v);
      text << "transform = " << r.str() << "\n";
      out.push_back({{"command", "transform apply"}, {"state", r.str()}});
    }
  }

  void run_p1(const Statement& st) {
    if (st.word == "glue") {
      emit_report("p1 glue", sheaf::glue_check_p1(opt.max_weight));
    } else if (st.word == "wakimoto") {
      auto res = sheaf::wakimoto_check();
      emit_report("p1 wakimoto", res.report, {{"level", res.level.str()}});
    } else if (st.word == "sections") {
      auto res = sheaf::global_sections(st.ints[0], opt.degree_window);
      json rows = json::array();
      for (size_t w = 0; w < res.gamma_ranks.size(); ++w) {
        rows.push_back({{"weight", w}, {"rank", res.gamma_ranks[w]}, {"h1", res.h1_ranks[w]}});
        text << "weight " << w << ": rank " << res.gamma_ranks[w] << ", h1 "
             << res.h1_ranks[w] << "\n";
      }
      out.push_back({{"command", "p1 sections"}, {"rows", rows}});
    } else if (st.word == "euler") {
      auto res = sheaf::euler_character(st.ints[0]);
      emit_report("p1 euler", res.report, {{"coeffs", res.coeffs}});
    } else {
      System s = sheaf::p1_system();
      State v = parse_state_expr(s, st.refs[0]);
      State r = sheaf::reflect(v, std::max(12, opt.series_order));
      text << "r(1) = " << r.str() << "\n";
      out.push_back({{"command", "p1 reflect"}, {"state", r.str()}});
    }
  }

  static liecocycle::VectorField parse_vf(const System& s, const std::string& source) {
    // comma-separated component expressions
    std::vector<Poly> comp;
    size_t pos = 0;
    while (pos <= source.size()) {
      size_t comma = source.find(',', pos);
      std::string piece =
          source.substr(pos, (comma == std::string::npos ? source.size() : comma) - pos);
      FunctionElem f = parse_coeff_expr(s, piece);
      comp.push_back(f.num());
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(comp.size()) != s.nvars)
      throw Error(ErrorCode::kArityMismatch, "vector field needs N components");
    return liecocycle::VectorField{std::move(comp)};
  }

  std::vector<liecocycle::VectorField> documented_samples() {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1), zero(2), one(2, Rational(1));
    return {liecocycle::VectorField{{one, zero}}, liecocycle::VectorField{{zero, x}},
            liecocycle::VectorField{{y * y, zero}}, liecocycle::VectorField{{zero, x * x}},
            liecocycle::VectorField{{x * y, zero}}};
  }

  void run_cocycle(const Statement& st) {
    if (st.word == "check-identities") {
      emit_report("cocycle check-identities",
                  liecocycle::check_identities(documented_samples(), opt.seed, 20));
    } else if (st.word == "compare-69") {
      auto res = liecocycle::compare_69(documented_samples());
      emit_report("cocycle compare-69", res.report,
                  {{"lambda2", res.lambda2.str()},
                   {"lambda3", res.lambda3.str()},
                   {"lambda", res.lambda.str()}});
    } else if (st.word == "eval") {
      System s{2, SystemKind::kHeisenberg, CoeffMode::kPoly, -1};
      if (sys && sys->coeff_mode == CoeffMode::kPoly) s.nvars = sys->nvars;
      std::vector<liecocycle::VectorField> args;
      for (const auto& str : st.strings) args.push_back(parse_vf(s, str));
      auto need = [&](size_t n) {
        if (args.size() != n)
          throw Error(ErrorCode::kArityMismatch,
                      "cocycle " + st.name + " needs " + std::to_string(n) + " fields");
      };
      std::string result;
      if (st.name == "c") {
        need(2);
        auto r = liecocycle::c_class(args[0], args[1]);
        std::string parts;
        for (size_t i = 0; i < r.comp.size(); ++i)
          parts += (i ? " , " : "") + r.comp[i].str();
        result = "[" + parts + "]";
      } else if (st.name == "c2") {
        need(2);
        auto r = liecocycle::c2_eval(args[0], args[1]);
        std::string parts;
        for (size_t i = 0; i < r.comp.size(); ++i)
          parts += (i ? " , " : "") + r.comp[i].str();
        result = "[" + parts + "]";
      } else if (st.name == "c3") {
        need(3);
        result = liecocycle::c3_eval(args[0], args[1], args[2]).str();
      } else if (st.name == "c2p") {
        need(2);
        auto r = liecocycle::c2_prime(args[0], args[1]);
        std::string parts;
        for (size_t i = 0; i < r.comp.size(); ++i)
          parts += (i ? " , " : "") + r.comp[i].str();
        result = "[" + parts + "]";
      } else if (st.name == "c3p") {
        need(3);
        result = liecocycle::c3_prime(args[0], args[1], args[2]).str();
      } else {
        throw Error(ErrorCode::kDomainError, "unknown cocycle kind " + st.name);
      }
      text << "cocycle " << st.name << " = " << result << "\n";
      out.push_back({{"command", "cocycle eval"}, {"kind", st.name}, {"value", result}});
    } else {
      throw Error(ErrorCode::kDomainError, "unknown cocycle subcommand");
    }
  }
};

}  // namespace

RunResult run(const Script& script, const RunOptions& options) {
  Runner r;
  r.opt = options;
  RunResult res;
  for (const auto& st : script.statements) {
    try {
      r.run_statement(st);
    } catch (const Error& e) {
      Diagnostic d{Diagnostic::Severity::kError, e.what(), st.span};
      res.diagnostics.push_back(d);
      res.exit_code = e.is_resource_bound() ? 3 : 2;
      res.output = options.json ? r.out.dump(2) : r.text.str();
      return res;
    }
  }
  res.exit_code = r.any_fail ? 1 : 0;
  res.output = options.json ? r.out.dump(2) : r.text.str();
  return res;
}

RunResult run_source(const std::string& source, const RunOptions& options) {
  ParseResult pr = parse(source);
  if (!pr.ok()) {
    RunResult res;
    res.exit_code = 2;
    res.diagnostics = pr.diagnostics;
    return res;
  }
  return run(*pr.script, options);
}

}  // namespace dsl
}  // namespace vxa
