#include "fctl/parse.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace fctl {

namespace {

enum class Tok {
  Ident,
  KwFun,
  KwTfun,
  KwCallcc,
  KwShift,
  KwReset,
  KwThrow,
  KwForall,
  KwCont,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Colon,
  Dot,
  Arrow,
  At,
  CtxOpen,  // ^[
  Eof,
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& src, int line_offset) {
  std::vector<Token> out;
  int line = 1 + line_offset, col = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, line, col); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string text, std::size_t len) {
      out.push_back(Token{k, std::move(text), tl, tc});
      i += len;
      col += static_cast<int>(len);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word = src.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "fun") k = Tok::KwFun;
      else if (word == "tfun") k = Tok::KwTfun;
      else if (word == "callcc") k = Tok::KwCallcc;
      else if (word == "shift") k = Tok::KwShift;
      else if (word == "reset") k = Tok::KwReset;
      else if (word == "throw") k = Tok::KwThrow;
      else if (word == "forall") k = Tok::KwForall;
      else if (word == "cont") k = Tok::KwCont;
      push(k, word, word.size());
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      case '[': push(Tok::LBracket, "[", 1); continue;
      case ']': push(Tok::RBracket, "]", 1); continue;
      case '{': push(Tok::LBrace, "{", 1); continue;
      case '}': push(Tok::RBrace, "}", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case ';': push(Tok::Semi, ";", 1); continue;
      case ':': push(Tok::Colon, ":", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      case '@': push(Tok::At, "@", 1); continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(Tok::Arrow, "->", 2);
          continue;
        }
        if (i + 1 < src.size() && src[i + 1] == '-') {
          while (i < src.size() && src[i] != '\n') ++i;
          continue;
        }
        fail("stray '-'");
        continue;
      case '^':
        if (i + 1 < src.size() && src[i + 1] == '[') {
          push(Tok::CtxOpen, "^[", 2);
          continue;
        }
        fail("stray '^'");
        continue;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back(Token{Tok::Eof, "", line, col});
  return out;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  Mode mode;
  bool allow_reified;

  bool delim() const { return mode.family == Family::Delimited; }
  bool cbn() const { return mode.strategy == Strategy::Cbn; }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::Eof) ++pos;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " (found " + got + ")", t.line, t.col);
  }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    ++pos;
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail("expected " + what);
    return next().text;
  }

  // ------------------------------------------------------------ types

  bool starts_type() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::LParen:
      case Tok::KwForall:
        return true;
      case Tok::LBrace:
        return delim() && cbn();
      default:
        return false;
    }
  }

  TypePtr type_atom() {
    if (peek().kind == Tok::Ident) return ty_var(next().text);
    if (peek().kind == Tok::LParen) {
      next();
      TypePtr t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a type");
  }

  CompTriple triple() {
    expect(Tok::LBrace, "'{'");
    TypePtr s = type();
    expect(Tok::Comma, "','");
    TypePtr t = type();
    expect(Tok::Comma, "','");
    TypePtr u = type();
    expect(Tok::RBrace, "'}'");
    return CompTriple{s, t, u};
  }

  // Answer-type pair "@ [T, U]" carried by every delimited arrow and forall.
  std::pair<TypePtr, TypePtr> answer_pair() {
    expect(Tok::At, "'@'");
    expect(Tok::LBracket, "'['");
    TypePtr a = type();
    expect(Tok::Comma, "','");
    TypePtr b = type();
    expect(Tok::RBracket, "']'");
    return {a, b};
  }

  TypePtr type() {
    if (peek().kind == Tok::KwForall) {
      next();
      std::string v = ident("a type variable");
      expect(Tok::Dot, "'.'");
      TypePtr body = type();
      if (delim()) {
        auto [a, b] = answer_pair();
        return ty_forall_d(v, body, a, b);
      }
      return ty_forall(v, body);
    }
    if (peek().kind == Tok::LBrace && delim() && cbn()) {
      CompTriple dom = triple();
      expect(Tok::Arrow, "'->' after a computation triple");
      TypePtr cod = type();
      auto [a, b] = answer_pair();
      return ty_arrow_d(dom, cod, a, b);
    }
    TypePtr lhs = type_atom();
    if (peek().kind != Tok::Arrow) return lhs;
    next();
    TypePtr cod = type();
    if (delim()) {
      if (cbn())
        fail("call-by-name delimited function domains must be computation "
             "triples");
      auto [a, b] = answer_pair();
      return ty_arrow_d(lhs, cod, a, b);
    }
    return ty_arrow(lhs, cod);
  }

  ArgType lam_ann() {
    if (delim() && cbn()) return triple();
    return type();
  }

  // "S cont" or "(S, T) cont" or "S cont T".
  ContextType context_type() {
    // Pair spelling: "(S, T) cont".
    if (peek().kind == Tok::LParen) {
      std::size_t save = pos;
      next();
      TypePtr s = type();
      if (peek().kind == Tok::Comma) {
        next();
        TypePtr t = type();
        expect(Tok::RParen, "')'");
        expect(Tok::KwCont, "'cont'");
        return ContextType{s, t};
      }
      pos = save;
    }
    TypePtr s = type();
    expect(Tok::KwCont, "'cont'");
    if (starts_type()) {
      TypePtr t = type();
      return ContextType{s, t};
    }
    if (delim()) fail("delimited continuation types carry an answer type");
    return ContextType{s, nullptr};
  }

  // ------------------------------------------------------------ terms

  bool starts_atom() const {
    return peek().kind == Tok::Ident || peek().kind == Tok::LParen;
  }

  TermPtr atom() {
    if (peek().kind == Tok::Ident) return mk_var(next().text);
    if (peek().kind == Tok::LParen) {
      next();
      TermPtr t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    fail("expected a term");
  }

  TermPtr app_chain() {
    TermPtr t = atom();
    for (;;) {
      if (starts_atom()) {
        t = mk_app(t, atom());
      } else if (peek().kind == Tok::LBracket) {
        next();
        TypePtr ty = type();
        expect(Tok::RBracket, "']'");
        t = mk_tyapp(t, ty);
      } else {
        return t;
      }
    }
  }

  Frame frame() {
    if (peek().kind == Tok::LBracket) {
      next();
      expect(Tok::RBracket, "']' of the hole");
      if (peek().kind == Tok::LBracket) {
        next();
        TypePtr ty = type();
        expect(Tok::RBracket, "']'");
        return Frame{TyAppFrame{ty}};
      }
      return Frame{AppFrame{atom()}};
    }
    if (peek().kind == Tok::LParen) {
      TermPtr fn = atom();
      if (!as<Lam>(fn)) fail("function frames hold a lambda");
      expect(Tok::LBracket, "'[]'");
      expect(Tok::RBracket, "']'");
      return Frame{FunFrame{fn}};
    }
    if (peek().kind == Tok::KwThrow) {
      next();
      TypePtr ann = throw_ann();
      Context inner = reified_context();
      expect(Tok::LBracket, "'[]'");
      expect(Tok::RBracket, "']'");
      return Frame{ThrowFrame{inner, ann}};
    }
    fail("expected a context frame");
  }

  Context reified_context() {
    expect(Tok::CtxOpen, "'^['");
    Context e;
    if (peek().kind == Tok::RBracket) {
      next();
      return e;
    }
    e.frames.push_back(frame());
    while (peek().kind == Tok::Semi) {
      next();
      e.frames.push_back(frame());
    }
    expect(Tok::RBracket, "']'");
    return e;
  }

  TypePtr throw_ann() {
    if (!delim()) {
      expect(Tok::LBracket, "'[' of the throw result type");
      TypePtr t = type();
      expect(Tok::RBracket, "']'");
      return t;
    }
    return nullptr;
  }

  TermPtr term() {
    switch (peek().kind) {
      case Tok::KwFun: {
        next();
        expect(Tok::LParen, "'('");
        std::string x = ident("a variable");
        expect(Tok::Colon, "':'");
        ArgType ann = lam_ann();
        expect(Tok::RParen, "')'");
        expect(Tok::Arrow, "'->'");
        return mk_lam(x, ann, term());
      }
      case Tok::KwTfun: {
        next();
        std::string a = ident("a type variable");
        expect(Tok::Arrow, "'->'");
        return mk_tylam(a, term());
      }
      case Tok::KwCallcc:
      case Tok::KwShift: {
        bool is_callcc = peek().kind == Tok::KwCallcc;
        if (is_callcc && delim()) fail("callcc is abortive-only");
        if (!is_callcc && !delim()) fail("shift is delimited-only");
        next();
        expect(Tok::LParen, "'('");
        std::string k = ident("a continuation variable");
        expect(Tok::Colon, "':'");
        ContextType ann = context_type();
        expect(Tok::RParen, "')'");
        expect(Tok::Arrow, "'->'");
        TermPtr body = term();
        return is_callcc ? mk_callcc(k, ann, body) : mk_shift(k, ann, body);
      }
      case Tok::KwReset: {
        if (!delim()) fail("reset is delimited-only");
        next();
        return mk_reset(atom());
      }
      case Tok::KwThrow: {
        next();
        TypePtr ann = throw_ann();
        if (peek().kind == Tok::CtxOpen) {
          if (!allow_reified)
            fail("reified contexts are not allowed in source programs");
          Context e = reified_context();
          return mk_throw_ctx(e, ann, term());
        }
        std::string k = ident("a continuation variable");
        return mk_throw_var(k, ann, term());
      }
      default:
        return app_chain();
    }
  }
};

}  // namespace

TermPtr parse_term(const std::string& src, Mode mode, bool allow_reified) {
  Parser p{lex(src, 0), 0, mode, allow_reified};
  TermPtr t = p.term();
  if (p.peek().kind != Tok::Eof) p.fail("trailing input after the term");
  return t;
}

TypePtr parse_type_string(const std::string& src, Mode mode) {
  Parser p{lex(src, 0), 0, mode, false};
  TypePtr t = p.type();
  if (p.peek().kind != Tok::Eof) p.fail("trailing input after the type");
  return t;
}

ParsedProgram parse_program(const std::string& src,
                            const std::optional<Mode>& override_mode,
                            bool allow_reified) {
  std::optional<Mode> header;
  std::string body = src;
  int line_offset = 0;

  // The header may sit below leading blank and comment lines.
  std::size_t i = 0, line = 0;
  for (;;) {
    while (i < src.size() &&
           std::isspace(static_cast<unsigned char>(src[i]))) {
      if (src[i] == '\n') ++line;
      ++i;
    }
    if (i + 1 < src.size() && src[i] == '-' && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    break;
  }
  if (i < src.size() && src[i] == '#') {
    std::size_t eol = src.find('\n', i);
    std::string hline =
        src.substr(i, eol == std::string::npos ? std::string::npos : eol - i);
    std::istringstream hs(hline);
    std::string tag, fam, strat;
    hs >> tag >> fam >> strat;
    if (tag != "#mode")
      throw ParseError("unknown directive '" + tag + "'",
                       static_cast<int>(line + 1), 1);
    std::optional<Mode> m = mode_of_string(fam, strat);
    if (!m)
      throw ParseError("bad mode '" + fam + " " + strat +
                           "' (expected abortive|delimited cbv|cbn)",
                       static_cast<int>(line + 1), 1);
    header = m;
    if (eol == std::string::npos) {
      body.clear();
      line_offset = static_cast<int>(line + 1);
    } else {
      body = src.substr(eol + 1);
      line_offset = static_cast<int>(line + 1);
    }
  }

  std::optional<Mode> mode = override_mode ? override_mode : header;
  if (!mode)
    throw ParseError("no mode: give a '#mode' header or a mode option", 1, 1);

  Parser p{lex(body, line_offset), 0, *mode, allow_reified};
  TermPtr t = p.term();
  if (p.peek().kind != Tok::Eof) p.fail("trailing input after the term");
  return ParsedProgram{*mode, t};
}

}  // namespace fctl
