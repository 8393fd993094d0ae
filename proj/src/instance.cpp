#include "mloop/instance.hpp"

#include <cctype>
#include <functional>

#include "mloop/errors.hpp"
#include "mloop/scalar_expr.hpp"

namespace mloop {

namespace {

struct Token {
  enum Kind { Ident, Integer, Symbol, End } kind = End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                       text[i] == '_'))
        ++i;
      out.push_back({Token::Ident, text.substr(start, i - start), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Token::Integer, text.substr(start, i - start), start});
      continue;
    }
    if (std::string("()+-*/^,;").find(c) != std::string::npos) {
      out.push_back({Token::Symbol, std::string(1, c), i});
      ++i;
      continue;
    }
    throw SyntaxError(i, "unexpected character");
  }
  out.push_back({Token::End, "", n});
  return out;
}

/// Re-raises module errors with the statement offset appended, preserving
/// the error kind for reports.
template <typename F>
auto with_offset(std::size_t pos, F&& f) {
  try {
    return f();
  } catch (const SyntaxError&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(e.what()) + " (at offset " +
                              std::to_string(pos) + ")");
  }
}

class InstanceParser {
public:
  InstanceParser(const std::string& text)
      : text_(text), tokens_(lex(text)) {}

  Instance run() {
    bool first = true;
    while (!at_end()) {
      Token t = expect_ident("expected a statement keyword");
      if (first && t.text != "format")
        throw SyntaxError(t.pos, "document must start with 'format 1 ;'");
      if (t.text == "format") {
        if (!first)
          throw SyntaxError(t.pos, "format must be the first statement");
        Token v = expect_int("expected a format number");
        if (v.text != "1")
          throw SyntaxError(v.pos, "unsupported document format");
        expect_symbol(";");
      } else if (t.text == "algebra") {
        parse_algebra(t.pos);
      } else if (t.text == "automorphism") {
        parse_automorphism(t.pos);
      } else if (t.text == "spec") {
        parse_spec(t.pos);
      } else {
        throw SyntaxError(t.pos, "unknown statement '" + t.text + "'");
      }
      first = false;
    }
    if (!algebra_)
      throw SyntaxError(text_.size(), "document declares no algebra");
    seal_context(text_.size());
    Instance out;
    out.algebra = algebra_;
    out.context = *context_;
    out.specs = std::move(specs_);
    return out;
  }

private:
  bool at_end() const { return tokens_[cursor_].kind == Token::End; }
  const Token& peek() const { return tokens_[cursor_]; }
  Token next() { return tokens_[cursor_++]; }

  Token expect_ident(const char* what) {
    Token t = next();
    if (t.kind != Token::Ident) throw SyntaxError(t.pos, what);
    return t;
  }

  Token expect_int(const char* what) {
    Token t = next();
    if (t.kind != Token::Integer) throw SyntaxError(t.pos, what);
    return t;
  }

  void expect_symbol(const std::string& s) {
    Token t = next();
    if (t.kind != Token::Symbol || t.text != s)
      throw SyntaxError(t.pos, "expected '" + s + "'");
  }

  bool eat_symbol(const std::string& s) {
    if (peek().kind == Token::Symbol && peek().text == s) {
      ++cursor_;
      return true;
    }
    return false;
  }

  unsigned long parse_unsigned(const char* what) {
    Token t = expect_int(what);
    if (t.text.size() > 9) throw SyntaxError(t.pos, "number too large");
    return std::stoul(t.text);
  }

  long parse_signed(const char* what) {
    bool neg = eat_symbol("-");
    Token t = expect_int(what);
    if (t.text.size() > 9) throw SyntaxError(t.pos, "number too large");
    long v = static_cast<long>(std::stoul(t.text));
    return neg ? -v : v;
  }

  /// Captures the raw text of one scalar expression: everything until the
  /// next ',' or ')' at the current nesting depth.
  Cyclo parse_expression_slot() {
    const Token& first = peek();
    if (first.kind == Token::End)
      throw SyntaxError(first.pos, "expected a scalar expression");
    std::size_t depth = 0;
    std::size_t idx = cursor_;
    while (true) {
      const Token& t = tokens_[idx];
      if (t.kind == Token::End)
        throw SyntaxError(t.pos, "unterminated scalar expression");
      if (t.kind == Token::Symbol) {
        if (t.text == "(") ++depth;
        if (t.text == ")") {
          if (depth == 0) break;
          --depth;
        }
        if ((t.text == "," || t.text == ";") && depth == 0) break;
      }
      ++idx;
    }
    if (idx == cursor_)
      throw SyntaxError(first.pos, "expected a scalar expression");
    std::string raw = text_.substr(first.pos, tokens_[idx].pos - first.pos);
    cursor_ = idx;
    try {
      return parse_scalar_expression(raw);
    } catch (const SyntaxError& e) {
      throw SyntaxError(first.pos + e.position(),
                        "invalid scalar expression");
    }
  }

  void parse_algebra(std::size_t pos) {
    if (algebra_) throw SyntaxError(pos, "algebra already declared");
    Token letter = expect_ident("expected a series letter");
    if (letter.text.size() != 1 || letter.text[0] < 'A' ||
        letter.text[0] > 'D')
      throw SyntaxError(letter.pos, "series must be one of A, B, C, D");
    unsigned long rank = parse_unsigned("expected a rank");
    expect_symbol(";");
    with_offset(pos, [&] {
      algebra_ = std::make_shared<ChevalleyAlgebra>(
          series_from_letter(letter.text[0]), rank);
      return 0;
    });
  }

  AlgebraAutomorphism parse_ctor() {
    Token t = expect_ident("expected an automorphism constructor");
    const ChevalleyAlgebra& g = *algebra_;
    if (t.text == "torus") {
      expect_symbol("(");
      std::vector<Cyclo> values;
      if (!eat_symbol(")")) {
        values.push_back(parse_expression_slot());
        while (eat_symbol(",")) values.push_back(parse_expression_slot());
        expect_symbol(")");
      }
      return with_offset(t.pos,
                         [&] { return make_torus_automorphism(g, values); });
    }
    if (t.text == "diagram") {
      expect_symbol("(");
      std::vector<std::size_t> perm;
      if (!eat_symbol(")")) {
        perm.push_back(parse_unsigned("expected a permutation entry"));
        while (eat_symbol(","))
          perm.push_back(parse_unsigned("expected a permutation entry"));
        expect_symbol(")");
      }
      return with_offset(t.pos, [&] {
        return make_diagram_lift(g, g.diagram_automorphism(perm));
      });
    }
    if (t.text == "neg_transpose")
      return with_offset(t.pos, [&] { return make_neg_transpose(g); });
    if (t.text == "identity")
      return with_offset(t.pos, [&] {
        return check_automorphism(g, MatC::identity(g.dim()));
      });
    if (t.text == "compose") {
      expect_symbol("(");
      AlgebraAutomorphism a = parse_ctor();
      expect_symbol(",");
      AlgebraAutomorphism b = parse_ctor();
      expect_symbol(")");
      return with_offset(t.pos, [&] { return compose(g, a, b); });
    }
    throw SyntaxError(t.pos, "unknown constructor '" + t.text + "'");
  }

  void parse_automorphism(std::size_t pos) {
    if (!algebra_)
      throw SyntaxError(pos, "algebra must be declared before automorphisms");
    if (context_)
      throw SyntaxError(pos, "automorphisms must precede spec statements");
    if (members_.empty()) family_pos_ = pos;
    Token kw = expect_ident("expected 'order'");
    if (kw.text != "order") throw SyntaxError(kw.pos, "expected 'order'");
    unsigned long order = parse_unsigned("expected an order");
    Token kx = expect_ident("expected 'xi'");
    if (kx.text != "xi") throw SyntaxError(kx.pos, "expected 'xi'");
    expect_symbol("(");
    Cyclo xi = parse_expression_slot();
    expect_symbol(")");
    AlgebraAutomorphism member = parse_ctor();
    expect_symbol(";");
    members_.push_back(std::move(member));
    orders_.push_back(static_cast<unsigned>(order));
    roots_.push_back(std::move(xi));
  }

  void seal_context(std::size_t pos) {
    if (context_) return;
    if (members_.empty())
      throw SyntaxError(pos, "document declares no automorphisms");
    with_offset(family_pos_, [&] {
      AutomorphismFamily fam =
          make_family(*algebra_, members_, orders_, roots_);
      context_ = std::make_unique<LoopContext>(
          make_loop_context(algebra_, std::move(fam)));
      return 0;
    });
  }

  void parse_spec(std::size_t pos) {
    if (!algebra_)
      throw SyntaxError(pos, "algebra must be declared before specs");
    seal_context(pos);
    Token name = expect_ident("expected a spec name");
    for (const auto& [n, s] : specs_)
      if (n == name.text)
        throw SyntaxError(name.pos, "spec name already used");

    Token kw = expect_ident("expected 'weights'");
    if (kw.text != "weights") throw SyntaxError(kw.pos, "expected 'weights'");
    expect_symbol("(");
    std::vector<Weight> weights;
    while (eat_symbol("(")) {
      Weight w;
      if (!eat_symbol(")")) {
        w.coords.emplace_back(parse_signed("expected a weight coordinate"));
        while (eat_symbol(","))
          w.coords.emplace_back(parse_signed("expected a weight coordinate"));
        expect_symbol(")");
      }
      weights.push_back(std::move(w));
      if (!eat_symbol(",")) break;
    }
    expect_symbol(")");

    Token kp = expect_ident("expected 'points'");
    if (kp.text != "points") throw SyntaxError(kp.pos, "expected 'points'");
    expect_symbol("(");
    std::vector<TorusPoint> points;
    while (eat_symbol("(")) {
      TorusPoint p;
      if (!eat_symbol(")")) {
        p.coords.push_back(parse_expression_slot());
        while (eat_symbol(",")) p.coords.push_back(parse_expression_slot());
        expect_symbol(")");
      }
      points.push_back(std::move(p));
      if (!eat_symbol(",")) break;
    }
    expect_symbol(")");
    expect_symbol(";");

    ModuleSpec spec = with_offset(
        pos, [&] { return normalize_spec(*context_, weights, points); });
    specs_.emplace_back(name.text, std::move(spec));
  }

  const std::string& text_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;

  std::shared_ptr<const ChevalleyAlgebra> algebra_;
  std::vector<AlgebraAutomorphism> members_;
  std::vector<unsigned> orders_;
  std::vector<Cyclo> roots_;
  std::size_t family_pos_ = 0;
  std::unique_ptr<LoopContext> context_;
  std::vector<std::pair<std::string, ModuleSpec>> specs_;
};

}  // namespace

const ModuleSpec& Instance::spec(const std::string& name) const {
  for (const auto& [n, s] : specs)
    if (n == name) return s;
  throw Error("UnknownSpec", "no spec named '" + name + "' in the document");
}

Instance parse_instance(const std::string& text) {
  return InstanceParser(text).run();
}

}  // namespace mloop
