#include "qmod/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "qmod/errors.hpp"

namespace qmod::dsl {

namespace {

enum class Tok { Ident, Int, LBrace, RBrace, Colon, Semi, Comma, LParen, RParen, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>> kReserved = {"quiver", "vertices", "arrows", "relations", "weights"};

struct SyntaxError {
  Diagnostic diagnostic;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      SourceSpan at{line_, col_, 1};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", {line_, col_, 0}});
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        at.length = static_cast<int>(pos_ - start);
        out.push_back({Tok::Ident, std::string(text_.substr(start, pos_ - start)), at});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        if (c == '-' && peek(1) == '>') {
          advance();
          advance();
          at.length = 2;
          out.push_back({Tok::Arrow, "->", at});
          continue;
        }
        std::size_t start = pos_;
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        std::string lit(text_.substr(start, pos_ - start));
        at.length = static_cast<int>(lit.size());
        if (lit == "-") throw SyntaxError{{at, "expected '->' or a number after '-'"}};
        out.push_back({Tok::Int, lit, at});
      } else {
        Tok kind;
        switch (c) {
          case '{': kind = Tok::LBrace; break;
          case '}': kind = Tok::RBrace; break;
          case ':': kind = Tok::Colon; break;
          case ';': kind = Tok::Semi; break;
          case ',': kind = Tok::Comma; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          default: {
            std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + hex(c);
            throw SyntaxError{{at, "unexpected character '" + shown + "'"}};
          }
        }
        advance();
        out.push_back({kind, std::string(1, c), at});
      }
    }
  }

 private:
  static std::string hex(char c) {
    const char* digits = "0123456789abcdef";
    auto u = static_cast<unsigned char>(c);
    return {digits[u >> 4], digits[u & 15]};
  }

  char peek(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Int: return "number " + t.text;
    case Tok::End: return "end of input";
    default: return "'" + t.text + "'";
  }
}

struct ArrowDecl {
  Arrow arrow;
  SourceSpan span;
};

struct RelationDecl {
  std::vector<Token> letters;
};

struct WeightDecl {
  Token arrow;
  int mu;
  int nu;
};

struct Ast {
  std::string name;
  std::vector<Token> vertices;
  std::vector<ArrowDecl> arrows;
  std::vector<RelationDecl> relations;
  std::vector<WeightDecl> weights;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Ast run() {
    Ast ast;
    expect_keyword("quiver");
    if (cur().kind == Tok::Ident) {
      if (kReserved.count(cur().text)) fail(cur(), "reserved word used as quiver name");
      ast.name = next().text;
    }
    expect(Tok::LBrace, "'{'");
    int sections = 0;
    while (cur().kind != Tok::RBrace) {
      section(ast);
      ++sections;
    }
    if (sections == 0) fail(cur(), "expected a section (vertices, arrows, relations, weights)");
    next();
    if (cur().kind != Tok::End) fail(cur(), "unexpected " + describe(cur()) + " after the closing '}'");
    return ast;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) { throw SyntaxError{{t.span, msg}}; }

  const Token& expect(Tok kind, const std::string& what) {
    if (cur().kind != kind) fail(cur(), "expected " + what + ", found " + describe(cur()));
    return next();
  }

  void expect_keyword(const std::string& kw) {
    if (cur().kind != Tok::Ident || cur().text != kw)
      fail(cur(), "expected '" + kw + "', found " + describe(cur()));
    next();
  }

  const Token& ident(const std::string& what) {
    if (cur().kind != Tok::Ident) fail(cur(), "expected " + what + ", found " + describe(cur()));
    if (kReserved.count(cur().text)) fail(cur(), "reserved word '" + cur().text + "' cannot be " + what);
    return next();
  }

  bool at_plain_ident() const { return cur().kind == Tok::Ident && !kReserved.count(cur().text); }

  int integer() {
    const Token& t = expect(Tok::Int, "an integer");
    try {
      std::size_t used = 0;
      long long v = std::stoll(t.text, &used);
      if (v < 0 || v > 1000000) fail(t, "weight must lie in [0, 1000000]");
      return static_cast<int>(v);
    } catch (const std::out_of_range&) {
      fail(t, "weight must lie in [0, 1000000]");
    }
  }

  void section(Ast& ast) {
    const Token& head = cur();
    if (head.kind != Tok::Ident || !kReserved.count(head.text) || head.text == "quiver")
      fail(head, "expected a section name (vertices, arrows, relations, weights), found " + describe(head));
    const std::string kind = next().text;
    expect(Tok::Colon, "':'");
    if (kind == "vertices") {
      do {
        ast.vertices.push_back(ident("a vertex id"));
      } while (cur().kind != Tok::Semi);
      next();
    } else if (kind == "arrows") {
      do {
        const Token& id = ident("an arrow id");
        expect(Tok::Colon, "':'");
        const Token& tail = ident("a vertex id");
        expect(Tok::Arrow, "'->'");
        const Token& headv = ident("a vertex id");
        expect(Tok::Semi, "';'");
        ast.arrows.push_back({{id.text, tail.text, headv.text}, id.span});
      } while (at_plain_ident());
    } else if (kind == "relations") {
      do {
        RelationDecl rel;
        do {
          rel.letters.push_back(ident("an arrow id"));
        } while (cur().kind == Tok::Ident);
        ast.relations.push_back(std::move(rel));
        if (cur().kind == Tok::Comma) {
          next();
          continue;
        }
        expect(Tok::Semi, "',' or ';'");
        break;
      } while (true);
    } else {
      do {
        const Token& id = ident("an arrow id");
        expect(Tok::LParen, "'('");
        const int mu = integer();
        expect(Tok::Comma, "','");
        const int nu = integer();
        expect(Tok::RParen, "')'");
        ast.weights.push_back({id, mu, nu});
      } while (cur().kind != Tok::Semi);
      next();
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::optional<QuiverDocument> build(const Ast& ast, std::vector<Diagnostic>& diags) {
  std::map<std::string, SourceSpan> spans;
  std::vector<VertexId> vertices;
  for (const auto& t : ast.vertices) {
    if (spans.count("vertex:" + t.text)) {
      diags.push_back({t.span, "duplicate vertex '" + t.text + "'"});
      continue;
    }
    spans["vertex:" + t.text] = t.span;
    vertices.push_back(t.text);
  }
  if (vertices.empty()) {
    diags.push_back({{1, 1, 0}, "a quiver needs at least one vertex"});
    return std::nullopt;
  }
  std::vector<Arrow> arrows;
  for (const auto& d : ast.arrows) {
    if (spans.count("arrow:" + d.arrow.id)) {
      diags.push_back({d.span, "duplicate arrow '" + d.arrow.id + "'"});
      continue;
    }
    bool ok = true;
    for (const auto& v : {d.arrow.tail, d.arrow.head}) {
      if (!spans.count("vertex:" + v)) {
        diags.push_back({d.span, "arrow '" + d.arrow.id + "' uses undeclared vertex '" + v + "'"});
        ok = false;
      }
    }
    spans["arrow:" + d.arrow.id] = d.span;
    if (ok) arrows.push_back(d.arrow);
  }
  if (!diags.empty()) return std::nullopt;
  Quiver q(vertices, arrows);

  RelationSet relations;
  for (std::size_t i = 0; i < ast.relations.size(); ++i) {
    const auto& rel = ast.relations[i];
    SourceSpan span = rel.letters.front().span;
    const auto& last = rel.letters.back().span;
    span.length = last.line == span.line ? last.column + last.length - span.column : span.length;
    bool known = true;
    Word w;
    for (const auto& t : rel.letters) {
      if (!q.has_arrow(t.text)) {
        diags.push_back({t.span, "relation names unknown arrow '" + t.text + "'"});
        known = false;
      }
      w.letters.push_back({t.text, 1});
    }
    if (!known) continue;
    RelationSet single{{w}};
    for (const auto& v : validate_relations(q, single))
      diags.push_back({rel.letters[v.letter_index].span, "relation is not a cycle: " + v.message});
    spans["relation:" + std::to_string(relations.relations.size())] = span;
    relations.relations.push_back(std::move(w));
  }

  std::map<ArrowId, std::pair<int, int>> weights;
  for (const auto& w : ast.weights) {
    if (!q.has_arrow(w.arrow.text)) {
      diags.push_back({w.arrow.span, "weight for unknown arrow '" + w.arrow.text + "'"});
      continue;
    }
    if (weights.count(w.arrow.text)) {
      diags.push_back({w.arrow.span, "duplicate weight for arrow '" + w.arrow.text + "'"});
      continue;
    }
    weights[w.arrow.text] = {w.mu, w.nu};
    spans["weight:" + w.arrow.text] = w.arrow.span;
  }
  if (!diags.empty()) return std::nullopt;
  return QuiverDocument{ast.name, std::move(q), std::move(relations), std::move(weights), std::move(spans)};
}

}  // namespace

ArrowWeights QuiverDocument::mu() const {
  ArrowWeights out;
  for (const auto& a : quiver.arrows()) {
    auto it = weights.find(a.id);
    out[a.id] = it == weights.end() ? 1 : it->second.first;
  }
  return out;
}

ArrowWeights QuiverDocument::nu() const {
  ArrowWeights out;
  for (const auto& a : quiver.arrows()) {
    auto it = weights.find(a.id);
    out[a.id] = it == weights.end() ? 1 : it->second.second;
  }
  return out;
}

ParseResult parse(std::string_view text) {
  ParseResult result;
  try {
    Lexer lexer(text);
    Parser parser(lexer.run());
    Ast ast = parser.run();
    result.document = build(ast, result.diagnostics);
  } catch (const SyntaxError& e) {
    result.diagnostics.push_back(e.diagnostic);
  } catch (const Error& e) {
    result.diagnostics.push_back({{1, 1, 0}, e.what()});
  }
  if (!result.diagnostics.empty()) result.document.reset();
  return result;
}

std::string format_word(const Word& w) {
  std::string out;
  for (const auto& l : w.letters) {
    if (!out.empty()) out += ' ';
    out += l.arrow;
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

namespace {

std::string print_impl(const std::string& name, const Quiver& q, const RelationSet& r,
                       const std::map<ArrowId, std::pair<int, int>>& weights) {
  std::ostringstream os;
  os << "quiver" << (name.empty() ? "" : " " + name) << " {\n";
  os << "  vertices:";
  for (const auto& v : q.vertices()) os << ' ' << v;
  os << ";\n";
  if (q.arrow_count() > 0) {
    os << "  arrows:\n";
    for (const auto& a : q.arrows()) os << "    " << a.id << ": " << a.tail << " -> " << a.head << ";\n";
  }
  std::vector<std::string> rels;
  for (const auto& w : r.relations)
    if (!w.empty()) rels.push_back(format_word(w));
  std::sort(rels.begin(), rels.end());
  if (!rels.empty()) {
    os << "  relations:";
    for (std::size_t i = 0; i < rels.size(); ++i) os << (i ? ", " : " ") << rels[i];
    os << ";\n";
  }
  if (!weights.empty()) {
    os << "  weights:";
    for (const auto& [id, w] : weights) os << ' ' << id << '(' << w.first << ", " << w.second << ')';
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace

std::string print(const QuiverDocument& doc) { return print_impl(doc.name, doc.quiver, doc.relations, doc.weights); }

std::string print(const Quiver& q, const RelationSet& r, const std::string& name) {
  return print_impl(name, q, r, {});
}

std::string format_diagnostic(const Diagnostic& d, std::string_view source_name) {
  std::ostringstream os;
  os << source_name << ':' << d.span.line << ':' << d.span.column << ": error: " << d.message;
  return os.str();
}

}  // namespace qmod::dsl
