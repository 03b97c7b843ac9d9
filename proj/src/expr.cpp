#include "hfold/expr.hpp"

#include <algorithm>
#include <cctype>

#include "hfold/sumset.hpp"

namespace hfold {

namespace {

constexpr unsigned kMaxExponent = 64;

bool takes_number(NodeKind k) {
  switch (k) {
    case NodeKind::RayGeq:
    case NodeKind::RayLeq:
    case NodeKind::AbsGeq:
    case NodeKind::Dilate:
      return true;
    default:
      return false;
  }
}

const char* primitive_name(NodeKind k) {
  switch (k) {
    case NodeKind::Integers: return "Z";
    case NodeKind::Positive: return "N";
    case NodeKind::Nonnegative: return "N0";
    case NodeKind::RayGeq: return "ray_geq";
    case NodeKind::RayLeq: return "ray_leq";
    case NodeKind::AbsGeq: return "abs_geq";
    case NodeKind::Ap: return "ap";
    case NodeKind::Dilate: return "dilate";
    default: return "";
  }
}

std::optional<NodeKind> primitive_kind(const std::string& name) {
  for (NodeKind k : {NodeKind::Integers, NodeKind::Positive, NodeKind::Nonnegative, NodeKind::RayGeq,
                     NodeKind::RayLeq, NodeKind::AbsGeq, NodeKind::Ap, NodeKind::Dilate})
    if (name == primitive_name(k)) return k;
  return std::nullopt;
}

bool is_set_keyword(const std::string& name) { return primitive_kind(name) || name == "fin" || name == "sum"; }

struct Token {
  enum class Type { Ident, Number, Symbol, End };
  Type type = Type::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isalpha(c) || c == '_') {
      t.type = Token::Type::Ident;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    } else if (std::isdigit(c)) {
      t.type = Token::Type::Number;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    } else if (std::string("|&\\+-*^!(){},").find(static_cast<char>(c)) != std::string::npos) {
      t.type = Token::Type::Symbol;
      ++i;
    } else {
      throw ParseError(ParseError::Kind::Syntax, i, std::string("unexpected character '") + text[i] + "'");
    }
    t.text = text.substr(t.pos, i - t.pos);
    out.push_back(std::move(t));
  }
  out.push_back({Token::Type::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  AstPtr parse_all() {
    AstPtr e = expr();
    if (peek().type != Token::Type::End) syntax("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool at_symbol(const char* s) const { return peek().type == Token::Type::Symbol && peek().text == s; }

  [[noreturn]] void syntax(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, peek().pos, msg);
  }
  [[noreturn]] void type_error(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Type, peek().pos, msg);
  }

  void expect(const char* s) {
    if (!at_symbol(s)) {
      syntax(std::string("expected '") + s + "'" +
             (peek().type == Token::Type::End ? " at end of input" : " before '" + peek().text + "'"));
    }
    ++pos_;
  }

  AstPtr expr() {
    AstPtr left = term();
    for (;;) {
      NodeKind k;
      if (at_symbol("|")) k = NodeKind::Union;
      else if (at_symbol("&")) k = NodeKind::Intersect;
      else if (at_symbol("\\")) k = NodeKind::Difference;
      else return left;
      ++pos_;
      left = make_binary(k, left, term());
    }
  }

  AstPtr term() {
    AstPtr left = factor();
    while (at_symbol("+")) {
      ++pos_;
      left = make_binary(NodeKind::Msum, left, factor());
    }
    return left;
  }

  AstPtr factor() {
    const Token& t = peek();
    if (t.type == Token::Type::Symbol) {
      if (t.text == "!") {
        ++pos_;
        return make_complement(factor());
      }
      if (t.text == "(") {
        ++pos_;
        AstPtr e = expr();
        expect(")");
        return e;
      }
      if (t.text == "-") type_error("a number cannot stand where a set is expected");
      syntax(t.text.empty() ? "expected a set" : "expected a set before '" + t.text + "'");
    }
    if (t.type == Token::Type::Number) type_error("a number cannot stand where a set is expected");
    if (t.type == Token::Type::End) syntax("expected a set at end of input");
    if (t.text == "q") type_error("q is a number and cannot stand where a set is expected");
    if (t.text == "fin") {
      ++pos_;
      return literal();
    }
    if (t.text == "sum") {
      ++pos_;
      expect("(");
      Polynomial h = num();
      expect(",");
      AstPtr e = expr();
      expect(")");
      return make_hfold(std::move(h), e);
    }
    const std::optional<NodeKind> k = primitive_kind(t.text);
    if (!k) syntax("unknown name '" + t.text + "'");
    ++pos_;
    if (*k == NodeKind::Integers || *k == NodeKind::Positive || *k == NodeKind::Nonnegative)
      return make_primitive(*k);
    expect("(");
    std::vector<Polynomial> args{num()};
    if (*k == NodeKind::Ap) {
      expect(",");
      args.push_back(num());
    }
    expect(")");
    return make_primitive(*k, std::move(args));
  }

  AstPtr literal() {
    expect("{");
    std::vector<Int> elems;
    if (!at_symbol("}")) {
      elems.push_back(integer());
      while (at_symbol(",")) {
        ++pos_;
        elems.push_back(integer());
      }
    }
    expect("}");
    return make_literal(std::move(elems));
  }

  Int integer() {
    bool negative = false;
    if (at_symbol("-")) {
      negative = true;
      ++pos_;
    }
    if (peek().type == Token::Type::Ident && peek().text == "q")
      type_error("fin{...} lists integers; q is not allowed here");
    if (peek().type != Token::Type::Number) syntax("expected an integer");
    const Int v = digits(next());
    return negative ? -v : v;
  }

  Int digits(const Token& t) const {
    try {
      return std::stoll(t.text);
    } catch (const std::out_of_range&) {
      throw ParseError(ParseError::Kind::Syntax, t.pos, "integer " + t.text + " is too large");
    }
  }

  Polynomial num() {
    Polynomial acc = num_term();
    for (;;) {
      if (at_symbol("+")) {
        ++pos_;
        acc = acc + num_term();
      } else if (at_symbol("-")) {
        ++pos_;
        acc = acc - num_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial num_term() {
    Polynomial acc = num_unary();
    while (at_symbol("*")) {
      ++pos_;
      acc = acc * num_unary();
    }
    return acc;
  }

  Polynomial num_unary() {
    if (at_symbol("-")) {
      ++pos_;
      return -num_unary();
    }
    Polynomial base = num_atom();
    if (at_symbol("^")) {
      ++pos_;
      if (peek().type != Token::Type::Number) syntax("expected an integer exponent");
      const Token& t = next();
      const Int e = digits(t);
      if (e > static_cast<Int>(kMaxExponent))
        throw ParseError(ParseError::Kind::Syntax, t.pos, "exponent " + t.text + " is too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial num_atom() {
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      ++pos_;
      return Polynomial::constant(digits(t));
    }
    if (t.type == Token::Type::Ident) {
      if (t.text == "q") {
        ++pos_;
        return Polynomial::variable();
      }
      if (is_set_keyword(t.text)) type_error("a set cannot stand where a number is expected");
      syntax("unknown name '" + t.text + "'");
    }
    if (at_symbol("(")) {
      ++pos_;
      Polynomial p = num();
      expect(")");
      return p;
    }
    if (at_symbol("!") || at_symbol("{")) type_error("a set cannot stand where a number is expected");
    syntax(t.type == Token::Type::End ? "expected a number at end of input" : "expected a number before '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// 0: | & \   1: +   2: everything else
int level(const Ast& a) {
  switch (a.kind) {
    case NodeKind::Union:
    case NodeKind::Intersect:
    case NodeKind::Difference:
      return 0;
    case NodeKind::Msum:
      return 1;
    default:
      return 2;
  }
}

std::string print_at(const Ast& a, int min_level) {
  const std::string s = print(a);
  return level(a) < min_level ? "(" + s + ")" : s;
}

Int eval_number(const Polynomial& p, std::optional<Int> q) {
  if (p.is_constant()) return to_int(p.coefficient(0));
  if (!q) throw std::invalid_argument("expression depends on q but no q was given");
  return p.eval_int(*q);
}

bool is_q(const Polynomial& p) { return p == Polynomial::variable(); }

AstPtr residue_piece(Int p, const std::vector<Int>& residues) {
  AstPtr d = make_primitive(NodeKind::Dilate, {Polynomial::constant(p)});
  if (residues.size() == 1 && residues[0] == 0) return d;
  return make_binary(NodeKind::Msum, d, make_literal(residues));
}

}  // namespace

bool Ast::operator==(const Ast& o) const {
  if (kind != o.kind || elements != o.elements || numbers != o.numbers || children.size() != o.children.size())
    return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!(*children[i] == *o.children[i])) return false;
  return true;
}

AstPtr make_literal(std::vector<Int> elements) {
  auto a = std::make_shared<Ast>();
  a->kind = NodeKind::Literal;
  a->elements = std::move(elements);
  return a;
}

AstPtr make_primitive(NodeKind kind, std::vector<Polynomial> numbers) {
  const std::size_t want = kind == NodeKind::Ap ? 2 : (takes_number(kind) ? 1 : 0);
  if (*primitive_name(kind) == '\0' || numbers.size() != want)
    throw std::invalid_argument("malformed primitive");
  auto a = std::make_shared<Ast>();
  a->kind = kind;
  a->numbers = std::move(numbers);
  return a;
}

AstPtr make_binary(NodeKind kind, AstPtr left, AstPtr right) {
  if (kind != NodeKind::Union && kind != NodeKind::Intersect && kind != NodeKind::Difference &&
      kind != NodeKind::Msum)
    throw std::invalid_argument("not a binary node kind");
  auto a = std::make_shared<Ast>();
  a->kind = kind;
  a->children = {std::move(left), std::move(right)};
  return a;
}

AstPtr make_complement(AstPtr child) {
  auto a = std::make_shared<Ast>();
  a->kind = NodeKind::Complement;
  a->children = {std::move(child)};
  return a;
}

AstPtr make_hfold(Polynomial h, AstPtr child) {
  auto a = std::make_shared<Ast>();
  a->kind = NodeKind::Hfold;
  a->numbers = {std::move(h)};
  a->children = {std::move(child)};
  return a;
}

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error((kind == Kind::Syntax ? "syntax error at column " : "type error at column ") +
                         std::to_string(position + 1) + ": " + message),
      kind_(kind),
      position_(position) {}

AstPtr parse(const std::string& text) { return Parser(text).parse_all(); }

std::string print(const Ast& a) {
  switch (a.kind) {
    case NodeKind::Literal: {
      std::string s = "fin{";
      for (std::size_t i = 0; i < a.elements.size(); ++i) s += (i ? ", " : "") + std::to_string(a.elements[i]);
      return s + "}";
    }
    case NodeKind::Integers:
    case NodeKind::Positive:
    case NodeKind::Nonnegative:
      return primitive_name(a.kind);
    case NodeKind::Ap:
      return std::string("ap(") + a.numbers[0].str() + ", " + a.numbers[1].str() + ")";
    case NodeKind::RayGeq:
    case NodeKind::RayLeq:
    case NodeKind::AbsGeq:
    case NodeKind::Dilate:
      return std::string(primitive_name(a.kind)) + "(" + a.numbers[0].str() + ")";
    case NodeKind::Union:
    case NodeKind::Intersect:
    case NodeKind::Difference: {
      const char* op = a.kind == NodeKind::Union ? " | " : (a.kind == NodeKind::Intersect ? " & " : " \\ ");
      return print_at(*a.children[0], 0) + op + print_at(*a.children[1], 1);
    }
    case NodeKind::Msum:
      return print_at(*a.children[0], 1) + " + " + print_at(*a.children[1], 2);
    case NodeKind::Complement:
      return "!" + print_at(*a.children[0], 2);
    case NodeKind::Hfold:
      return "sum(" + a.numbers[0].str() + ", " + print(*a.children[0]) + ")";
  }
  return "";
}

bool is_open(const Ast& a) {
  for (const Polynomial& p : a.numbers)
    if (!p.is_constant()) return true;
  for (const AstPtr& c : a.children)
    if (is_open(*c)) return true;
  return false;
}

EpSet eval(const Ast& a, std::optional<Int> q) {
  auto n = [&](std::size_t i) { return eval_number(a.numbers[i], q); };
  auto child = [&](std::size_t i) { return eval(*a.children[i], q); };
  switch (a.kind) {
    case NodeKind::Literal: return EpSet::from_finite(a.elements);
    case NodeKind::Integers: return EpSet::all_integers();
    case NodeKind::Positive: return EpSet::positive_integers();
    case NodeKind::Nonnegative: return EpSet::nonnegative_integers();
    case NodeKind::RayGeq: return EpSet::ray_geq(n(0));
    case NodeKind::RayLeq: return EpSet::ray_leq(n(0));
    case NodeKind::AbsGeq: return EpSet::abs_geq(n(0));
    case NodeKind::Ap: return EpSet::ap(n(0), n(1));
    case NodeKind::Dilate: return EpSet::dilate(n(0));
    case NodeKind::Union: return set_union(child(0), child(1));
    case NodeKind::Intersect: return set_intersect(child(0), child(1));
    case NodeKind::Difference: return set_difference(child(0), child(1));
    case NodeKind::Complement: return set_complement(child(0));
    case NodeKind::Msum: return minkowski_sum(child(0), child(1));
    case NodeKind::Hfold: {
      const Int h = n(0);
      if (h < 1) throw std::invalid_argument("sum(h, A) requires h >= 1, got " + std::to_string(h));
      return h_fold(child(0), h);
    }
  }
  throw std::logic_error("unknown node kind");
}

SetFamily eval_family(const AstPtr& ast, std::optional<EpSet> limit) {
  const std::string name = print(*ast);
  auto check_limit = [&](const EpSet& structural) {
    if (limit && !(*limit == structural))
      throw FamilyError("declared limit " + to_expr(*limit) + " differs from the limit " + to_expr(structural) +
                        " of " + name);
  };
  if (!is_open(*ast)) {
    const EpSet a = eval(*ast);
    check_limit(a);
    SetFamily f = constant_family(a);
    f.name = name;
    return f;
  }
  if (ast->kind == NodeKind::Union) {
    for (int side = 0; side < 2; ++side) {
      const Ast& tail = *ast->children[side];
      const Ast& rest = *ast->children[1 - side];
      if (is_open(rest) || (tail.kind != NodeKind::AbsGeq && tail.kind != NodeKind::RayGeq) || !is_q(tail.numbers[0]))
        continue;
      const EpSet a = eval(rest);
      check_limit(a);
      SetFamily f = tail.kind == NodeKind::AbsGeq ? builtin_sharp_family(a) : builtin_flat_family(a);
      f.name = name;
      return f;
    }
  }
  return generic_family(name, [ast](Int q) { return eval(*ast, q); }, std::move(limit));
}

std::string to_expr(const EpSet& s) {
  if (s.is_empty()) return "fin{}";
  if (s.is_all()) return "Z";
  const Int p = s.period(), lo = s.window_lo(), hi = s.window_hi();
  std::vector<Int> both, left_only, right_only;
  for (Int r = 0; r < p; ++r) {
    if (s.left_has(r) && s.right_has(r)) both.push_back(r);
    else if (s.left_has(r)) left_only.push_back(r);
    else if (s.right_has(r)) right_only.push_back(r);
  }
  std::vector<AstPtr> pieces;
  std::vector<Int> extra, missing;
  for (Int x = lo; x <= hi; ++x) {
    const bool in_classes = std::binary_search(both.begin(), both.end(), floor_mod(x, p));
    if (in_classes && !s.contains(x)) missing.push_back(x);
    if (!in_classes && s.contains(x)) extra.push_back(x);
  }
  if (!both.empty()) {
    AstPtr classes = static_cast<Int>(both.size()) == p ? make_primitive(NodeKind::Integers) : residue_piece(p, both);
    if (!missing.empty()) classes = make_binary(NodeKind::Difference, classes, make_literal(missing));
    pieces.push_back(classes);
  }
  if (!extra.empty()) pieces.push_back(make_literal(extra));
  if (!left_only.empty()) {
    if (p == 1) {
      pieces.push_back(make_primitive(NodeKind::RayLeq, {Polynomial::constant(lo - 1)}));
    } else {
      pieces.push_back(make_binary(NodeKind::Difference, residue_piece(p, left_only),
                                   make_primitive(NodeKind::RayGeq, {Polynomial::constant(lo)})));
    }
  }
  if (!right_only.empty()) {
    if (p == 1) {
      pieces.push_back(make_primitive(NodeKind::RayGeq, {Polynomial::constant(hi + 1)}));
    } else if (right_only.size() == 1) {
      const Int first = hi + 1 + floor_mod(right_only[0] - (hi + 1), p);
      pieces.push_back(make_primitive(NodeKind::Ap, {Polynomial::constant(first), Polynomial::constant(p)}));
    } else {
      pieces.push_back(make_binary(NodeKind::Difference, residue_piece(p, right_only),
                                   make_primitive(NodeKind::RayLeq, {Polynomial::constant(hi)})));
    }
  }
  AstPtr acc = pieces[0];
  for (std::size_t i = 1; i < pieces.size(); ++i) acc = make_binary(NodeKind::Union, acc, pieces[i]);
  return print(*acc);
}

}  // namespace hfold
