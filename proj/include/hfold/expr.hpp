#ifndef HFOLD_EXPR_HPP
#define HFOLD_EXPR_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfold/epset.hpp"
#include "hfold/family.hpp"
#include "hfold/polynomial.hpp"

namespace hfold {

enum class NodeKind {
  Literal,     // fin{...}
  Integers,    // Z
  Positive,    // N
  Nonnegative, // N0
  RayGeq,
  RayLeq,
  AbsGeq,
  Ap,
  Dilate,
  Union,
  Intersect,
  Difference,
  Complement,
  Msum,
  Hfold,  // sum(h, A)
};

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

/// Set expression. Numeric arguments are integer polynomials in q; set
/// operands are children.
struct Ast {
  NodeKind kind = NodeKind::Literal;
  std::vector<Int> elements;          // Literal
  std::vector<Polynomial> numbers;    // primitive arguments, or h for Hfold
  std::vector<AstPtr> children;

  bool operator==(const Ast& o) const;
};

AstPtr make_literal(std::vector<Int> elements);
AstPtr make_primitive(NodeKind kind, std::vector<Polynomial> numbers = {});
AstPtr make_binary(NodeKind kind, AstPtr left, AstPtr right);
AstPtr make_complement(AstPtr child);
AstPtr make_hfold(Polynomial h, AstPtr child);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Type };
  ParseError(Kind kind, std::size_t position, const std::string& message);
  Kind kind() const { return kind_; }
  /// 0-based character offset.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

AstPtr parse(const std::string& text);

/// Canonical text; parse(print(a)) == a.
std::string print(const Ast& ast);

/// Whether q occurs anywhere.
bool is_open(const Ast& ast);

/// Evaluates a closed AST, or an open one at the given q. Complements are
/// taken in Z. Throws std::invalid_argument for an open AST without q or an
/// out-of-range primitive argument.
EpSet eval(const Ast& ast, std::optional<Int> q = std::nullopt);

/// q -> eval(ast, q). "X | abs_geq(q)" and "X | ray_geq(q)" with X closed
/// become the structured sharp and flat families, a closed AST a constant
/// family. A supplied limit must agree with the structural one (FamilyError).
SetFamily eval_family(const AstPtr& ast, std::optional<EpSet> limit = std::nullopt);

/// DSL text denoting s, e.g. "fin{-1} | ap(0, 3)".
std::string to_expr(const EpSet& s);

}  // namespace hfold

#endif  // HFOLD_EXPR_HPP
