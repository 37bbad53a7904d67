#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

#include "cbsheaf/error.hpp"
#include "cbsheaf/space.hpp"
#include "cbsheaf/verdict.hpp"

namespace cbsheaf {

/// Expression tree for the symbolic profinite spaces.
///
///   empty                 "0"
///   discrete(n)           "D(n)", n >= 1
///   sequence              "P", a convergent sequence with its limit
///   cantor                "F", the Cantor set
///   cantor_midpoints      "B", the Cantor set with the deleted midpoints put back
///   zhat                  "SZhat", perfect
///   product / coproduct   "a * b" / "a + b"
///   unbounded_coproduct   "E", the coproduct of all P^n
struct SpaceExpr {
  enum class Kind {
    empty,
    discrete,
    sequence,
    cantor,
    cantor_midpoints,
    zhat,
    product,
    coproduct,
    unbounded_coproduct
  };

  Kind kind = Kind::empty;
  std::size_t n = 0;
  std::shared_ptr<const SpaceExpr> left;
  std::shared_ptr<const SpaceExpr> right;
};

using ExprPtr = std::shared_ptr<const SpaceExpr>;

ExprPtr make_leaf(SpaceExpr::Kind kind, std::size_t n = 0);
ExprPtr make_product(ExprPtr a, ExprPtr b);
ExprPtr make_coproduct(ExprPtr a, ExprPtr b);
/// x^n as x * (x * (... * x)), right nested. Requires n >= 1.
ExprPtr make_power(const ExprPtr& x, std::size_t n);

bool operator==(const SpaceExpr& a, const SpaceExpr& b);

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// expr := term ('+' term)*; term := factor ('*' factor)*;
/// factor := atom ('^' nat)?; atom := '0' | 'D(' nat ')' | 'P' | 'F' | 'B' |
/// 'E' | 'SZp' | 'SZhat' | 'SProd(' nat ')' | '(' expr ')'.
/// Binary operators nest to the right. SZp and SProd(k) expand to P and P^k.
ExprPtr parse_expr(std::string_view text);

/// Minimal-parenthesis rendering; parse_expr(print_expr(e)) == e.
std::string print_expr(const SpaceExpr& e);

/// A Cantor-Bendixson rank in N ∪ {ω}.
struct CbRank {
  bool omega = false;
  std::size_t value = 0;

  static CbRank finite(std::size_t v) { return {false, v}; }
  static CbRank infinite() { return {true, 0}; }

  friend bool operator==(const CbRank&, const CbRank&) = default;
};

/// "ω" or the decimal value.
std::string to_string(const CbRank& r);

struct CbSummary {
  CbRank rank;
  bool scattered = true;
  bool hull_nonempty = false;
  bool empty = false;  ///< the expression denotes the empty space
};

CbSummary cb_summary(const SpaceExpr& e);

/// Symbolic injective dimension of the category of sheaves of Q-modules.
DimensionVerdict dimension_verdict(const SpaceExpr& e);

struct ModelOptions {
  std::size_t branches = 2;
  /// Replace perfect pieces by indiscrete clusters instead of failing.
  bool surrogate = false;
};

struct FiniteModel {
  FiniteSpace space;
  /// Perfect pieces were replaced by indiscrete clusters, so the model is
  /// not Hausdorff and only its rank is meaningful.
  bool non_hausdorff = false;
};

/// Finite space with the same Cantor-Bendixson rank: D(n) is discrete, P a
/// star with `branches` leaves, products and coproducts are taken literally.
/// Throws Error("not finitely modelable ...") for F, B, SZhat and E unless
/// a surrogate is requested (E never has one).
FiniteModel finite_model(const SpaceExpr& e, const ModelOptions& options = {});

}  // namespace cbsheaf
