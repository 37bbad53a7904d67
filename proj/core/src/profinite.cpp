#include "cbsheaf/profinite.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace cbsheaf {

using Kind = SpaceExpr::Kind;

ExprPtr make_leaf(Kind kind, std::size_t n) {
  auto e = std::make_shared<SpaceExpr>();
  e->kind = kind;
  e->n = n;
  return e;
}

namespace {

ExprPtr make_binary(Kind kind, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<SpaceExpr>();
  e->kind = kind;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

}  // namespace

ExprPtr make_product(ExprPtr a, ExprPtr b) { return make_binary(Kind::product, std::move(a), std::move(b)); }
ExprPtr make_coproduct(ExprPtr a, ExprPtr b) {
  return make_binary(Kind::coproduct, std::move(a), std::move(b));
}

ExprPtr make_power(const ExprPtr& x, std::size_t n) {
  if (n == 0) throw Error("make_power: exponent must be at least 1");
  ExprPtr out = x;
  for (std::size_t i = 1; i < n; ++i) out = make_product(x, out);
  return out;
}

bool operator==(const SpaceExpr& a, const SpaceExpr& b) {
  if (a.kind != b.kind || a.n != b.n) return false;
  if (a.kind != Kind::product && a.kind != Kind::coproduct) return true;
  return *a.left == *b.left && *a.right == *b.right;
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::size_t nat() {
    skip();
    const std::size_t start = pos_;
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 1'000'000) fail("number too large");
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected a natural number");
    return v;
  }

  static ExprPtr fold_right(std::vector<ExprPtr> items, Kind kind) {
    ExprPtr out = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) out = make_binary(kind, items[i], out);
    return out;
  }

  ExprPtr expr() {
    std::vector<ExprPtr> items{term()};
    while (accept('+')) items.push_back(term());
    return fold_right(std::move(items), Kind::coproduct);
  }

  ExprPtr term() {
    std::vector<ExprPtr> items{factor()};
    while (accept('*')) items.push_back(factor());
    return fold_right(std::move(items), Kind::product);
  }

  ExprPtr factor() {
    ExprPtr a = atom();
    if (accept('^')) {
      const std::size_t at = pos_;
      const std::size_t n = nat();
      if (n == 0) throw ParseError(at, "exponent must be at least 1");
      return make_power(a, n);
    }
    return a;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (c == '0') {
      ++pos_;
      return make_leaf(Kind::empty);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected an atom");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view word = text_.substr(start, pos_ - start);

    if (word == "P" || word == "SZp") return make_leaf(Kind::sequence);
    if (word == "F" || word == "Fc") return make_leaf(Kind::cantor);
    if (word == "B") return make_leaf(Kind::cantor_midpoints);
    if (word == "E") return make_leaf(Kind::unbounded_coproduct);
    if (word == "SZhat") return make_leaf(Kind::zhat);
    if (word == "D" || word == "SProd") {
      expect('(');
      const std::size_t at = pos_;
      const std::size_t n = nat();
      expect(')');
      if (n == 0) {
        throw ParseError(at, word == "D" ? "D(0) is not allowed, write 0 for the empty space"
                                         : "SProd needs at least one factor");
      }
      if (word == "D") return make_leaf(Kind::discrete, n);
      return make_power(make_leaf(Kind::sequence), n);
    }
    pos_ = start;
    fail("unknown atom '" + std::string(word) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

enum class Level { expr, term, factor };

std::string print(const SpaceExpr& e, Level level);

std::string print_atom(const SpaceExpr& e) {
  switch (e.kind) {
    case Kind::empty: return "0";
    case Kind::discrete: return "D(" + std::to_string(e.n) + ")";
    case Kind::sequence: return "P";
    case Kind::cantor: return "F";
    case Kind::cantor_midpoints: return "B";
    case Kind::zhat: return "SZhat";
    case Kind::unbounded_coproduct: return "E";
    default: return "";
  }
}

std::vector<const SpaceExpr*> spine(const SpaceExpr& e, Kind kind) {
  std::vector<const SpaceExpr*> items;
  const SpaceExpr* cur = &e;
  while (cur->kind == kind) {
    items.push_back(cur->left.get());
    cur = cur->right.get();
  }
  items.push_back(cur);
  return items;
}

std::string print(const SpaceExpr& e, Level level) {
  if (e.kind == Kind::coproduct) {
    std::string out;
    for (const auto* item : spine(e, Kind::coproduct)) {
      if (!out.empty()) out += " + ";
      out += item->kind == Kind::coproduct ? "(" + print(*item, Level::expr) + ")"
                                           : print(*item, Level::term);
    }
    return level == Level::expr ? out : "(" + out + ")";
  }
  if (e.kind == Kind::product) {
    const auto items = spine(e, Kind::product);
    const bool power = std::all_of(items.begin(), items.end(),
                                   [&](const SpaceExpr* x) { return *x == *items.front(); });
    if (power && items.front()->kind != Kind::product) {
      return print(*items.front(), Level::factor) + "^" + std::to_string(items.size());
    }
    std::string out;
    for (const auto* item : items) {
      if (!out.empty()) out += " * ";
      out += print(*item, Level::factor);
    }
    return level == Level::factor ? "(" + out + ")" : out;
  }
  return print_atom(e);
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const SpaceExpr& e) { return print(e, Level::expr); }

std::string to_string(const CbRank& r) { return r.omega ? "ω" : std::to_string(r.value); }

CbSummary cb_summary(const SpaceExpr& e) {
  CbSummary s;
  switch (e.kind) {
    case Kind::empty:
      s.empty = true;
      break;
    case Kind::discrete:
      s.rank = CbRank::finite(1);
      break;
    case Kind::sequence:
      s.rank = CbRank::finite(2);
      break;
    case Kind::cantor:
    case Kind::zhat:
      s.hull_nonempty = true;
      break;
    case Kind::cantor_midpoints:
      s.rank = CbRank::finite(1);
      s.hull_nonempty = true;
      break;
    case Kind::unbounded_coproduct:
      s.rank = CbRank::infinite();
      break;
    case Kind::product: {
      const CbSummary a = cb_summary(*e.left);
      const CbSummary b = cb_summary(*e.right);
      if (a.empty || b.empty) {
        s.empty = true;
        break;
      }
      s.hull_nonempty = a.hull_nonempty || b.hull_nonempty;
      const bool a_pos = a.rank.omega || a.rank.value >= 1;
      const bool b_pos = b.rank.omega || b.rank.value >= 1;
      if (!a_pos || !b_pos) break;  // a perfect factor makes the product perfect
      if (a.rank.omega || b.rank.omega) {
        s.rank = CbRank::infinite();
      } else {
        s.rank = CbRank::finite(a.rank.value + b.rank.value - 1);
      }
      break;
    }
    case Kind::coproduct: {
      const CbSummary a = cb_summary(*e.left);
      const CbSummary b = cb_summary(*e.right);
      s.empty = a.empty && b.empty;
      s.hull_nonempty = a.hull_nonempty || b.hull_nonempty;
      if (a.rank.omega || b.rank.omega) {
        s.rank = CbRank::infinite();
      } else {
        s.rank = CbRank::finite(std::max(a.rank.value, b.rank.value));
      }
      break;
    }
  }
  s.scattered = !s.hull_nonempty;
  return s;
}

DimensionVerdict dimension_verdict(const SpaceExpr& e) {
  const CbSummary s = cb_summary(e);
  DimensionVerdict v;
  if (s.empty) {
    v.kind = VerdictKind::trivial_category;
    v.provenance = "empty space: only the zero sheaf";
  } else if (s.rank.omega) {
    v.kind = VerdictKind::infinite;
    v.citation = "ID_CB_infty";
    v.provenance = "infinite Cantor-Bendixson rank";
  } else if (s.hull_nonempty) {
    v.kind = VerdictKind::conjectured_infinite;
    v.citation = "Conject";
    v.provenance = "finite Cantor-Bendixson rank " + to_string(s.rank) + " and nonempty perfect hull";
  } else {
    v.kind = VerdictKind::exact;
    v.lower = s.rank.value - 1;
    v.upper = v.lower;
    v.citation = "ID_CB";
    v.provenance = "scattered of Cantor-Bendixson rank " + to_string(s.rank);
  }
  return v;
}

namespace {

FiniteSpace surrogate_midpoints(std::size_t branches) {
  std::vector<std::string> names{"a", "b"};
  std::vector<PointSet> nbhds(2 + branches);
  for (std::size_t i = 0; i < branches; ++i) {
    names.push_back("m" + std::to_string(i + 1));
    nbhds[2 + i] = {2 + i};
  }
  nbhds[0] = nbhds[1] = [&] {
    PointSet all(2 + branches);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }();
  return FiniteSpace::from_min_nbhd_indices(std::move(names), std::move(nbhds));
}

FiniteSpace model(const SpaceExpr& e, const ModelOptions& options, bool& surrogate_used) {
  // Covers products with an empty factor, whatever the other factor is.
  if (cb_summary(e).empty) return empty_space();
  switch (e.kind) {
    case Kind::empty: return empty_space();
    case Kind::discrete: return discrete_space(e.n);
    case Kind::sequence: return star_space(options.branches);
    case Kind::product:
      return product(model(*e.left, options, surrogate_used), model(*e.right, options, surrogate_used));
    case Kind::coproduct:
      return disjoint_union(model(*e.left, options, surrogate_used),
                            model(*e.right, options, surrogate_used));
    case Kind::cantor:
    case Kind::zhat:
    case Kind::cantor_midpoints:
      if (options.surrogate) {
        surrogate_used = true;
        return e.kind == Kind::cantor_midpoints ? surrogate_midpoints(options.branches)
                                                : indiscrete_space(2);
      }
      throw Error("not finitely modelable: " + print_expr(e) + " has a nonempty perfect hull");
    case Kind::unbounded_coproduct:
      throw Error("not finitely modelable: E has infinite Cantor-Bendixson rank");
  }
  throw Error("not finitely modelable");
}

}  // namespace

FiniteModel finite_model(const SpaceExpr& e, const ModelOptions& options) {
  if (options.branches < 2) throw Error("finite_model: branches must be at least 2");
  FiniteModel out;
  out.space = model(e, options, out.non_hausdorff);

  const CbSummary s = cb_summary(e);
  const std::size_t r = cb_rank(out.space);
  if (s.rank.omega || r != s.rank.value) {
    throw Error("finite_model: model of " + print_expr(e) + " has rank " + std::to_string(r) +
                ", expected " + to_string(s.rank));
  }
  if (decompose(out.space).hull.empty() == s.hull_nonempty) {
    throw Error("finite_model: perfect hull of the model disagrees with " + print_expr(e));
  }
  if (!is_branch_rich(out.space)) {
    throw Error("finite_model: model of " + print_expr(e) + " is not branch-rich");
  }
  return out;
}

}  // namespace cbsheaf
