// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cbsheaf/ext.hpp"
#include "cbsheaf/godement.hpp"
#include "cbsheaf/linear.hpp"
#include "cbsheaf/profinite.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cbsheaf;
using namespace cbsheaf::testkit;

namespace {

// Collects failure messages for one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::size_t cases = 0;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
};

SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }
SheafPtr share(Sheaf f) { return std::make_shared<const Sheaf>(std::move(f)); }

std::string rank_of(const std::string& text) { return to_string(cb_summary(*parse_expr(text)).rank); }

void symbolic_ranks(Outcome& o) {
  o.expect(rank_of("P") == "2", "rank(P) = " + rank_of("P"));
  for (int n = 1; n <= 6; ++n) {
    const std::string e = "P^" + std::to_string(n);
    o.expect(rank_of(e) == std::to_string(n + 1), "rank(" + e + ") = " + rank_of(e));
  }
  for (int n = 1; n <= 8; ++n) {
    const std::string e = "D(" + std::to_string(n) + ")";
    o.expect(rank_of(e) == "1", "rank(" + e + ") = " + rank_of(e));
  }
  const CbSummary b = cb_summary(*parse_expr("B"));
  o.expect(to_string(b.rank) == "1" && b.hull_nonempty, "B: rank 1 with nonempty hull");
  o.expect(rank_of("E") == "ω", "rank(E) = " + rank_of("E"));
}

void verdicts(Outcome& o) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const std::string e : {"P^" + std::to_string(n), "SProd(" + std::to_string(n) + ")"}) {
      const DimensionVerdict v = dimension_verdict(*parse_expr(e));
      o.expect(v.kind == VerdictKind::exact && v.exact() == n && v.citation == "ID_CB",
               "dim(" + e + ") = " + describe(v));
    }
  }
  const DimensionVerdict e = dimension_verdict(*parse_expr("E"));
  o.expect(e.kind == VerdictKind::infinite && e.citation == "ID_CB_infty", "dim(E) = " + describe(e));
  const DimensionVerdict b = dimension_verdict(*parse_expr("B"));
  o.expect(b.kind == VerdictKind::conjectured_infinite && b.citation == "Conject",
           "dim(B) = " + describe(b));
  for (int n = 1; n <= 6; ++n) {
    const std::string t = "D(" + std::to_string(n) + ")";
    const DimensionVerdict d = dimension_verdict(*parse_expr(t));
    o.expect(d.kind == VerdictKind::exact && d.exact() == 0u, "dim(" + t + ") = " + describe(d));
  }
}

FiniteSpace positive_rank_space(std::mt19937_64& rng, std::size_t max_points) {
  while (true) {
    FiniteSpace s = random_space(rng, max_points, 0.15);
    if (brute_rank(brute_filtration(s.size(), all_opens(s))) >= 1) return s;
  }
}

void product_rank(Outcome& o) {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const FiniteSpace a = positive_rank_space(rng, 5);
    const FiniteSpace b = positive_rank_space(rng, 5);
    const auto oa = all_opens(a);
    const auto ob = all_opens(b);
    const std::size_t ra = brute_rank(brute_filtration(a.size(), oa));
    const std::size_t rb = brute_rank(brute_filtration(b.size(), ob));
    const std::size_t brute = brute_rank(brute_filtration(a.size() * b.size(), rectangles(oa, ob, b.size())));
    const std::size_t engine = cb_rank(product(a, b));
    std::ostringstream os;
    os << "pair " << i << ": ranks " << ra << ", " << rb << ", brute product " << brute << ", engine "
       << engine;
    o.expect(brute == ra + rb - 1 && engine == brute && cb_rank(a) == ra && cb_rank(b) == rb, os.str());
  }
}

// The shared corpus for the support and Homologychar suites.
struct CorpusItem {
  SpacePtr space;
  SheafPtr sheaf;
  std::uint64_t seed;
};

std::vector<CorpusItem> corpus() {
  std::mt19937_64 rng(7);
  std::vector<CorpusItem> out;
  for (std::uint64_t i = 0; i < 100; ++i) {
    SpacePtr s = share(random_space(rng, 6, 0.15));
    out.push_back({s, share(random_sheaf(s, 2, 1000 + i)), 1000 + i});
  }
  return out;
}

void support_suite(Outcome& o) {
  for (const auto& item : corpus()) {
    const auto& s = *item.space;
    const GodementResolution r = build_resolution(item.sheaf, default_max_len(s));
    const SupportReport rep = check_support(r, to_filtration(s.size(), brute_filtration(s.size(), all_opens(s))));
    o.expect(rep.ok, "sheaf seed " + std::to_string(item.seed) + ": " +
                         std::to_string(rep.violations.size()) + " stalks nonzero off X(k)");
  }
}

void homologychar_suite(Outcome& o) {
  for (const auto& item : corpus()) {
    const auto& s = *item.space;
    const GodementResolution r = build_resolution(item.sheaf, default_max_len(s));
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (!s.is_closed_point(x)) continue;
      const HomologycharReport rep = homologychar_check(r, x);
      o.expect(rep.ok, "sheaf seed " + std::to_string(item.seed) + " at " + s.name(x));
    }
  }
}

// dim of Q^{b+1} / (diagonal + line through (1, 0, ..., 0)).
std::size_t star_ext1_oracle(std::size_t b) {
  std::vector<long long> diag(b + 1, 1);
  std::vector<long long> line(b + 1, 0);
  line[0] = 1;
  return (b + 1) - small_rank({diag, line});
}

std::size_t top_point(const FiniteSpace& s) {
  const HeightMap h = heights(s);
  std::size_t best = 0;
  for (std::size_t x = 1; x < s.size(); ++x) {
    if (*h[x] > *h[best]) best = x;
  }
  return best;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void id_cb_finite(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t b = 2; b <= 5; ++b) {
    const SpacePtr s = share(star_space(b));
    const ExtReport rep = ext_groups(share(constant_sheaf(s, 1)), s->index_of("c"), 2);
    o.expect(rep.ext_dims.at(1) == star_ext1_oracle(b) && rep.ext_dims.at(1) == b - 1,
             "star(" + std::to_string(b) + "): Ext^1 = " + std::to_string(rep.ext_dims.at(1)));
    o.expect(rep.ext_dims.at(2) == 0, "star(" + std::to_string(b) + "): Ext^2 != 0");
    const DimensionVerdict v = category_dimension(s);
    o.expect(v.exact() == 1u, "star(" + std::to_string(b) + "): category dimension " + describe(v));
  }
  FiniteSpace power = star_space(2);
  for (std::size_t n = 1; n <= 3; ++n) {
    if (n == 3) {
      const double small = seconds_since(t0);
      o.expect(small < 10, "stars and n <= 2 took " + std::to_string(small) + " s, limit 10 s");
      t0 = std::chrono::steady_clock::now();
    }
    if (n > 1) power = product(power, star_space(2));
    const SpacePtr s = share(power);
    const std::size_t top = top_point(*s);
    const ExtReport rep = ext_groups(share(constant_sheaf(s, 1)), top, n + 2);
    const std::string tag = "star(2)^" + std::to_string(n);
    o.expect(s->is_closed_point(top), tag + ": top point not closed");
    o.expect(rep.ext_dims.at(n) != 0, tag + ": Ext^n vanishes");
    for (std::size_t k = n + 1; k <= n + 2; ++k) {
      o.expect(rep.ext_dims.at(k) == 0, tag + ": Ext^" + std::to_string(k) + " != 0");
    }
    const DimensionVerdict v = category_dimension(s);
    o.expect(v.exact() == n, tag + ": category dimension " + describe(v));
  }
  const double large = seconds_since(t0);
  o.expect(large < 120, "n = 3 took " + std::to_string(large) + " s, limit 120 s");
}

void non_termination(Outcome& o) {
  const SpacePtr s = share(indiscrete_space(2));
  const Sheaf cq = constant_sheaf(s, 1);
  const GodementResolution r = build_resolution(share(cq), 6);
  o.expect(!r.terminated, "resolution reported as terminated");
  o.expect(r.length() == 6, "expected 6 terms, got " + std::to_string(r.length()));
  for (std::size_t k = 0; k < r.length(); ++k) {
    o.expect(!r.terms[k]->is_zero(), "C^" + std::to_string(k) + " is zero");
    o.expect(*r.cokers[k].sheaf == cq, "coker δ_" + std::to_string(k) + " differs from cQ");
  }
}

void injectivity_probes(Outcome& o) {
  std::mt19937_64 rng(99);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const SpacePtr s = share(random_space(rng, 5, 0.15));
    const SheafPtr a = share(random_sheaf(s, 2, 3 * i));
    const SheafPtr extra = share(random_sheaf(s, 2, 3 * i + 1));
    const SheafPtr f = share(random_sheaf(s, 2, 3 * i + 2));
    const SheafPtr c0f = share(c0(*f));

    // A -> A ⊕ extra, a ↦ (a, h(a)): a monomorphism for any h.
    const SheafMap h = random_morphism(a, extra, rng);
    const std::vector<Sheaf> parts{*a, *extra};
    const SheafPtr b = share(direct_sum(s, parts));
    std::vector<RatMatrix> comps;
    for (std::size_t x = 0; x < s->size(); ++x) {
      const std::vector<RatMatrix> blocks{RatMatrix::identity(a->stalk_dim(x)), h.comp(x)};
      comps.push_back(vstack(blocks, a->stalk_dim(x)));
    }
    const SheafMap inc(a, b, std::move(comps));
    const SheafMap phi = random_morphism(a, c0f, rng);

    const HomSpace from_b(b, c0f);
    const HomSpace from_a(a, c0f);
    RatMatrix restricted(from_a.vector_size(), from_b.dim());
    for (std::size_t k = 0; k < from_b.dim(); ++k) {
      from_a.vectorize(compose(from_b.basis_map(k), inc)).paste_into(restricted, 0, k);
    }
    const auto sol = solve(restricted, from_a.vectorize(phi));
    const std::string tag = "problem " + std::to_string(i);
    o.expect(inc.is_mono(), tag + ": inclusion not mono");
    o.expect(sol.has_value(), tag + ": no extension");
    if (sol) {
      const SheafMap psi = from_b.to_map(from_b.basis() * *sol);
      o.expect(compose(psi, inc).comps() == phi.comps(), tag + ": extension does not restrict to phi");
    }
  }
}

void skyscraper_products(Outcome& o) {
  std::mt19937_64 rng(4242);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const SpacePtr s = share(random_space(rng, 6, 0.15));
    const SheafPtr f = share(random_sheaf(s, 3, 500 + i));
    const SheafPtr c = share(c0(*f));
    const std::string tag = "sheaf " + std::to_string(i);
    try {
      const SkyscraperDecomposition d = skyscraper_decomposition(f, c);
      d.iso.validate();
      bool iso = true;
      for (const auto& m : d.iso.comps()) iso = iso && m.rows() == m.cols() && rank(m) == m.rows();
      o.expect(iso, tag + ": component not invertible");
    } catch (const std::exception& e) {
      o.expect(false, tag + ": " + e.what());
    }
  }
}

void cross_validation(Outcome& o) {
  for (const std::string text : {"P", "P^2", "P^3", "D(3)*P", "P + P^2"}) {
    const ExprPtr e = parse_expr(text);
    const CbSummary summary = cb_summary(*e);
    const DimensionVerdict symbolic = dimension_verdict(*e);
    for (std::size_t b : {2, 3}) {
      const std::string tag = text + " b=" + std::to_string(b);
      try {
        const FiniteModel m = finite_model(*e, ModelOptions{b, false});
        o.expect(cb_rank(m.space) == summary.rank.value, tag + ": model rank mismatch");
        const DimensionVerdict v = category_dimension(share(m.space));
        o.expect(v.kind == VerdictKind::exact && v.exact() == symbolic.exact(),
                 tag + ": model " + describe(v) + ", symbolic " + describe(symbolic));
      } catch (const std::exception& ex) {
        o.expect(false, tag + ": " + ex.what());
      }
    }
  }
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "symbolic ranks", 1, symbolic_ranks},
      {2, "symbolic verdicts", 1, verdicts},
      {3, "product rank on 200 random pairs", 10, product_rank},
      {4, "Godement support on 100 random sheaves", 30, support_suite},
      {5, "Homologychar on 100 random sheaves", 60, homologychar_suite},
      {6, "Ext on stars and star(2)^n, n = 1..3", 130, id_cb_finite},
      {7, "non-terminating resolution on the indiscrete pair", 1, non_termination},
      {8, "extension problems into C0", 30, injectivity_probes},
      {9, "skyscraper decomposition of C0", 10, skyscraper_products},
      {10, "finite models against symbolic verdicts", 180, cross_validation},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool ok = o.failures.empty() && in_time;
    all_ok = all_ok && ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / limit %.0f s", secs, c.limit_seconds);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << o.cases
              << " checks, " << timing << ")\n";
    for (std::size_t i = 0; i < o.failures.size() && i < 10; ++i) std::cout << "      " << o.failures[i] << '\n';
    if (!in_time) std::cout << "      exceeded time limit\n";
  }
  std::cout << (all_ok ? "all acceptance criteria passed" : "some acceptance criteria failed") << '\n';
  return all_ok ? 0 : 1;
}
