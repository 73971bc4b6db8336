#pragma once

// Randomised property suites with fixed seeds, shared by the unit tests and
// the acceptance report.

#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "neron/blowup.hpp"
#include "oracles.hpp"

namespace suites {

using namespace neron;

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(int index, const std::string& what) {
    if (failures++ == 0) first_failure = "case " + std::to_string(index) + ": " + what;
  }
  bool passed(int expected_cases) const { return failures == 0 && cases == expected_cases; }
  std::string summary() const {
    std::string s = std::to_string(cases) + " cases, " + std::to_string(failures) + " failures";
    if (failures) s += "; first: " + first_failure;
    return s;
  }
};

namespace detail {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational nonzero(Rng& rng, int bound = 3) {
  int c = pick(rng, 1, bound);
  return pick(rng, 0, 1) ? Rational(c) : Rational(-c);
}

inline std::vector<Exponents> of_degree(const RingPtr& ring, int d) {
  std::vector<Exponents> out;
  for (const auto& m : oracle::monomials_up_to(ring->slots(), d))
    if (std::accumulate(m.begin(), m.end(), 0) == d) out.push_back(m);
  return out;
}

inline Poly random_homogeneous(Rng& rng, const RingPtr& ring, int d, int terms) {
  auto mons = of_degree(ring, d);
  Poly p(ring);
  for (int t = 0; t < terms; ++t)
    p += Poly::monomial(ring, mons[pick(rng, 0, static_cast<int>(mons.size()) - 1)], nonzero(rng));
  return p;
}

inline Poly random_poly(Rng& rng, const RingPtr& ring, int max_degree, int terms) {
  Poly p(ring);
  for (int t = 0; t < terms; ++t) p += random_homogeneous(rng, ring, pick(rng, 0, max_degree), 1);
  return p;
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

}  // namespace detail

/// Random centres on G_a, G_m and products; half of the blown groups are
/// blown up once more at the identity.  Every result must pass check_hopf
/// and check_flat.
inline SuiteResult random_blowups(int count = 200, unsigned seed = 20240601) {
  using namespace detail;
  Rng rng(seed);
  const std::vector<HopfPresentation> bases{
      groups::multiplicative(), groups::additive(),
      groups::product(groups::additive("x"), groups::additive("y"), "GaGa"),
      groups::product(groups::multiplicative(), groups::additive("x"), "GmGa"),
      groups::product(groups::multiplicative("u1", "v1"), groups::multiplicative("u2", "v2"), "GmGm")};

  auto centre = [&](const HopfPresentation& g) -> Ideal {
    const RingPtr& r = g.ring;
    std::vector<Poly> gens{Poly::pi(r)};
    if (g.name == "Gm") {
      if (pick(rng, 0, 3)) gens.push_back(P("u - 1", r));
    } else if (g.name == "Ga") {
      if (pick(rng, 0, 3)) gens.push_back(P("x", r));
    } else if (g.name == "GaGa") {
      // A random line, or the origin.
      gens.push_back(Poly::var(r, "x").scaled(nonzero(rng)) + Poly::var(r, "y").scaled(nonzero(rng)));
      if (!pick(rng, 0, 2)) gens.push_back(P("x", r));
    } else if (g.name == "GmGa") {
      int c = pick(rng, 0, 2);
      if (c != 1) gens.push_back(P("u - 1", r));
      if (c != 0) gens.push_back(P("x", r));
    } else {
      // A subtorus u1^a u2^b = 1 with a, b in {-1, 0, 1}, or the origin.
      int a = pick(rng, 0, 1), b = pick(rng, -1, 1);
      if (a == 0 && b == 0) a = 1;
      Poly m = Poly::var(r, "u1").pow(static_cast<unsigned>(a));
      m *= b >= 0 ? Poly::var(r, "u2").pow(static_cast<unsigned>(b)) : Poly::var(r, "v2");
      gens.push_back(m - Poly::constant(r, 1));
      if (!pick(rng, 0, 3)) gens.push_back(P("u2 - 1", r));
    }
    return Ideal(r, gens);
  };

  SuiteResult out;
  for (int i = 0; i < count; ++i) {
    const auto& g = bases[pick(rng, 0, static_cast<int>(bases.size()) - 1)];
    Ideal c = centre(g);
    const bool twice = pick(rng, 0, 1);
    try {
      auto b = neron_blowup(g, c);
      if (twice) b = neron_blowup(b.blown, augmentation_ideal(b.blown).with({Poly::pi(b.blown.ring)}));
      Report r = check_hopf(b.blown);
      if (!r.passed()) out.fail(i, g.name + " at " + c.generators_str() + ": " + r.failures().front().check);
      if (!check_flat(b.blown)) out.fail(i, g.name + " at " + c.generators_str() + ": not flat");
    } catch (const Error& e) {
      out.fail(i, g.name + " at " + c.generators_str() + ": " + e.what());
    }
    ++out.cases;
  }
  return out;
}

/// Groebner bases in Q[x, y, pi] against brute-force linear algebra.  For
/// homogeneous ideals the degree-D part is spanned by the degree-D multiples
/// of the generators, which makes the oracle exact: the leading monomials of
/// the basis must count dim I_D, and membership must agree.
inline SuiteResult groebner_oracle(int count = 500, unsigned seed = 31337) {
  using namespace detail;
  Rng rng(seed);
  auto ring = make_ring({"x", "y"});
  SuiteResult out;
  for (int i = 0; i < count; ++i, ++out.cases) {
    const bool homogeneous = i % 2 == 0;
    std::vector<Poly> gens;
    int ngens = pick(rng, 1, 3);
    for (int k = 0; k < ngens; ++k)
      gens.push_back(homogeneous ? random_homogeneous(rng, ring, pick(rng, 1, 3), pick(rng, 1, 3))
                                 : random_poly(rng, ring, 3, pick(rng, 1, 4)));
    Ideal I(ring, gens);
    const auto& gb = I.basis();
    const std::string label = I.generators_str();

    Poly member(ring);
    for (const auto& g : gens) member += random_poly(rng, ring, 2, 2) * g;
    if (!I.contains(member)) out.fail(i, label + ": constructed member " + member.str() + " rejected");

    for (int t = 0; t < 3; ++t) {
      Poly f = random_poly(rng, ring, 3, 3);
      if (oracle::bounded_membership(f, gens, 4) && !I.contains(f))
        out.fail(i, label + ": certified member " + f.str() + " rejected");
    }

    if (!homogeneous) continue;
    for (int d = 0; d <= 4; ++d) {
      std::vector<Poly> span;
      for (const auto& g : gens) {
        int rest = d - g.total_degree();
        if (rest < 0 || g.is_zero()) continue;
        for (const auto& m : of_degree(ring, rest)) span.push_back(Poly::monomial(ring, m) * g);
      }
      std::size_t leading = 0;
      for (const auto& m : of_degree(ring, d))
        for (const auto& b : gb.basis)
          if (divides(b.leading_term(gb.order).first, m)) {
            ++leading;
            break;
          }
      if (oracle::rank(span) != leading) out.fail(i, label + ": Hilbert function differs in degree " + std::to_string(d));
    }
    for (const auto& b : gb.basis)
      if (!oracle::bounded_membership(b, gens, b.total_degree())) out.fail(i, label + ": basis element " + b.str() + " not in the ideal");
    for (int t = 0; t < 3; ++t) {
      Poly f = random_homogeneous(rng, ring, pick(rng, 1, 4), pick(rng, 1, 4));
      if (I.contains(f) != oracle::bounded_membership(f, gens, f.total_degree()).has_value())
        out.fail(i, label + ": membership of " + f.str() + " disagrees");
    }
  }
  return out;
}

/// Saturation, elimination and kernels on ideals whose answer is known in
/// closed form.
inline SuiteResult saturation_elimination(int count = 200, unsigned seed = 4242) {
  using namespace detail;
  Rng rng(seed);
  auto ring = make_ring({"x", "y"});
  auto pi = Poly::pi(ring);
  SuiteResult out;
  for (int i = 0; i < count; ++i, ++out.cases) {
    if (i % 3 == 0) {
      // J has no pi, so J[pi] is saturated and (pi^a g_1, pi^b g_2, ...) : pi^inf = J.
      std::vector<Poly> j, scaled;
      int n = pick(rng, 1, 3);
      for (int k = 0; k < n; ++k) {
        Poly g = random_poly(rng, ring, 2, pick(rng, 1, 3)).with_pi_zero();
        if (g.is_zero()) g = Poly::var(ring, "x");
        j.push_back(g);
        scaled.push_back(Poly::pi(ring, static_cast<unsigned>(pick(rng, 0, 3))) * g);
      }
      Ideal I(ring, scaled), J(ring, j);
      Ideal s = saturate(I, pi);
      if (!ideals_equal(s, J)) out.fail(i, "saturation of " + I.generators_str() + " is not " + J.generators_str());
      if (!ideals_equal(saturate(s, pi), s)) out.fail(i, "saturation of " + I.generators_str() + " is not idempotent");
      if (!s.contains(I)) out.fail(i, "saturation of " + I.generators_str() + " misses the ideal");
    } else if (i % 3 == 1) {
      // I = (x - p(y, pi), q_k(x, y, pi)) meets Q[y, pi] in (q_k(p, y, pi)).
      Poly p = random_poly(rng, ring, 2, pick(rng, 1, 3));
      while (p.uses_variable("x")) p = random_poly(rng, ring, 2, pick(rng, 1, 3));
      std::vector<Poly> gens{Poly::var(ring, "x") - p};
      auto ry = make_ring({"y"});
      Substitution sub(ring, {{"x", p}, {"y", Poly::var(ring, "y")}});
      std::vector<Poly> expected;
      int n = pick(rng, 1, 2);
      for (int k = 0; k < n; ++k) {
        Poly q = random_poly(rng, ring, 3, pick(rng, 1, 3));
        gens.push_back(q);
        expected.push_back(sub.apply(q).embed(ry));
      }
      Ideal I(ring, gens);
      Ideal E = eliminate(I, {"x"});
      Ideal want(ry, expected);
      if (!E.contains(want)) out.fail(i, "elimination of x from " + I.generators_str() + " is too small");
      if (!want.contains(E)) out.fail(i, "elimination of x from " + I.generators_str() + " is too large");
    } else {
      // a -> (c t)^i, b -> (c t)^j with gcd(i, j) = 1 has kernel (a^j - b^i).
      int a = pick(rng, 1, 4), b = pick(rng, 1, 4);
      while (std::gcd(a, b) != 1) b = pick(rng, 1, 4);
      auto src = make_ring({"a", "b"});
      auto tgt = make_ring({"t"});
      Poly t = Poly::var(tgt, "t").scaled(nonzero(rng));
      Substitution phi(tgt, {{"a", t.pow(static_cast<unsigned>(a))}, {"b", t.pow(static_cast<unsigned>(b))}});
      Ideal K = kernel(src, phi, Ideal(tgt));
      Ideal want(src, {Poly::var(src, "a").pow(static_cast<unsigned>(b)) - Poly::var(src, "b").pow(static_cast<unsigned>(a))});
      if (!ideals_equal(K, want)) out.fail(i, "kernel " + K.generators_str() + " is not " + want.generators_str());
      for (const auto& g : K.generators())
        if (!phi.apply(g).is_zero()) out.fail(i, "kernel element " + g.str() + " does not vanish");
    }
  }
  return out;
}

/// Morphisms into G whose reduction lands in the centre lift through the
/// blowup, and the lift composed with the projection gives back the morphism.
inline SuiteResult universal_lifts(int count = 50, unsigned seed = 777) {
  using namespace detail;
  Rng rng(seed);
  SuiteResult out;
  for (int i = 0; i < count; ++i, ++out.cases) {
    unsigned n = static_cast<unsigned>(pick(rng, 1, 3));
    HopfPresentation g;
    std::string centre;
    switch (i % 3) {
      case 0:
        g = groups::multiplicative();
        centre = "pi, u - 1";
        break;
      case 1:
        g = groups::additive();
        centre = "pi, x";
        break;
      default:
        g = groups::product(groups::multiplicative(), groups::additive("x"), "GmGa");
        centre = std::vector<std::string>{"pi, u - 1", "pi, x", "pi, u - 1, x"}[pick(rng, 0, 2)];
    }
    try {
      auto b = neron_blowup(g, Ideal(g.ring, parse_poly_list(centre, g.ring)));
      // Source: a truncation of the automatic blowup followed by an
      // endomorphism of g (a power on G_m, a scaling on G_a).
      auto t = automatic_truncation(g, n);
      const auto& r = g.ring;
      std::map<std::string, Poly> images;
      unsigned k = static_cast<unsigned>(pick(rng, 1, 3));
      Rational c = nonzero(rng);
      if (r->contains("u")) {
        images.emplace("u", Poly::var(r, "u").pow(k));
        images.emplace("v", Poly::var(r, "v").pow(k));
      }
      if (r->contains("x")) images.emplace("x", Poly::var(r, "x").scaled(c));
      auto m = compose(t.projection, make_morphism("endo", g, g, images));
      if (!check_morphism(m).passed()) {
        out.fail(i, "constructed morphism is not a morphism");
        continue;
      }
      auto l = lift(b, m);
      if (!check_morphism(l).passed()) out.fail(i, "lift is not a morphism");
      auto back = compose(l, b.projection);
      for (const auto& y : g.vars())
        if (!m.source.equal_mod_relations(back.pull(Poly::var(r, y)), m.pull(Poly::var(r, y))))
          out.fail(i, "lift does not recover the pullback of " + y);
    } catch (const Error& e) {
      out.fail(i, centre + ": " + e.what());
    }
  }
  return out;
}

}  // namespace suites
