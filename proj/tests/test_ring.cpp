#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "neron/ring.hpp"

using namespace neron;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

Poly random_poly(std::mt19937& rng, const RingPtr& r, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, max_deg);
  Poly p(r);
  for (int t = 0; t < terms; ++t) {
    Exponents e(r->slots(), 0);
    for (auto& x : e) x = deg(rng) / 2;
    p += Poly::monomial(r, e, coef(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("scalar canonical form and valuation") {
  Scalar s = Scalar::pi_power(2, 3) + Scalar::pi_power(1, -1) + Scalar::pi_power(1, 1);
  CHECK(s.coefficients().size() == 1);
  CHECK(s.pi_valuation() == 2);
  CHECK(Scalar().pi_valuation() == kInfiniteValuation);
  CHECK(s.divide_pi(2) == Scalar(3));
  CHECK_THROWS_AS(s.divide_pi(3), Error);
  CHECK((Scalar::pi_power(1) * Scalar::pi_power(2)) == Scalar::pi_power(3));
  CHECK((Scalar::pi_power(3) + Scalar(1)).truncated(2) == Scalar(1));
}

TEST_CASE("pi valuation of polynomials") {
  auto r = xy();
  CHECK(P("pi^2*x + pi*y", r).pi_valuation() == 1);
  CHECK(Poly(r).pi_valuation() == kInfiniteValuation);
  CHECK(P("x + y", r).pi_valuation() == 0);
}

TEST_CASE("divide_scalar_pi") {
  auto r = make_ring({"x", "u"});
  CHECK(P("pi^2*x", r).divide_scalar_pi(2) == P("x", r));
  CHECK(P("pi*(u-1)", r).divide_scalar_pi(1) == P("u - 1", r));
  try {
    (void)P("x", r).divide_scalar_pi(1);
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDivisible);
  }
}

TEST_CASE("substitution examples") {
  auto src = make_ring({"x0"});
  auto dst = make_ring({"x1"});
  Substitution s(dst, {{"x0", P("pi*x1", dst)}});
  CHECK(s.apply(P("x0", src)) == P("pi*x1", dst));

  auto r = xy();
  Poly f = P("3*x^2*y - pi*y + 1/2", r);
  CHECK(Substitution::identity(r).apply(f) == f);

  auto u = make_ring({"u"});
  auto uu = make_ring({"u'", "u''"});
  Substitution comul(uu, {{"u", P("u'*u''", uu)}});
  CHECK(comul.apply(P("u", u)) == P("u'*u''", uu));

  Substitution partial(dst);
  try {
    (void)partial.apply(P("x0", src));
    FAIL("expected UnknownVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVariable);
  }
}

TEST_CASE("pi can be sent to zero") {
  auto r = xy();
  Substitution s = Substitution::identity(r);
  s.set_pi_image(Poly(r));
  CHECK(s.apply(P("x + pi*y + pi^2", r)) == P("x", r));
}

TEST_CASE("printing") {
  auto r = xy();
  CHECK(P("x*y - 1", r).str() == "x*y - 1");
  CHECK(P("y + x", r).str() == "x + y");
  CHECK(P("2/3*pi^2*x - x^2", r).str() == "2/3*pi^2*x - x^2");
  CHECK(Poly(r).str() == "0");
  CHECK(P("-pi", r).str() == "-pi");
}

TEST_CASE("parser features and errors") {
  auto r = xy();
  CHECK(P("(x+1)^2", r) == P("x^2 + 2*x + 1", r));
  CHECK(P("x/2", r) == P("1/2*x", r));
  CHECK(P("-(x - y)", r) == P("y - x", r));
  CHECK_THROWS_AS(P("x +", r), Error);
  CHECK_THROWS_AS(P("z", r), Error);
  CHECK_THROWS_AS(P("x^-1", r), Error);
  CHECK_THROWS_AS(P("x/y", r), Error);
  try {
    parse_poly("x +\n  * y", r, {3, 5});
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  GenericPoly g = parse_generic("pi*x^-1 + 2");
  CHECK(g.size() == 2);
  auto list = parse_poly_list("x, (x+y)*y, pi", r);
  CHECK(list.size() == 3);
  CHECK(parse_poly_list("", r).empty());
}

TEST_CASE("ring names are validated") {
  CHECK_THROWS_AS(make_ring({"pi"}), Error);
  CHECK_THROWS_AS(make_ring({"x", "x"}), Error);
  CHECK_THROWS_AS(make_ring({"1x"}), Error);
  CHECK_NOTHROW(make_ring({"x'", "x''", "xi_1"}));
}

TEST_CASE("monomial orders") {
  auto lex = MonomialOrder::lex();
  auto grl = MonomialOrder::grevlex();
  auto blk = MonomialOrder::block(1);
  // slots (x, y, pi)
  CHECK(lex.compare({1, 0, 0}, {0, 5, 0}) > 0);
  CHECK(grl.compare({1, 0, 0}, {0, 5, 0}) < 0);
  CHECK(grl.compare({1, 1, 0}, {2, 0, 0}) < 0);
  CHECK(grl.compare({0, 1, 0}, {0, 0, 1}) > 0);
  CHECK(blk.compare({1, 0, 0}, {0, 7, 3}) > 0);
  CHECK(blk.compare({0, 2, 0}, {0, 1, 1}) > 0);
}

TEST_CASE("arithmetic properties on random inputs") {
  std::mt19937 rng(12345);
  auto r = make_ring({"x", "y", "z"});
  for (int trial = 0; trial < 100; ++trial) {
    Poly a = random_poly(rng, r, 4, 4), b = random_poly(rng, r, 4, 4), c = random_poly(rng, r, 4, 3);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).pi_valuation() == a.pi_valuation() + b.pi_valuation());
    for (unsigned m = 1; m <= 8; ++m) CHECK((Poly::pi(r, m) * a).divide_scalar_pi(m) == a);
    CHECK(parse_poly(a.str(), r) == a);

    Substitution s(r, {{"x", random_poly(rng, r, 2, 2)}, {"y", random_poly(rng, r, 2, 2)}, {"z", random_poly(rng, r, 2, 2)}});
    CHECK(s.apply(a * b) == s.apply(a) * s.apply(b));
    CHECK(s.apply(a + b) == s.apply(a) + s.apply(b));
  }
}

TEST_CASE("embedding between rings matches names") {
  auto a = make_ring({"x"});
  auto b = make_ring({"y", "x"});
  CHECK(P("x^2 + pi", a).embed(b) == P("x^2 + pi", b));
  CHECK_THROWS_AS(P("y", b).embed(a), Error);
}
