#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "neron/dgal.hpp"

using namespace neron;

namespace {

using Base = Connection::Base;

Connection conn(Base base, const std::string& a) { return make_connection_text(base, {{a}}); }

Rational factorial(unsigned n) {
  Rational f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

/// sum_{nu <= n} (s pi x)^nu / nu!
Laurent truncated_exp(unsigned n, int sign) {
  Laurent out;
  for (unsigned nu = 0; nu <= n; ++nu) {
    Rational c = 1 / factorial(nu);
    if (sign < 0 && nu % 2) c = -c;
    out += Laurent::monomial(static_cast<int>(nu), Scalar::pi_power(nu, c));
  }
  return out;
}

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Precondition;
}

/// Terms of x-degree below `order`.
Laurent below(const Laurent& l, int order) {
  Laurent out;
  for (const auto& [e, c] : l.terms())
    if (e < order) out += Laurent::monomial(e, c);
  return out;
}

}  // namespace

TEST_CASE("Laurent arithmetic") {
  Laurent x = Laurent::monomial(1, Scalar(1)), xi = Laurent::monomial(-1, Scalar(1));
  CHECK(x * xi == Laurent(Scalar(1)));
  CHECK((x * x).derivative() == Laurent::monomial(1, Scalar(2)));
  CHECK(xi.derivative() == Laurent::monomial(-2, Scalar(-1)));
  CHECK(Laurent(Scalar::pi_power(2)).truncated(1).is_zero());
  CHECK((x + Laurent(Scalar(3))).at_one() == Scalar(4));
  CHECK(conn(Base::PuncturedLine, "pi*x^-1").matrix[0][0].str() == "pi*x^-1");
}

TEST_CASE("formal solutions") {
  auto y = formal_solution(conn(Base::AffineLine, "pi"), 3);
  CHECK(y[0][0] == truncated_exp(3, -1));
  CHECK(y[0][0].str() == "-1/6*pi^3*x^3 + 1/2*pi^2*x^2 - pi*x + 1");

  auto zero = formal_solution(conn(Base::AffineLine, "0"), 4);
  CHECK(zero == identity_matrix(1));

  auto nil = formal_solution(make_connection_text(Base::AffineLine, {{"0", "1"}, {"0", "0"}}), 2);
  CHECK(nil[0][0] == Laurent(Scalar(1)));
  CHECK(nil[0][1] == Laurent::monomial(1, Scalar(-1)));
  CHECK(nil[1][0].is_zero());
  CHECK(nil[1][1] == Laurent(Scalar(1)));

  CHECK(error_of([] { formal_solution(conn(Base::PuncturedLine, "pi*x^-1"), 2); }) == ErrorKind::Precondition);
}

TEST_CASE("formal solutions satisfy the equation through the truncation order") {
  const std::vector<std::vector<std::vector<std::string>>> cases{
      {{"pi"}}, {{"x + pi*x^2"}}, {{"0", "1"}, {"0", "0"}}, {{"pi", "x"}, {"1", "pi^2*x"}}, {{"1/2*x^3"}}};
  for (const auto& m : cases)
    for (unsigned order : {1u, 3u, 6u}) {
      auto c = make_connection_text(Base::AffineLine, m);
      auto y = formal_solution(c, order);
      auto ay = multiply(c.matrix, y);
      for (std::size_t i = 0; i < c.rank(); ++i)
        for (std::size_t j = 0; j < c.rank(); ++j) {
          CHECK(y[i][j].coefficient(0) == Scalar(i == j ? 1 : 0));
          CHECK(below(y[i][j].derivative() + ay[i][j], static_cast<int>(order)).is_zero());
        }
    }
}

TEST_CASE("exponential connection is trivial at every level") {
  auto c = conn(Base::AffineLine, "pi");
  for (unsigned n = 0; n <= 8; ++n) {
    auto t = triviality_mod(c, n);
    REQUIRE(t.trivial());
    CHECK((*t.gauge)[0][0] == truncated_exp(n, 1));
    for (const auto& row : horizontality_defect(c, *t.gauge, n))
      for (const auto& e : row) CHECK(e.is_zero());
  }
  // Exact identity: d/dx sum_{nu <= n} (pi x)^nu/nu! - pi * (same) = -pi^{n+1} x^n / n!.
  for (unsigned n = 0; n <= 5; ++n) {
    Laurent g = truncated_exp(n, 1);
    Laurent lhs = g.derivative() - Laurent(Scalar::pi_power(1)) * g;
    CHECK(lhs == Laurent::monomial(static_cast<int>(n), Scalar::pi_power(n + 1, -1 / factorial(n))));
  }
}

TEST_CASE("logarithmic connection is trivial mod pi only") {
  auto c = conn(Base::PuncturedLine, "pi*x^-1");
  auto t0 = triviality_mod(c, 0);
  REQUIRE(t0.trivial());
  CHECK((*t0.gauge)[0][0] == Laurent(Scalar(1)));
  auto t1 = triviality_mod(c, 1);
  CHECK(t1.status == TrivialityLevel::Status::Obstructed);
  CHECK(t1.obstruction.find("coefficient of pi^1*x^-1") == 0);
  for (unsigned n = 2; n <= 4; ++n) CHECK(triviality_mod(c, n).status == TrivialityLevel::Status::Obstructed);
}

TEST_CASE("other connections") {
  // exp(x) is not a polynomial.
  CHECK(triviality_mod(conn(Base::AffineLine, "1"), 0).status == TrivialityLevel::Status::Obstructed);
  // A log with pi^2 survives one more level.
  auto c = conn(Base::PuncturedLine, "pi^2*x^-1");
  CHECK(triviality_mod(c, 0).trivial());
  CHECK(triviality_mod(c, 1).trivial());
  CHECK(triviality_mod(c, 2).status == TrivialityLevel::Status::Obstructed);
  // An integer residue is a gauge by x^k.
  auto r = conn(Base::PuncturedLine, "2*x^-1");
  auto tr = triviality_mod(r, 2);
  REQUIRE(tr.trivial());
  CHECK((*tr.gauge)[0][0] == Laurent::monomial(2, Scalar(1)));
  // Rank two nilpotent connection with pi.
  auto n2 = make_connection_text(Base::AffineLine, {{"0", "pi"}, {"0", "0"}});
  for (unsigned n = 0; n <= 3; ++n) {
    auto t = triviality_mod(n2, n);
    REQUIRE(t.trivial());
    for (const auto& row : horizontality_defect(n2, *t.gauge, n))
      for (const auto& e : row) CHECK(e.is_zero());
  }
}

TEST_CASE("triviality is downward monotone") {
  const std::vector<std::pair<Base, std::string>> cases{
      {Base::AffineLine, "pi"},         {Base::PuncturedLine, "pi*x^-1"}, {Base::AffineLine, "pi*x^2"},
      {Base::AffineLine, "1"},          {Base::PuncturedLine, "pi^2*x^-1"}, {Base::AffineLine, "x"},
      {Base::PuncturedLine, "pi*x^-2"}, {Base::AffineLine, "pi^3 + pi*x"}};
  for (const auto& [base, a] : cases) {
    auto c = conn(base, a);
    bool seen_failure = false;
    for (unsigned n = 0; n <= 4; ++n) {
      bool t = triviality_mod(c, n).trivial();
      CHECK_FALSE((seen_failure && t));
      seen_failure |= !t;
    }
  }
}

TEST_CASE("Galois diagnostics") {
  auto e = galois_diagnostic(conn(Base::AffineLine, "pi"), 5);
  CHECK(e.trivial_through == 5);
  CHECK(e.summary.find("trivial through level 5") == 0);
  CHECK(e.summary.find("automatic blowup") != std::string::npos);

  auto l = galois_diagnostic(conn(Base::PuncturedLine, "pi*x^-1"), 5);
  CHECK(l.trivial_through == 0);
  CHECK(l.summary.find("trivial at level 0 only") == 0);
  CHECK(l.summary.find("exactly one Neron blowup") != std::string::npos);
  CHECK(l.levels[1].status == TrivialityLevel::Status::Obstructed);

  auto z = galois_diagnostic(conn(Base::AffineLine, "0"), 3);
  CHECK(z.summary == "trivial connection; Gal' = Gal = trivial group");

  auto two = galois_diagnostic(conn(Base::PuncturedLine, "pi^2*x^-1"), 4);
  CHECK(two.trivial_through == 1);
  CHECK(two.summary.find("exactly 2 Neron blowups") != std::string::npos);

  CHECK(error_of([] { galois_diagnostic(make_connection_text(Base::AffineLine, {{"0", "0"}, {"0", "0"}}), 2); }) ==
        ErrorKind::Precondition);
}

TEST_CASE("connection input errors") {
  CHECK(error_of([] { conn(Base::AffineLine, "x^-1"); }) == ErrorKind::Precondition);
  CHECK(error_of([] { conn(Base::AffineLine, "y"); }) == ErrorKind::UnknownVariable);
  CHECK(error_of([] { make_connection_text(Base::AffineLine, {{"0", "1"}}); }) == ErrorKind::ShapeMismatch);
  CHECK(error_of([] { parse_base("circle"); }) == ErrorKind::Precondition);
  CHECK(parse_base("punctured-line") == Base::PuncturedLine);
}
