#pragma once

// Connections on the affine and punctured line over Q[pi]: formal
// solutions, triviality modulo pi^{n+1} and the resulting Galois diagnostics.
// Frame convention: d(frame)/dx = -frame * A.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/ring.hpp"

namespace neron {

/// Element of Q[pi][x, 1/x]: x-exponent -> nonzero coefficient.
class Laurent {
 public:
  Laurent() = default;
  Laurent(const Scalar& s);  // NOLINT(google-explicit-constructor)

  static Laurent monomial(int x_exponent, const Scalar& coefficient);

  const std::map<int, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(int x_exponent) const;
  int min_degree() const;
  int max_degree() const;

  Laurent derivative() const;
  /// Modulo pi^{level+1}.
  Laurent truncated(unsigned level) const;
  /// Value at x = 1.
  Scalar at_one() const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::string str() const;

 private:
  void add_term(int e, const Scalar& c);
  std::map<int, Scalar> terms_;
};

using LaurentMatrix = std::vector<std::vector<Laurent>>;

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b);
LaurentMatrix identity_matrix(std::size_t r);
std::string matrix_str(const LaurentMatrix& m);

struct Connection {
  enum class Base { AffineLine, PuncturedLine };
  Base base = Base::AffineLine;
  LaurentMatrix matrix;

  std::size_t rank() const { return matrix.size(); }
  /// Largest |x-exponent| among the entries, at least 1.
  int max_degree() const;
};

std::string to_string(Connection::Base b);
/// "affine-line" or "punctured-line"; throws Precondition otherwise.
Connection::Base parse_base(const std::string& text);

/// Entries may only use x and pi; negative powers of x need the punctured line.
Connection make_connection(Connection::Base base, const GenericMatrix& entries);
Connection make_connection_text(Connection::Base base, const std::vector<std::vector<std::string>>& entries);

/// Y = sum_{m <= order} Y_m x^m with Y(0) = I and Y' = -A Y, which holds
/// through x^{order-1}.  Needs A regular at 0.
LaurentMatrix formal_solution(const Connection& c, unsigned order);

struct TrivialityLevel {
  enum class Status { Trivial, Obstructed, Undecided };
  unsigned level = 0;
  Status status = Status::Undecided;
  /// With dg/dx = g A modulo pi^{level+1}; g(0) = I on the affine line,
  /// g(1) = I on the punctured line.
  std::optional<LaurentMatrix> gauge;
  /// The first inconsistent coefficient equation, when obstructed.
  std::string obstruction;
  int degree_bound = 0;

  bool trivial() const { return status == Status::Trivial; }
};

std::string to_string(TrivialityLevel::Status s);

/// degree_bound <= 0 selects 2 (level + 1) max_degree(A).
TrivialityLevel triviality_mod(const Connection& c, unsigned level, int degree_bound = 0);

/// dg/dx - g A modulo pi^{level+1}.
LaurentMatrix horizontality_defect(const Connection& c, const LaurentMatrix& g, unsigned level);

struct GaloisDiagnostic {
  std::vector<TrivialityLevel> levels;
  /// Largest n with triviality at every level up to n; -1 when not trivial mod pi.
  int trivial_through = -1;
  std::string summary;
};

/// Rank one only.
GaloisDiagnostic galois_diagnostic(const Connection& c, unsigned max_level, int degree_bound = 0);

}  // namespace neron
