#pragma once

// Exact arithmetic over the base ring Q[pi] and multivariate polynomials
// over it.  The uniformiser is the reserved symbol `pi`; inside a Poly it is
// stored as the last exponent slot, so a polynomial over Q[pi] in the named
// variables is at the same time a polynomial over Q in (vars..., pi).

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "neron/errors.hpp"

namespace neron {

using Rational = mpq_class;

inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// An element of Q[pi]: pi-exponent -> nonzero rational.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Scalar pi_power(unsigned exponent, const Rational& coefficient = 1);

  const std::map<unsigned, Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(unsigned exponent) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Least exponent with a nonzero coefficient; kInfiniteValuation for 0.
  unsigned pi_valuation() const;

  /// Returns s / pi^m; throws NotDivisible when pi_valuation() < m.
  Scalar divide_pi(unsigned m) const;

  /// Image in R_n = Q[pi]/(pi^{n+1}).
  Scalar truncated(unsigned level) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  std::map<unsigned, Rational> coeffs_;
};

/// Dense exponent vector: one slot per named variable, then one for pi.
using Exponents = std::vector<int>;

/// An ordered list of variable names.  `pi` is implicit and never listed.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  std::size_t slots() const { return names_.size() + 1; }
  std::size_t pi_slot() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
bool same_ring(const RingPtr& a, const RingPtr& b);

/// Monomial orders.  Pi always sits in the last slot and is therefore the
/// smallest variable.  BlockLex compares the first `split` slots by graded
/// reverse lex, and breaks ties by graded reverse lex on the remaining slots.
struct MonomialOrder {
  enum class Kind { Lex, GRevLex, BlockLex };

  Kind kind = Kind::GRevLex;
  std::size_t split = 0;

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::GRevLex, 0}; }
  static MonomialOrder block(std::size_t split) { return {Kind::BlockLex, split}; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Exponents& a, const Exponents& b) const;
  std::string str() const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind == b.kind && (a.kind != Kind::BlockLex || a.split == b.split);
  }
  friend bool operator!=(const MonomialOrder& a, const MonomialOrder& b) { return !(a == b); }
};

/// Multivariate polynomial over Q[pi] in the variables of a Ring.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Poly(RingPtr ring);
  Poly(RingPtr ring, TermMap terms);

  static Poly constant(RingPtr ring, const Rational& value);
  static Poly from_scalar(RingPtr ring, const Scalar& value);
  static Poly pi(RingPtr ring, unsigned exponent = 1);
  static Poly var(RingPtr ring, std::string_view name);
  static Poly monomial(RingPtr ring, Exponents exponents, const Rational& coefficient = 1);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// True when no named variable occurs (an element of Q[pi]).
  bool is_scalar() const;
  Scalar to_scalar() const;
  int total_degree() const;
  bool uses_slot(std::size_t slot) const;
  bool uses_variable(std::string_view name) const;

  unsigned pi_valuation() const;
  /// Exact division by pi^m, term by term; throws NotDivisible.
  Poly divide_scalar_pi(unsigned m) const;
  /// Drops terms whose pi exponent exceeds `level` (reduction into R_level).
  Poly truncated(unsigned level) const;
  Poly with_pi_zero() const { return truncated(0); }

  /// Coefficient of a monomial in the named variables, as an element of Q[pi].
  Scalar coefficient(const Exponents& var_exponents) const;

  std::pair<Exponents, Rational> leading_term(const MonomialOrder& order) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly scaled(const Rational& factor) const;
  Poly pow(unsigned exponent) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// The same polynomial viewed in another ring, matching variables by name.
  Poly embed(const RingPtr& target) const;

  std::string str() const;

 private:
  void check_ring(const Poly& other) const;

  RingPtr ring_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// An algebra map given on generators: variable name -> image in `target`.
/// Pi is sent to pi unless `pi_image` is set (used for pi := 0).
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(RingPtr target) : target_(std::move(target)) {}
  Substitution(RingPtr target, std::map<std::string, Poly> images);

  static Substitution identity(const RingPtr& ring);
  /// x -> x<suffix> for every variable of `source`, into `target`.
  static Substitution renaming(const RingPtr& source, const RingPtr& target, const std::string& suffix);

  const RingPtr& target() const { return target_; }
  const std::map<std::string, Poly>& images() const { return images_; }
  bool has_image(const std::string& name) const { return images_.count(name) != 0; }
  const Poly& image(const std::string& name) const;

  void set(const std::string& name, Poly image);
  void set_pi_image(Poly image);

  /// Homomorphic image of f; throws UnknownVariable when a variable of f has
  /// no image.
  Poly apply(const Poly& f) const;

 private:
  RingPtr target_;
  std::map<std::string, Poly> images_;
  std::optional<Poly> pi_image_;
};

// Polynomial text syntax --------------------------------------------------

/// Where a parsed fragment sits in its enclosing text, for error positions.
struct SourcePos {
  int line = 1;
  int column = 1;
};

/// A polynomial over Q with named variables and signed exponents, produced
/// by the parser before it is placed in a ring.  `pi` appears by name.
using GenericMonomial = std::vector<std::pair<std::string, int>>;
using GenericPoly = std::map<GenericMonomial, Rational>;
using GenericMatrix = std::vector<std::vector<GenericPoly>>;

GenericPoly parse_generic(std::string_view text, SourcePos origin = {});
Poly to_poly(const GenericPoly& g, const RingPtr& ring, SourcePos origin = {});
Poly parse_poly(std::string_view text, const RingPtr& ring, SourcePos origin = {});
/// Comma separated list of polynomials.
std::vector<Poly> parse_poly_list(std::string_view text, const RingPtr& ring, SourcePos origin = {});

std::string rational_str(const Rational& q);
/// Canonical text of a parsed polynomial; parse_generic inverts it.
std::string generic_str(const GenericPoly& g);

}  // namespace neron
