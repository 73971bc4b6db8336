#pragma once

// Groebner bases over Q with pi treated as the smallest variable.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "neron/ring.hpp"

namespace neron {

struct GroebnerConfig {
  std::size_t max_pairs = 100000;
  int max_degree = 40;
};

/// A reduced Groebner basis, sorted by increasing leading monomial.  When
/// `tracked` > 0, cofactors[i] expresses basis[i] as a combination of the
/// first `tracked` input generators, modulo the ideal of the remaining ones.
struct GroebnerBasis {
  RingPtr ring;
  MonomialOrder order;
  std::vector<Poly> basis;
  std::size_t tracked = 0;
  std::vector<std::vector<Poly>> cofactors;

  bool is_unit() const;
  std::string str() const;
};

GroebnerBasis compute_groebner(const RingPtr& ring, const std::vector<Poly>& generators, const MonomialOrder& order,
                               const GroebnerConfig& config = {}, std::size_t tracked = 0);

/// Remainder of f on division by the basis.
Poly reduce(const GroebnerBasis& gb, const Poly& f);
/// Same, also returning quotients with f = sum q_i basis[i] + remainder.
Poly reduce(const GroebnerBasis& gb, const Poly& f, std::vector<Poly>& quotients);

/// A generator list with a lazily filled cache of Groebner bases.  Copies
/// share the cache; the cache never changes the ideal an object denotes.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Poly> generators = {});

  static Ideal unit(const RingPtr& ring);
  /// The ideal generated by a basis already known to be a reduced Groebner
  /// basis; the basis is cached under its order.
  static Ideal from_basis(GroebnerBasis gb);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const& { return gens_; }
  std::vector<Poly> generators() && { return std::move(gens_); }

  /// Groebner basis under `order`, computed on first use.
  const GroebnerBasis& basis(const MonomialOrder& order = MonomialOrder::grevlex(),
                             const GroebnerConfig& config = {}) const;
  /// The cached basis under `order`, if one has been computed.
  const GroebnerBasis* cached(const MonomialOrder& order) const;

  bool is_unit(const GroebnerConfig& config = {}) const;
  bool is_zero() const;
  bool contains(const Poly& f, const GroebnerConfig& config = {}) const;
  bool contains(const Ideal& other, const GroebnerConfig& config = {}) const;
  Poly reduce(const Poly& f, const GroebnerConfig& config = {}) const;

  Ideal operator+(const Ideal& other) const;
  Ideal with(const std::vector<Poly>& extra) const;
  Ideal embed(const RingPtr& target) const;
  Ideal mapped(const Substitution& s) const;

  /// Reduced grevlex basis as text; canonical for the ideal.
  std::string canonical_str(const GroebnerConfig& config = {}) const;
  std::string generators_str() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<std::unique_ptr<GroebnerBasis>> entries;
  };

  RingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

Ideal buchberger(const Ideal& I, const MonomialOrder& order, const GroebnerConfig& config = {});

/// Requires a cached basis under `order`; throws OrderMismatch otherwise.
Poly normal_form(const Poly& f, const Ideal& I, const MonomialOrder& order);

bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerConfig& config = {});

struct MembershipCertificate {
  bool member = false;
  std::vector<Poly> cofactors;
};

MembershipCertificate ideal_member(const Poly& f, const Ideal& I, const GroebnerConfig& config = {});

/// (I : f^infinity).
Ideal saturate(const Ideal& I, const Poly& f, const GroebnerConfig& config = {});

/// I intersected with the polynomial ring on the remaining variables.  The
/// result lives in a ring listing the kept variables in their original order.
Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop, const GroebnerConfig& config = {});

/// phi^{-1}(I_B + J_B) for phi: A -> B/J_B given on the variables of A.
Ideal contract(const RingPtr& source, const Substitution& phi, const Ideal& relations_b, const Ideal& ideal_b,
               const GroebnerConfig& config = {});

/// Kernel of phi: A -> B/J_B.
Ideal kernel(const RingPtr& source, const Substitution& phi, const Ideal& relations_b, const GroebnerConfig& config = {});

struct SubalgebraResult {
  enum class Outcome { Member, Absent, Undecided };
  Outcome outcome = Outcome::Undecided;
  /// Over a ring with variables z1..zk standing for the generators.
  std::optional<Poly> expression;
  std::string detail;

  bool member() const { return outcome == Outcome::Member; }
};

/// Decides whether f lies in Q[pi][gens] + J inside B.  Absent means the
/// normal form still involves B-variables; Undecided means a resource limit
/// stopped the computation.
SubalgebraResult subalgebra_member(const Poly& f, const std::vector<Poly>& gens, const Ideal& relations,
                                   const GroebnerConfig& config = {});

/// Exact division by pi^m in B/J for f with f = pi^m q mod J.
class PiDivider {
 public:
  PiDivider(Ideal relations, GroebnerConfig config = {});

  /// Returns q reduced modulo J; throws DivisionObstruction when f is not
  /// in (pi^m) + J.
  Poly divide(const Poly& f, unsigned m = 1) const;
  bool divisible(const Poly& f) const;
  const Ideal& relations() const { return relations_; }

 private:
  Ideal relations_;
  GroebnerConfig config_;
  GroebnerBasis with_pi_;
};

/// A fresh name derived from `base` not present in `taken`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace neron
