#pragma once

// Comodule matrices and the faithful representations of Neron blowups.
// Convention: Delta(a_ij) = sum_k a_ik' a_kj'' and epsilon(a_ij) = delta_ij.

#include <optional>
#include <string>
#include <vector>

#include "neron/blowup.hpp"

namespace neron {

using PolyMatrix = std::vector<std::vector<Poly>>;

struct RepMatrix {
  HopfPresentation group;
  PolyMatrix entries;
  /// det * det_inverse = 1 modulo the relations.
  Poly det_inverse;

  std::size_t size() const { return entries.size(); }
  const Poly& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
  std::string str() const;
};

Poly determinant(const PolyMatrix& m, const RingPtr& ring);
PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const RingPtr& ring);
std::string matrix_str(const PolyMatrix& m);

/// Entries are embedded into the group ring.  Without a witness the inverse
/// of the determinant is found by an ideal membership certificate; throws
/// Precondition when the determinant is not a unit.
RepMatrix make_rep(const HopfPresentation& group, PolyMatrix entries, std::optional<Poly> det_inverse = std::nullopt,
                   const GroebnerConfig& config = {});
RepMatrix make_rep_text(const HopfPresentation& group, const std::vector<std::vector<std::string>>& entries,
                        std::optional<std::string> det_inverse = std::nullopt);

Report validate_rep(const RepMatrix& v, const GroebnerConfig& config = {});

/// V pulled back along m: X -> G.
RepMatrix pullback_rep(const RepMatrix& v, const GroupMorphism& m, const GroebnerConfig& config = {});
RepMatrix direct_sum(const RepMatrix& a, const RepMatrix& b, const GroebnerConfig& config = {});

/// [[a_ij, (a_ij - delta_ij)/pi], [0, I]] over the blowup of the identity.
RepMatrix identity_blowup_rep(const RepMatrix& v, const BlowupResult& b, const GroebnerConfig& config = {});

/// (pi beta^{-1}) (V + 1) beta = pi V' with beta = [[pi I, I], [0, I]], checked
/// over the generic fibre (relations saturated by pi).
Report check_conjugation(const RepMatrix& v, const RepMatrix& blown, const BlowupResult& b,
                         const GroebnerConfig& config = {});

/// (pi, a_ic for i != c), the ideal of the stabilizer of the line through the
/// c-th basis vector (c counted from 0).
Ideal stabilizer_ideal(const RepMatrix& v, std::size_t column = 0);

/// V x_{V_k} E for a cover E of the line through the first basis vector.
/// Without E the trivial character is used, which needs the blowup to be
/// at the stabilizer of the vector.  Throws ShapeMismatch when the first row
/// of E is not a_11 + pi c_11, pi c_12, ..., and DivisionObstruction when a
/// needed division fails.
RepMatrix line_blowup_rep(const RepMatrix& v, const BlowupResult& b, const std::optional<RepMatrix>& e = std::nullopt,
                          const GroebnerConfig& config = {});

struct RescaledRep {
  RepMatrix rescaled;
  /// V + V', faithful when V is.
  RepMatrix sum;
};

/// First row (a_11, pi a_12, ...), first column (a_11, a_21/pi, ...).
RescaledRep rescaled_rep(const RepMatrix& v, const BlowupResult& b, const GroebnerConfig& config = {});

/// rho + sigma over G' for G' the blowup of G at H_k, H the kernel of the
/// quotient q: G -> A, and sigma a representation of the blowup of the
/// identity of A.
RepMatrix sum_faithful(const RepMatrix& rho, const RepMatrix& sigma, const BlowupResult& b, const GroupMorphism& q,
                       const BlowupResult& a_blowup, const GroebnerConfig& config = {});

enum class Faithfulness { Faithful, NotAtBound, Fail };
std::string to_string(Faithfulness f);

struct FaithfulnessResult {
  Faithfulness verdict = Faithfulness::Fail;
  /// One line per group variable: how it is generated, or why not.
  std::vector<std::string> details;
};

/// Do the entries and the inverse determinant generate the coordinate ring?
FaithfulnessResult verify_faithful(const RepMatrix& v, const GroebnerConfig& config = {});

struct ConormalData {
  /// Normal forms spanning I/(aI + relations) over k.
  std::vector<Poly> basis;
  /// The action of H_0 = V(I) on that space by right conjugation.
  std::optional<RepMatrix> action;
};

/// Conormal representation of the subgroup cut out by I in a group over k
/// (a special fibre; pi is set to zero).
ConormalData conormal_rep(const HopfPresentation& gk, const Ideal& subgroup, const GroebnerConfig& config = {});

}  // namespace neron
