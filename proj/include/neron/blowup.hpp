#pragma once

// Neron blowups, partial and automatic blowups, standard sequences and
// strict transforms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/hopf.hpp"

namespace neron {

/// numerator / pi^pi_power, with the numerator in the original ring.
struct Fraction {
  Poly numerator;
  unsigned pi_power = 0;

  std::string str() const;
};

struct BlowupResult {
  HopfPresentation blown;
  /// blown -> original.
  GroupMorphism projection;
  /// The ideal blown up, in the original ring.
  Ideal centre;
  /// Every blown variable as a fraction over the original ring.
  std::map<std::string, Fraction> fractions;
  /// Variables of the blown presentation that are not original variables.
  std::vector<std::string> adjoined;
};

/// Blows up the closed subgroup of the special fibre cut out by J (which
/// must contain pi).  Throws NotASubgroup, DivisionObstruction, Precondition.
BlowupResult neron_blowup(const HopfPresentation& g, const Ideal& centre, const GroebnerConfig& config = {});

/// Adjoins pi^{-(level+1)} a for the generators a of the ideal of a flat
/// closed subgroup H.
BlowupResult partial_blowup(const HopfPresentation& g, const Ideal& subgroup, unsigned level,
                            const GroebnerConfig& config = {});

/// R[G][pi^{-n} a], obtained by n successive blowups of the identity.  The
/// fractions and projection refer to G itself.
BlowupResult automatic_truncation(const HopfPresentation& g, unsigned n, const GroebnerConfig& config = {});

/// Is numerator / pi^m in the automatic blowup, i.e. is epsilon of it in R?
bool automatic_member(const Poly& numerator, unsigned m, const HopfPresentation& g);

/// The lift of m: X -> G through the blowup, from the universal property.
/// Throws LiftFailure when the pullback of some fraction is not divisible.
GroupMorphism lift(const BlowupResult& b, const GroupMorphism& m, const GroebnerConfig& config = {});

/// saturate(I_H R[G'] + relations, pi), as an ideal of the blown ring
/// containing the blown relations.
Ideal strict_transform(const BlowupResult& b, const Ideal& subgroup, const GroebnerConfig& config = {});

/// Does the reduction of m mod pi^{level+1} factor through the subgroup
/// with ideal I of the target?
Report check_factors_through(const GroupMorphism& m, const Ideal& subgroup, unsigned level,
                             const GroebnerConfig& config = {});

struct StandardStage {
  HopfPresentation group;
  /// Contraction of (pi) along the lifted morphism: the image of rho mod pi.
  Ideal centre;
  /// group -> previous group (the identity at stage 0).
  GroupMorphism projection;
  /// source of rho -> group.
  GroupMorphism lifted;
};

struct StandardSequence {
  std::vector<StandardStage> stages;
  unsigned depth = 0;
};

/// depth blowups of the standard sequence of rho, which must be injective
/// on coordinate rings.
StandardSequence standard_sequence(const GroupMorphism& rho, unsigned depth, const GroebnerConfig& config = {});

/// Repeatedly blows up H mod pi and replaces H by its strict transform,
/// checking at each stage that the new centre maps isomorphically onto the
/// previous one on special fibres.
Report check_constancy(const HopfPresentation& g, const Ideal& subgroup, unsigned depth,
                       const GroebnerConfig& config = {});

/// Rename a's variables by `names` and compare relations and structure maps
/// with b's exactly.
Report compare_presentations(const HopfPresentation& a, const HopfPresentation& b,
                             const std::map<std::string, std::string>& names, const GroebnerConfig& config = {});

/// Is k[G]/(I + pi) the coordinate ring of the identity?
bool is_identity_subgroup(const HopfPresentation& g, const Ideal& I, const GroebnerConfig& config = {});

}  // namespace neron
