#pragma once

// Finitely presented Hopf algebras over Q[pi] (or over R_n = Q[pi]/pi^{n+1})
// and morphisms between them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "neron/groebner.hpp"
#include "neron/report.hpp"

namespace neron {

/// Coordinate ring of an affine group scheme.  The tensor square lives in
/// `doubled` (variables x', x''), the tensor cube used for coassociativity in
/// `tripled` (x', x'', x''').  When `level` is set the base is R_level and
/// pi^{level+1} is an implicit relation.
struct HopfPresentation {
  std::string name;
  RingPtr ring;
  RingPtr doubled;
  RingPtr tripled;
  Ideal relations;
  Substitution comul;
  Substitution counit;
  Substitution antipode;
  std::optional<unsigned> level;
  bool flat_certified = false;

  HopfPresentation();

  /// Rebuilds the derived ideals below; call after editing any field.
  void refresh();

  const std::vector<std::string>& vars() const { return ring->names(); }
  /// The relations together with pi^{level+1} when a level is set.
  const Ideal& effective_relations() const { return effective_; }
  /// Relations in both tensor factors.
  const Ideal& doubled_relations() const { return doubled_rel_; }
  const Ideal& tripled_relations() const { return tripled_rel_; }
  /// x -> x<suffix>, from `ring` into `doubled` (or `tripled`).
  Substitution copy(const std::string& suffix, bool into_tripled = false) const;
  /// epsilon(f) as an element of Q[pi].
  Scalar counit_of(const Poly& f) const;
  Poly comul_of(const Poly& f) const { return comul.apply(f); }
  Poly antipode_of(const Poly& f) const { return antipode.apply(f); }
  bool equal_mod_relations(const Poly& a, const Poly& b, const GroebnerConfig& config = {}) const;
  Poly reduce(const Poly& f, const GroebnerConfig& config = {}) const;

 private:
  Ideal effective_;
  Ideal doubled_rel_;
  Ideal tripled_rel_;
};

/// Assembles a presentation; names absent from a structure map are errors.
HopfPresentation make_hopf(std::string name, std::vector<std::string> vars, std::vector<Poly> relations,
                           const std::map<std::string, Poly>& comul, const std::map<std::string, Poly>& counit,
                           const std::map<std::string, Poly>& antipode, std::optional<unsigned> level = std::nullopt);

/// Same, with every polynomial given as text.
HopfPresentation make_hopf_text(std::string name, std::vector<std::string> vars,
                                const std::vector<std::string>& relations,
                                const std::map<std::string, std::string>& comul,
                                const std::map<std::string, std::string>& counit,
                                const std::map<std::string, std::string>& antipode,
                                std::optional<unsigned> level = std::nullopt);

/// Rings used by a presentation on `vars`.
RingPtr doubled_ring(const Ring& ring);
RingPtr tripled_ring(const Ring& ring);
RingPtr scalar_ring();

namespace groups {
HopfPresentation multiplicative(const std::string& u = "u", const std::string& v = "v");
HopfPresentation additive(const std::string& x = "x");
HopfPresentation trivial();
/// Product of two presentations with disjoint variable names.
HopfPresentation product(const HopfPresentation& a, const HopfPresentation& b, std::string name = {});
}  // namespace groups

Report check_hopf(const HopfPresentation& h, const GroebnerConfig& config = {});

/// True iff the relation ideal is pi-saturated.  For a presentation over R_n
/// the test applies to the relations without pi^{n+1}.
bool check_flat(const HopfPresentation& h, const GroebnerConfig& config = {});
HopfPresentation certify_flat(HopfPresentation h, const GroebnerConfig& config = {});

/// Base change to k: pi := 0 in every datum, recorded as level 0.
HopfPresentation special_fibre(const HopfPresentation& h);

struct ReductionResult {
  HopfPresentation presentation;
  bool trivial = false;
  std::vector<std::string> nontrivial_witnesses;
};

ReductionResult reduce_mod(const HopfPresentation& h, unsigned n, const GroebnerConfig& config = {});

struct GroupMorphism;
/// Reduction of a morphism mod pi^{n+1}: trivial iff the pullback of the
/// target's augmentation ideal vanishes in the source over R_n, i.e. the
/// source over R_n maps onto the identity of the target.
ReductionResult reduce_mod(const GroupMorphism& m, unsigned n, const GroebnerConfig& config = {});

/// Generated by x - epsilon(x) over the variables x.
Ideal augmentation_ideal(const HopfPresentation& h);

/// Is I a Hopf ideal modulo pi^{level+1} (level 0: modulo pi)?  Without a
/// level the test is over the base of h itself.
Report check_hopf_ideal(const HopfPresentation& h, const Ideal& I, std::optional<unsigned> mod_level,
                        const GroebnerConfig& config = {});

/// A morphism source -> target given by the pullback on target variables.
struct GroupMorphism {
  std::string name;
  HopfPresentation source;
  HopfPresentation target;
  Substitution pullback;

  Poly pull(const Poly& f) const { return pullback.apply(f); }
};

GroupMorphism make_morphism(std::string name, HopfPresentation source, HopfPresentation target,
                            const std::map<std::string, Poly>& images);
GroupMorphism identity_morphism(const HopfPresentation& h);
/// first: A -> B, second: B -> C gives A -> C.
GroupMorphism compose(const GroupMorphism& first, const GroupMorphism& second);

Report check_morphism(const GroupMorphism& m, const GroebnerConfig& config = {});

/// f: A -> B and g: B -> A are mutually inverse morphisms.
Report check_isomorphism(const GroupMorphism& f, const GroupMorphism& g, const GroebnerConfig& config = {});

/// Renames variables according to `names` (old -> new); unlisted names stay.
HopfPresentation rename(const HopfPresentation& h, const std::map<std::string, std::string>& names,
                        std::string new_name = {});

std::string describe(const HopfPresentation& h, const GroebnerConfig& config = {});

}  // namespace neron
