#pragma once

// Schematic images, diptychs and triptychs of group morphisms.

#include <string>
#include <vector>

#include "neron/blowup.hpp"

namespace neron {

struct ImageResult {
  /// The target modulo the kernel of the pullback.
  HopfPresentation psi;
  /// psi -> target, a closed immersion.
  GroupMorphism inclusion;
  /// source -> psi.
  GroupMorphism factor;
};

ImageResult image_hopf(const GroupMorphism& rho, const GroebnerConfig& config = {});

struct Diptych {
  ImageResult image;
  /// Stage 0 is psi; stage i+1 blows up the contraction of (pi) into stage i.
  std::vector<StandardStage> stages;
  /// The last stage's centre is (pi): nothing more is divisible by pi.
  bool stabilized = false;
  /// Last stage -> psi.
  GroupMorphism prime_to_psi;

  const HopfPresentation& psi_prime() const { return stages.back().group; }
  /// source -> last stage.
  const GroupMorphism& source_to_prime() const { return stages.back().lifted; }
};

Diptych saturated_image(const GroupMorphism& rho, unsigned steps, const GroebnerConfig& config = {});

/// pi := 0 on both sides.
GroupMorphism special_fibre(const GroupMorphism& m);

struct Triptych {
  Diptych diptych;
  HopfPresentation psi_prime_k;
  HopfPresentation im_rho_k;
  HopfPresentation psi_k;
  GroupMorphism prime_to_image;
  GroupMorphism image_to_psi;
  Report checks;
  /// psi'_k -> psi_k is a closed immersion (surjective on coordinate rings).
  bool prime_embeds = false;
};

Triptych triptych(const GroupMorphism& rho, unsigned steps, const GroebnerConfig& config = {});

enum class GroupType { Trivial, Additive, Multiplicative, Unrecognised };
std::string to_string(GroupType t);

/// Recognises the special fibre of h as trivial, G_a or G_m, up to a
/// change of coordinates x -> x - epsilon(x).
GroupType recognise_group(const HopfPresentation& h, const GroebnerConfig& config = {});

struct UnipotenceResult {
  bool certified = false;
  /// Kernel of psi'_k -> Im(rho_k).
  HopfPresentation kernel;
  /// Generators y_1, y_2, ... with each y_i - epsilon(y_i) primitive modulo
  /// the Hopf subalgebra generated by the earlier ones.
  std::vector<std::string> filtration;
  std::string detail;
};

UnipotenceResult check_unipotent_kernel(const Triptych& t, const GroebnerConfig& config = {});

}  // namespace neron
