#include "neron/images.hpp"

namespace neron {

namespace {

Ideal with_pi(const Ideal& I) {
  Poly pi = Poly::pi(I.ring());
  for (const auto& g : I.generators())
    if (g == pi) return I;
  return I.with({pi});
}

HopfPresentation with_relations(const HopfPresentation& h, const Ideal& rel, const std::string& name) {
  HopfPresentation out = h;
  out.name = name;
  out.relations = rel.embed(h.ring);
  out.flat_certified = false;
  out.refresh();
  return out;
}

/// Relations of the image, as a reduced basis.
Ideal image_ideal(const GroupMorphism& m, const GroebnerConfig& config) {
  Ideal ker = kernel(m.target.ring, m.pullback, m.source.effective_relations(), config);
  return Ideal(m.target.ring, ker.basis(MonomialOrder::grevlex(), config).basis);
}

GroupMorphism retarget(const GroupMorphism& m, const HopfPresentation& target, std::string name) {
  return GroupMorphism{std::move(name), m.source, target, m.pullback};
}

bool generated_by(const std::vector<std::string>& vars, const RingPtr& ring, const std::vector<Poly>& gens,
                  const Ideal& rel, const GroebnerConfig& config) {
  for (const auto& y : vars)
    if (!subalgebra_member(Poly::var(ring, y), gens, rel, config).member()) return false;
  return true;
}

}  // namespace

ImageResult image_hopf(const GroupMorphism& rho, const GroebnerConfig& config) {
  Ideal ker = image_ideal(rho, config);
  // The kernel of a map into a flat ring is pi-saturated already; saturating
  // keeps that true when the source is not certified flat.
  Ideal sat = saturate(ker, Poly::pi(ker.ring()), config);
  ImageResult out;
  out.psi = with_relations(rho.target, Ideal(sat.ring(), sat.basis(MonomialOrder::grevlex(), config).basis),
                           rho.target.name + "_img");
  out.inclusion = GroupMorphism{"incl", out.psi, rho.target, Substitution::identity(rho.target.ring)};
  out.factor = retarget(rho, out.psi, rho.name + "_img");
  return out;
}

Diptych saturated_image(const GroupMorphism& rho, unsigned steps, const GroebnerConfig& config) {
  Diptych d;
  d.image = image_hopf(rho, config);
  const Ideal& src_rel = rho.source.effective_relations();
  Ideal fibre(rho.source.ring, {Poly::pi(rho.source.ring)});
  auto centre_of = [&](const GroupMorphism& m) {
    return contract(m.target.ring, m.pullback, src_rel, fibre, config);
  };
  auto is_stable = [&](const StandardStage& s) {
    return ideals_equal(s.centre, with_pi(s.group.effective_relations()), config);
  };

  const HopfPresentation& psi = d.image.psi;
  d.stages.push_back(StandardStage{psi, centre_of(d.image.factor), identity_morphism(psi), d.image.factor});
  d.prime_to_psi = identity_morphism(psi);
  for (unsigned i = 1; i <= steps; ++i) {
    const StandardStage& prev = d.stages.back();
    if (is_stable(prev)) break;
    BlowupResult b = neron_blowup(prev.group, prev.centre, config);
    b.blown.name = psi.name + "_s" + std::to_string(i);
    b.projection.source = b.blown;
    GroupMorphism lifted = lift(b, prev.lifted, config);
    lifted.name = rho.name + "_" + std::to_string(i);
    d.prime_to_psi = compose(b.projection, d.prime_to_psi);
    Ideal c = centre_of(lifted);
    d.stages.push_back(StandardStage{b.blown, c, b.projection, lifted});
  }
  d.stabilized = is_stable(d.stages.back());
  return d;
}

GroupMorphism special_fibre(const GroupMorphism& m) {
  HopfPresentation src = special_fibre(m.source);
  HopfPresentation tgt = special_fibre(m.target);
  Substitution s(src.ring);
  for (const auto& [n, p] : m.pullback.images()) s.set(n, p.with_pi_zero().embed(src.ring));
  return GroupMorphism{m.name + "_k", std::move(src), std::move(tgt), std::move(s)};
}

Triptych triptych(const GroupMorphism& rho, unsigned steps, const GroebnerConfig& config) {
  Triptych t;
  t.diptych = saturated_image(rho, steps, config);
  const Diptych& d = t.diptych;
  t.psi_k = special_fibre(d.image.psi);
  t.psi_prime_k = special_fibre(d.psi_prime());
  t.checks.add("diptych stabilized", d.stabilized,
               d.stabilized ? "" : "after " + std::to_string(d.stages.size() - 1) + " blowups");

  GroupMorphism factor_k = special_fibre(d.image.factor);
  Ideal im = image_ideal(factor_k, config);
  t.im_rho_k = with_relations(t.psi_k, with_pi(im), rho.target.name + "_im_k");
  t.image_to_psi = GroupMorphism{"incl_k", t.im_rho_k, t.psi_k, Substitution::identity(t.psi_k.ring)};

  GroupMorphism prime_k = special_fibre(d.prime_to_psi);
  Ideal prime_image = image_ideal(prime_k, config);
  t.checks.add("image of psi'_k in psi_k equals Im(rho_k)", ideals_equal(with_pi(prime_image), with_pi(im), config),
               "image " + with_pi(prime_image).canonical_str(config) + ", Im(rho_k) " +
                   with_pi(im).canonical_str(config));
  t.prime_to_image = retarget(prime_k, t.im_rho_k, "psi'_k -> Im");
  t.checks.append(check_morphism(t.prime_to_image, config), "psi'_k -> Im(rho_k): ");
  t.checks.append(check_morphism(t.image_to_psi, config), "Im(rho_k) -> psi_k: ");

  std::vector<Poly> images;
  for (const auto& y : t.psi_k.vars()) images.push_back(prime_k.pullback.image(y));
  t.prime_embeds =
      generated_by(t.psi_prime_k.vars(), t.psi_prime_k.ring, images, t.psi_prime_k.effective_relations(), config);
  return t;
}

std::string to_string(GroupType t) {
  switch (t) {
    case GroupType::Trivial: return "trivial";
    case GroupType::Additive: return "additive";
    case GroupType::Multiplicative: return "multiplicative";
    case GroupType::Unrecognised: return "unrecognised";
  }
  return "unrecognised";
}

GroupType recognise_group(const HopfPresentation& h, const GroebnerConfig& config) {
  HopfPresentation k = special_fibre(h);
  const Ideal& rel = k.effective_relations();
  Ideal aug = augmentation_ideal(k);
  if (rel.contains(aug, config)) return GroupType::Trivial;

  Substitution first = k.copy("'"), second = k.copy("''");
  for (const auto& y : k.vars()) {
    Poly var = Poly::var(k.ring, y);
    Poly shifted = var - Poly::from_scalar(k.ring, k.counit_of(var).truncated(0));

    Poly prim = k.comul_of(shifted) - first.apply(shifted) - second.apply(shifted);
    if (k.doubled_relations().contains(prim, config) && generated_by(k.vars(), k.ring, {shifted}, rel, config)) {
      RingPtr t = make_ring({"t"});
      Substitution s(k.ring);
      s.set("t", shifted);
      if (ideals_equal(kernel(t, s, rel, config), Ideal(t, {Poly::pi(t)}), config)) return GroupType::Additive;
    }

    Poly group_like = k.comul_of(var) - first.apply(var) * second.apply(var);
    Poly inverse = k.antipode_of(var);
    if (k.doubled_relations().contains(group_like, config) && k.counit_of(var).truncated(0) == Scalar(1) &&
        generated_by(k.vars(), k.ring, {var, inverse}, rel, config)) {
      RingPtr t = make_ring({"t", "s"});
      Substitution s(k.ring);
      s.set("t", var);
      s.set("s", inverse);
      Ideal expected(t, {Poly::pi(t), parse_poly("t*s - 1", t)});
      if (ideals_equal(kernel(t, s, rel, config), expected, config)) return GroupType::Multiplicative;
    }
  }
  return GroupType::Unrecognised;
}

UnipotenceResult check_unipotent_kernel(const Triptych& t, const GroebnerConfig& config) {
  UnipotenceResult out;
  const HopfPresentation& prime = t.psi_prime_k;
  std::vector<Poly> extra;
  for (const auto& a : augmentation_ideal(t.im_rho_k).generators()) extra.push_back(t.prime_to_image.pull(a));
  out.kernel = with_relations(prime, prime.relations.with(extra), prime.name + "_ker");
  const HopfPresentation& n = out.kernel;
  const Ideal& rel = n.effective_relations();
  Substitution first = n.copy("'"), second = n.copy("''");

  auto shifted = [&](const std::string& y) {
    Poly var = Poly::var(n.ring, y);
    return var - Poly::from_scalar(n.ring, n.counit_of(var).truncated(0));
  };

  std::vector<Poly> chosen, chosen_doubled;
  std::vector<std::string> remaining = n.vars();
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<std::string> still;
    for (const auto& y : remaining)
      if (!subalgebra_member(Poly::var(n.ring, y), chosen, rel, config).member()) still.push_back(y);
    remaining = still;
    if (remaining.empty()) break;
    for (const auto& y : remaining) {
      Poly s = shifted(y);
      Poly defect = n.comul_of(s) - first.apply(s) - second.apply(s);
      if (!subalgebra_member(defect, chosen_doubled, n.doubled_relations(), config).member()) continue;
      chosen.push_back(s);
      chosen_doubled.push_back(first.apply(s));
      chosen_doubled.push_back(second.apply(s));
      out.filtration.push_back(y);
      progress = true;
      break;
    }
  }
  out.certified = remaining.empty();
  if (!out.certified) {
    std::string names;
    for (const auto& y : remaining) names += (names.empty() ? "" : ", ") + y;
    out.detail = "not decided at bound: no primitive coordinate among " + names;
  } else if (out.filtration.empty()) {
    out.detail = "the kernel is trivial";
  } else {
    std::string names;
    for (const auto& y : out.filtration) names += (names.empty() ? "" : ", ") + y;
    out.detail = "successive additive coordinates " + names;
  }
  return out;
}

}  // namespace neron
