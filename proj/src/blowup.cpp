#include "neron/blowup.hpp"

#include <algorithm>
#include <regex>

namespace neron {

std::string Fraction::str() const {
  if (pi_power == 0) return numerator.str();
  return "(" + numerator.str() + ")/pi" + (pi_power == 1 ? "" : "^" + std::to_string(pi_power));
}

namespace {

Poly pi_of(const RingPtr& r, unsigned k = 1) { return Poly::pi(r, k); }

// The variable y when a = c*(y - e) for rationals c != 0 and e.
std::optional<std::string> affine_variable(const Poly& a) {
  const RingPtr& r = a.ring();
  std::optional<std::string> found;
  for (const auto& [e, c] : a.terms()) {
    int deg = 0;
    std::size_t slot = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i == r->pi_slot()) return std::nullopt;
      deg += e[i];
      slot = i;
    }
    if (deg == 0) continue;
    if (deg != 1 || found) return std::nullopt;
    found = r->name(slot);
  }
  return found;
}

// x -> x_step, x_j -> x_{j+step}.
std::string stepped_name(const std::string& base, unsigned step) {
  static const std::regex indexed("(.*)_([0-9]+)");
  std::smatch m;
  if (std::regex_match(base, m, indexed)) return m[1].str() + "_" + std::to_string(std::stoul(m[2].str()) + step);
  return base + "_" + std::to_string(step);
}

std::string new_name(const Poly& a, unsigned step, const std::string& fallback, std::vector<std::string>& taken) {
  auto v = affine_variable(a);
  std::string n = fresh_name(v ? stepped_name(*v, step) : fallback, taken);
  taken.push_back(n);
  return n;
}

Ideal with_pi(const Ideal& I, unsigned k = 1) { return I.with({pi_of(I.ring(), k)}); }

void require_flat_subgroup(const HopfPresentation& g, const Ideal& subgroup, const GroebnerConfig& config) {
  Report r = check_hopf_ideal(g, subgroup, std::nullopt, config);
  if (!r.passed()) {
    auto f = r.failures().front();
    throw Error(ErrorKind::NotASubgroup, "not a Hopf ideal over R: " + f.check + " (" + f.detail + ")");
  }
  Ideal q = g.effective_relations().with(subgroup.embed(g.ring).generators());
  Ideal sat = saturate(q, pi_of(g.ring), config);
  if (!q.contains(sat, config))
    throw Error(ErrorKind::Precondition, "the quotient by " + subgroup.generators_str() + " is not flat over R");
}

struct Adjoined {
  Poly numerator;
  unsigned k;
  std::string name;
};

// Builds R[G][num/pi^k]^sat, prunes redundant variables and induces the
// Hopf structure by division by pi.
BlowupResult build(const HopfPresentation& g, const Ideal& centre, const std::vector<Poly>& gens, unsigned k,
                   const std::string& name, const GroebnerConfig& config) {
  if (g.level) throw Error(ErrorKind::Precondition, "blowups need a presentation over R, not over R_n");

  std::vector<std::string> taken = g.vars();
  std::vector<Adjoined> xi, eta;
  for (const auto& a : gens) xi.push_back({a, k, new_name(a, k, "xi", taken)});
  for (const auto& a : gens) {
    Poly s = g.reduce(g.antipode_of(a), config);
    eta.push_back({s, k, new_name(s, k, "eta", taken)});
  }

  std::vector<std::string> names = g.vars();
  for (const auto* list : {&xi, &eta})
    for (const auto& x : *list) names.push_back(x.name);
  RingPtr big = make_ring(names);
  std::vector<Poly> ig;
  for (const auto& r : g.relations.generators()) ig.push_back(r.embed(big));
  for (const auto* list : {&xi, &eta})
    for (const auto& x : *list) ig.push_back(pi_of(big, x.k) * Poly::var(big, x.name) - x.numerator.embed(big));
  Ideal sat = saturate(Ideal(big, ig), pi_of(big), config);

  std::vector<std::string> candidates = g.vars();
  for (const auto& x : eta) candidates.push_back(x.name);
  for (auto it = xi.rbegin(); it != xi.rend(); ++it) candidates.push_back(it->name);

  std::vector<std::string> kept = names;
  std::map<std::string, Poly> expr;
  for (const auto& c : candidates) {
    std::vector<std::string> others;
    std::vector<Poly> gvars;
    for (const auto& n : kept) {
      if (n == c) continue;
      others.push_back(n);
      gvars.push_back(Poly::var(big, n));
    }
    SubalgebraResult res = subalgebra_member(Poly::var(big, c), gvars, sat, config);
    if (!res.member()) continue;
    Substitution z(big);
    for (std::size_t i = 0; i < others.size(); ++i) z.set("z" + std::to_string(i + 1), gvars[i]);
    Poly e = z.apply(*res.expression);
    Substitution back = Substitution::identity(big);
    back.set(c, e);
    for (auto& [n, p] : expr) p = back.apply(p);
    expr.emplace(c, e);
    kept.erase(std::find(kept.begin(), kept.end(), c));
  }

  std::vector<std::string> dropped;
  for (const auto& n : names)
    if (expr.count(n)) dropped.push_back(n);
  Ideal rel = eliminate(sat, dropped, config);
  RingPtr p = rel.ring();
  std::vector<Poly> relgens = rel.basis(MonomialOrder::grevlex(), config).basis;

  Substitution to_p(p);
  for (const auto& n : names) to_p.set(n, expr.count(n) ? expr.at(n).embed(p) : Poly::var(p, n));
  Substitution proj(p);
  for (const auto& y : g.vars()) proj.set(y, to_p.image(y));

  RingPtr pd = doubled_ring(*p);
  Substitution c1 = Substitution::renaming(p, pd, "'"), c2 = Substitution::renaming(p, pd, "''");
  Substitution projd(pd);
  for (const auto& y : g.vars()) {
    projd.set(y + "'", c1.apply(proj.image(y)));
    projd.set(y + "''", c2.apply(proj.image(y)));
  }
  std::vector<Poly> drel;
  for (const auto& r : relgens) {
    drel.push_back(c1.apply(r));
    drel.push_back(c2.apply(r));
  }
  PiDivider single(Ideal(p, relgens), config);
  PiDivider dbl(Ideal(pd, drel), config);

  std::map<std::string, Fraction> fractions;
  for (const auto& n : kept) {
    if (g.ring->contains(n)) {
      fractions.emplace(n, Fraction{Poly::var(g.ring, n), 0});
      continue;
    }
    for (const auto* list : {&xi, &eta})
      for (const auto& x : *list)
        if (x.name == n) fractions.emplace(n, Fraction{x.numerator, x.k});
  }

  std::map<std::string, Poly> comul, counit, antipode;
  for (const auto& n : kept) {
    const Fraction& f = fractions.at(n);
    Poly d = projd.apply(g.comul_of(f.numerator));
    Poly s = proj.apply(g.antipode_of(f.numerator));
    Scalar e = g.counit_of(f.numerator);
    try {
      comul.emplace(n, dbl.divide(d, f.pi_power));
      antipode.emplace(n, single.divide(s, f.pi_power));
      if (f.pi_power) e = e.divide_pi(f.pi_power);
    } catch (const Error& err) {
      throw Error(ErrorKind::DivisionObstruction, "structure maps on " + n + " = " + f.str() + ": " + err.what());
    }
    counit.emplace(n, Poly::from_scalar(scalar_ring(), e));
  }

  HopfPresentation blown = make_hopf(name, kept, relgens, comul, counit, antipode);
  std::vector<std::string> adjoined;
  for (const auto& n : kept)
    if (!g.ring->contains(n)) adjoined.push_back(n);
  GroupMorphism projection{"projection", blown, g, proj};
  return BlowupResult{std::move(blown), std::move(projection), centre, std::move(fractions), std::move(adjoined)};
}

Fraction compose_fraction(const Fraction& f, const std::map<std::string, Fraction>& base, const RingPtr& target) {
  const RingPtr& r = f.numerator.ring();
  long shift = 0;
  for (const auto& [e, c] : f.numerator.terms()) {
    long d = -static_cast<long>(e[r->pi_slot()]);
    for (std::size_t i = 0; i < r->size(); ++i) d += static_cast<long>(e[i]) * base.at(r->name(i)).pi_power;
    shift = std::max(shift, d);
  }
  Poly acc(target);
  for (const auto& [e, c] : f.numerator.terms()) {
    long d = static_cast<long>(e[r->pi_slot()]) + shift;
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < r->size(); ++i) {
      if (e[i] == 0) continue;
      const Fraction& b = base.at(r->name(i));
      d -= static_cast<long>(e[i]) * b.pi_power;
      t *= b.numerator.embed(target).pow(static_cast<unsigned>(e[i]));
    }
    acc += t * pi_of(target, static_cast<unsigned>(d));
  }
  unsigned total = static_cast<unsigned>(shift) + f.pi_power;
  if (acc.is_zero()) return Fraction{acc, 0};
  unsigned v = std::min(acc.pi_valuation(), total);
  return Fraction{acc.divide_scalar_pi(v), total - v};
}

}  // namespace

BlowupResult neron_blowup(const HopfPresentation& g, const Ideal& centre, const GroebnerConfig& config) {
  if (!g.flat_certified && !check_flat(g, config)) throw Error(ErrorKind::Precondition, g.name + " is not flat over R");
  Ideal j = centre.embed(g.ring);
  Ideal full = g.effective_relations().with(j.generators());
  if (!full.contains(pi_of(g.ring), config)) throw Error(ErrorKind::Precondition, "the centre must contain pi");
  Report r = check_hopf_ideal(g, j, 0u, config);
  if (!r.passed()) {
    auto f = r.failures().front();
    throw Error(ErrorKind::NotASubgroup, "centre is not a subgroup of the special fibre: " + f.check + " (" + f.detail + ")");
  }
  std::vector<Poly> gens;
  for (const auto& a : j.generators()) {
    Poly nf = g.reduce(a, config);
    if (nf.pi_valuation() >= 1) continue;
    gens.push_back(nf);
  }
  return build(g, j, gens, 1, g.name + "_bl", config);
}

BlowupResult partial_blowup(const HopfPresentation& g, const Ideal& subgroup, unsigned level,
                            const GroebnerConfig& config) {
  if (!g.flat_certified && !check_flat(g, config)) throw Error(ErrorKind::Precondition, g.name + " is not flat over R");
  Ideal h = subgroup.embed(g.ring);
  require_flat_subgroup(g, h, config);
  std::vector<Poly> gens;
  for (const auto& a : h.generators()) {
    Poly nf = g.reduce(a, config);
    if (nf.pi_valuation() >= level + 1) continue;
    gens.push_back(nf);
  }
  return build(g, with_pi(h, level + 1), gens, level + 1, g.name + "_N" + std::to_string(level), config);
}

BlowupResult automatic_truncation(const HopfPresentation& g, unsigned n, const GroebnerConfig& config) {
  std::map<std::string, Fraction> fractions;
  for (const auto& y : g.vars()) fractions.emplace(y, Fraction{Poly::var(g.ring, y), 0});
  Ideal centre = with_pi(augmentation_ideal(g));
  BlowupResult acc{g, identity_morphism(g), centre, fractions, {}};
  for (unsigned i = 0; i < n; ++i) {
    const HopfPresentation& cur = acc.blown;
    BlowupResult b = neron_blowup(cur, with_pi(augmentation_ideal(cur)), config);
    std::map<std::string, Fraction> composed;
    for (const auto& [w, f] : b.fractions) composed.emplace(w, compose_fraction(f, acc.fractions, g.ring));
    GroupMorphism proj = compose(b.projection, acc.projection);
    b.blown.name = g.name + "_t" + std::to_string(i + 1);
    proj.source = b.blown;
    proj.name = "projection";
    std::vector<std::string> adjoined;
    for (const auto& w : b.blown.vars())
      if (!g.ring->contains(w)) adjoined.push_back(w);
    acc = BlowupResult{b.blown, proj, centre, composed, adjoined};
  }
  return acc;
}

bool automatic_member(const Poly& numerator, unsigned m, const HopfPresentation& g) {
  Scalar e = g.counit_of(numerator.embed(g.ring));
  return e.pi_valuation() >= m;
}

GroupMorphism lift(const BlowupResult& b, const GroupMorphism& m, const GroebnerConfig& config) {
  const HopfPresentation& x = m.source;
  PiDivider div(x.effective_relations(), config);
  Substitution s(x.ring);
  for (const auto& w : b.blown.vars()) {
    const Fraction& f = b.fractions.at(w);
    Poly p = m.pull(f.numerator.embed(m.target.ring));
    try {
      s.set(w, f.pi_power ? div.divide(p, f.pi_power) : x.reduce(p, config));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionObstruction) throw;
      throw Error(ErrorKind::LiftFailure, "cannot lift " + m.name + ": pullback of " + f.str() + " is " + p.str() +
                                              ", not divisible by pi^" + std::to_string(f.pi_power));
    }
  }
  return GroupMorphism{m.name + "~", x, b.blown, std::move(s)};
}

Ideal strict_transform(const BlowupResult& b, const Ideal& subgroup, const GroebnerConfig& config) {
  const HopfPresentation& g = b.projection.target;
  Ideal h = subgroup.embed(g.ring);
  require_flat_subgroup(g, h, config);
  std::vector<Poly> gens = b.blown.relations.generators();
  for (const auto& a : h.generators()) gens.push_back(b.projection.pull(a));
  return saturate(Ideal(b.blown.ring, gens), pi_of(b.blown.ring), config);
}

Report check_factors_through(const GroupMorphism& m, const Ideal& subgroup, unsigned level,
                             const GroebnerConfig& config) {
  Report rep;
  Ideal rel = with_pi(m.source.effective_relations(), level + 1);
  for (const auto& a : subgroup.embed(m.target.ring).generators()) {
    Poly p = m.pull(a);
    rep.add("pullback of " + a.str() + " vanishes mod pi^" + std::to_string(level + 1), rel.contains(p, config),
            rel.reduce(p, config).str());
  }
  return rep;
}

StandardSequence standard_sequence(const GroupMorphism& rho, unsigned depth, const GroebnerConfig& config) {
  const HopfPresentation& pi_src = rho.source;
  Ideal ker = kernel(rho.target.ring, rho.pullback, pi_src.effective_relations(), config);
  for (const auto& k : ker.generators())
    if (!rho.target.effective_relations().contains(k, config))
      throw Error(ErrorKind::Precondition, "pullback of " + rho.name + " is not injective: " +
                                               rho.target.reduce(k, config).str() + " maps to zero");
  Ideal fibre(pi_src.ring, {pi_of(pi_src.ring)});
  auto centre_of = [&](const GroupMorphism& m) {
    return contract(m.target.ring, m.pullback, pi_src.effective_relations(), fibre, config);
  };

  StandardSequence seq;
  seq.depth = depth;
  seq.stages.push_back(StandardStage{rho.target, centre_of(rho), identity_morphism(rho.target), rho});
  for (unsigned i = 1; i <= depth; ++i) {
    const StandardStage& prev = seq.stages.back();
    BlowupResult b = neron_blowup(prev.group, prev.centre, config);
    b.blown.name = rho.target.name + "_s" + std::to_string(i);
    b.projection.source = b.blown;
    GroupMorphism lifted = lift(b, prev.lifted, config);
    lifted.name = rho.name + "_" + std::to_string(i);
    Ideal c = centre_of(lifted);
    seq.stages.push_back(StandardStage{b.blown, c, b.projection, lifted});
  }
  return seq;
}

Report check_constancy(const HopfPresentation& g, const Ideal& subgroup, unsigned depth,
                       const GroebnerConfig& config) {
  Report rep;
  Ideal h = subgroup.embed(g.ring);
  require_flat_subgroup(g, h, config);
  HopfPresentation cur = g;
  for (unsigned i = 1; i <= depth; ++i) {
    std::string tag = "stage " + std::to_string(i) + ": ";
    BlowupResult b = neron_blowup(cur, with_pi(h), config);
    Ideal t = strict_transform(b, h, config);
    rep.add(tag + "strict transform is a Hopf ideal", check_hopf_ideal(b.blown, t, std::nullopt, config).passed(),
            t.canonical_str(config));

    Ideal new_fibre = with_pi(t);
    Ideal old_fibre = with_pi(cur.effective_relations().with(h.generators()));
    Ideal pulled = contract(cur.ring, b.projection.pullback, new_fibre, Ideal(b.blown.ring), config);
    rep.add(tag + "centre maps injectively", ideals_equal(pulled, old_fibre, config),
            "preimage " + pulled.canonical_str(config) + " versus " + old_fibre.canonical_str(config));
    std::vector<Poly> images;
    for (const auto& y : cur.vars()) images.push_back(b.projection.pullback.image(y));
    bool onto = true;
    std::string missing;
    for (const auto& w : b.blown.vars()) {
      auto res = subalgebra_member(Poly::var(b.blown.ring, w), images, new_fibre, config);
      if (!res.member()) {
        onto = false;
        missing += (missing.empty() ? "" : ", ") + w;
      }
    }
    rep.add(tag + "centre maps surjectively", onto, missing.empty() ? "" : "not reached: " + missing);
    rep.add(tag + "centre", true, new_fibre.canonical_str(config));
    cur = b.blown;
    h = t;
  }
  return rep;
}

Report compare_presentations(const HopfPresentation& a, const HopfPresentation& b,
                             const std::map<std::string, std::string>& names, const GroebnerConfig& config) {
  Report rep;
  HopfPresentation ra = rename(a, names);
  std::vector<std::string> va = ra.vars(), vb = b.vars();
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  rep.add("same variables", va == vb);
  if (va != vb) return rep;
  Ideal rel_a = ra.effective_relations().embed(b.ring);
  rep.add("same relations", ideals_equal(rel_a, b.effective_relations(), config),
          rel_a.canonical_str(config) + " versus " + b.effective_relations().canonical_str(config));
  for (const auto& x : b.vars()) {
    Poly ca = b.doubled_relations().reduce(ra.comul.image(x).embed(b.doubled), config);
    Poly cb = b.doubled_relations().reduce(b.comul.image(x), config);
    rep.add("comultiplication on " + x, ca == cb, ca.str() + " versus " + cb.str());
    Scalar ea = ra.counit_of(Poly::var(ra.ring, x)), eb = b.counit_of(Poly::var(b.ring, x));
    rep.add("counit on " + x, ea == eb, ea.str() + " versus " + eb.str());
    Poly sa = b.reduce(ra.antipode.image(x).embed(b.ring), config);
    Poly sb = b.reduce(b.antipode.image(x), config);
    rep.add("antipode on " + x, sa == sb, sa.str() + " versus " + sb.str());
  }
  return rep;
}

bool is_identity_subgroup(const HopfPresentation& g, const Ideal& I, const GroebnerConfig& config) {
  Ideal a = with_pi(g.effective_relations().with(augmentation_ideal(g).generators()));
  Ideal b = with_pi(g.effective_relations().with(I.embed(g.ring).generators()));
  return ideals_equal(a, b, config);
}

}  // namespace neron
