#include "neron/hopf.hpp"

#include <algorithm>
#include <sstream>

namespace neron {

namespace {

RingPtr suffixed_ring(const Ring& ring, const std::vector<std::string>& suffixes) {
  std::vector<std::string> names;
  for (const auto& s : suffixes)
    for (const auto& n : ring.names()) names.push_back(n + s);
  return make_ring(names);
}

Poly pi_power(const RingPtr& r, unsigned level) {
  return Poly::pi(r, level + 1);
}

std::string nf_witness(const Ideal& rel, const Poly& f, const GroebnerConfig& config) {
  return rel.reduce(f, config).str();
}

}  // namespace

RingPtr doubled_ring(const Ring& ring) {
  return suffixed_ring(ring, {"'", "''"});
}

RingPtr tripled_ring(const Ring& ring) {
  return suffixed_ring(ring, {"'", "''", "'''"});
}

RingPtr scalar_ring() {
  static const RingPtr r = make_ring({});
  return r;
}

HopfPresentation::HopfPresentation()
    : ring(scalar_ring()),
      doubled(scalar_ring()),
      tripled(scalar_ring()),
      relations(scalar_ring()),
      comul(scalar_ring()),
      counit(scalar_ring()),
      antipode(scalar_ring()),
      effective_(scalar_ring()),
      doubled_rel_(scalar_ring()),
      tripled_rel_(scalar_ring()) {}

void HopfPresentation::refresh() {
  std::vector<Poly> eff = relations.generators();
  if (level) eff.push_back(pi_power(ring, *level));
  effective_ = Ideal(ring, eff);

  std::vector<Poly> dbl;
  for (const char* s : {"'", "''"}) {
    Substitution c = copy(s);
    for (const auto& g : relations.generators()) dbl.push_back(c.apply(g));
  }
  if (level) dbl.push_back(pi_power(doubled, *level));
  doubled_rel_ = Ideal(doubled, dbl);

  std::vector<Poly> tpl;
  for (const char* s : {"'", "''", "'''"}) {
    Substitution c = copy(s, true);
    for (const auto& g : relations.generators()) tpl.push_back(c.apply(g));
  }
  if (level) tpl.push_back(pi_power(tripled, *level));
  tripled_rel_ = Ideal(tripled, tpl);
}

Substitution HopfPresentation::copy(const std::string& suffix, bool into_tripled) const {
  return Substitution::renaming(ring, into_tripled || suffix == "'''" ? tripled : doubled, suffix);
}

Scalar HopfPresentation::counit_of(const Poly& f) const {
  Scalar s = counit.apply(f).to_scalar();
  return level ? s.truncated(*level) : s;
}

bool HopfPresentation::equal_mod_relations(const Poly& a, const Poly& b, const GroebnerConfig& config) const {
  return effective_.contains(a.embed(ring) - b.embed(ring), config);
}

Poly HopfPresentation::reduce(const Poly& f, const GroebnerConfig& config) const {
  return effective_.reduce(f, config);
}

HopfPresentation make_hopf(std::string name, std::vector<std::string> vars, std::vector<Poly> relations,
                           const std::map<std::string, Poly>& comul, const std::map<std::string, Poly>& counit,
                           const std::map<std::string, Poly>& antipode, std::optional<unsigned> level) {
  for (const auto& v : vars)
    if (v.find('\'') != std::string::npos)
      throw Error(ErrorKind::Precondition, "variable '" + v + "' may not carry primes outside comultiplication images");
  HopfPresentation h;
  h.name = std::move(name);
  h.ring = make_ring(std::move(vars));
  h.doubled = doubled_ring(*h.ring);
  h.tripled = tripled_ring(*h.ring);
  h.level = level;
  for (auto& r : relations) r = r.embed(h.ring);
  h.relations = Ideal(h.ring, std::move(relations));

  auto fill = [&](const char* what, const std::map<std::string, Poly>& images, const RingPtr& target) {
    Substitution s(target);
    for (const auto& [n, p] : images) {
      if (!h.ring->contains(n))
        throw Error(ErrorKind::UnknownVariable, std::string(what) + " given on unknown variable '" + n + "'");
      s.set(n, p.embed(target));
    }
    for (const auto& n : h.ring->names())
      if (!s.has_image(n)) throw Error(ErrorKind::Precondition, std::string(what) + " has no image for '" + n + "'");
    return s;
  };
  h.comul = fill("comultiplication", comul, h.doubled);
  h.counit = fill("counit", counit, scalar_ring());
  h.antipode = fill("antipode", antipode, h.ring);
  h.refresh();
  return h;
}

HopfPresentation make_hopf_text(std::string name, std::vector<std::string> vars,
                                const std::vector<std::string>& relations,
                                const std::map<std::string, std::string>& comul,
                                const std::map<std::string, std::string>& counit,
                                const std::map<std::string, std::string>& antipode, std::optional<unsigned> level) {
  RingPtr r = make_ring(vars);
  RingPtr d = doubled_ring(*r);
  std::vector<Poly> rel;
  for (const auto& s : relations) rel.push_back(parse_poly(s, r));
  std::map<std::string, Poly> c, e, a;
  for (const auto& [n, s] : comul) c.emplace(n, parse_poly(s, d));
  for (const auto& [n, s] : counit) e.emplace(n, parse_poly(s, scalar_ring()));
  for (const auto& [n, s] : antipode) a.emplace(n, parse_poly(s, r));
  return make_hopf(std::move(name), std::move(vars), std::move(rel), c, e, a, level);
}

namespace groups {

HopfPresentation multiplicative(const std::string& u, const std::string& v) {
  return make_hopf_text("Gm", {u, v}, {u + "*" + v + " - 1"},
                        {{u, u + "'*" + u + "''"}, {v, v + "'*" + v + "''"}}, {{u, "1"}, {v, "1"}},
                        {{u, v}, {v, u}});
}

HopfPresentation additive(const std::string& x) {
  return make_hopf_text("Ga", {x}, {}, {{x, x + "' + " + x + "''"}}, {{x, "0"}}, {{x, "-" + x}});
}

HopfPresentation trivial() {
  return make_hopf_text("E", {}, {}, {}, {}, {});
}

HopfPresentation product(const HopfPresentation& a, const HopfPresentation& b, std::string name) {
  std::vector<std::string> vars = a.vars();
  for (const auto& n : b.vars()) {
    if (a.ring->contains(n)) throw Error(ErrorKind::Precondition, "product factors share variable '" + n + "'");
    vars.push_back(n);
  }
  RingPtr r = make_ring(vars);
  RingPtr d = doubled_ring(*r);
  std::vector<Poly> rel;
  for (const auto* f : {&a, &b})
    for (const auto& g : f->relations.generators()) rel.push_back(g.embed(r));
  std::map<std::string, Poly> c, e, s;
  for (const auto* f : {&a, &b}) {
    for (const auto& n : f->vars()) {
      c.emplace(n, f->comul.image(n).embed(d));
      e.emplace(n, f->counit.image(n));
      s.emplace(n, f->antipode.image(n).embed(r));
    }
  }
  std::optional<unsigned> level = a.level;
  if (b.level) level = level ? std::min(*level, *b.level) : b.level;
  return make_hopf(name.empty() ? a.name + "x" + b.name : std::move(name), vars, rel, c, e, s, level);
}

}  // namespace groups

Report check_hopf(const HopfPresentation& h, const GroebnerConfig& config) {
  Report rep;
  const Ideal& rel = h.effective_relations();
  const Ideal& drel = h.doubled_relations();
  const Ideal& trel = h.tripled_relations();

  for (const auto& x : h.vars()) {
    Poly xv = Poly::var(h.ring, x);
    Poly dx = h.comul.image(x);
    Poly eps = Poly::from_scalar(h.ring, h.counit_of(xv));

    Substitution left(h.ring), right(h.ring), sl(h.ring), sr(h.ring);
    for (const auto& y : h.vars()) {
      Poly yv = Poly::var(h.ring, y);
      Poly ey = Poly::from_scalar(h.ring, h.counit_of(yv));
      Poly sy = h.antipode.image(y);
      left.set(y + "'", ey);
      left.set(y + "''", yv);
      right.set(y + "'", yv);
      right.set(y + "''", ey);
      sl.set(y + "'", sy);
      sl.set(y + "''", yv);
      sr.set(y + "'", yv);
      sr.set(y + "''", sy);
    }
    Poly d1 = left.apply(dx) - xv;
    rep.add("counit-left(" + x + ")", rel.contains(d1, config), nf_witness(rel, d1, config));
    Poly d2 = right.apply(dx) - xv;
    rep.add("counit-right(" + x + ")", rel.contains(d2, config), nf_witness(rel, d2, config));

    // (Delta (x) id) Delta versus (id (x) Delta) Delta in the triple copy.
    Substitution outer_left(h.tripled), outer_right(h.tripled);
    Substitution to12(h.tripled), to23(h.tripled);
    for (const auto& y : h.vars()) {
      to12.set(y + "'", Poly::var(h.tripled, y + "'"));
      to12.set(y + "''", Poly::var(h.tripled, y + "''"));
      to23.set(y + "'", Poly::var(h.tripled, y + "''"));
      to23.set(y + "''", Poly::var(h.tripled, y + "'''"));
    }
    for (const auto& y : h.vars()) {
      outer_left.set(y + "'", to12.apply(h.comul.image(y)));
      outer_left.set(y + "''", Poly::var(h.tripled, y + "'''"));
      outer_right.set(y + "'", Poly::var(h.tripled, y + "'"));
      outer_right.set(y + "''", to23.apply(h.comul.image(y)));
    }
    Poly d3 = outer_left.apply(dx) - outer_right.apply(dx);
    rep.add("coassociativity(" + x + ")", trel.contains(d3, config), nf_witness(trel, d3, config));

    Poly d4 = sl.apply(dx) - eps;
    rep.add("antipode-left(" + x + ")", rel.contains(d4, config), nf_witness(rel, d4, config));
    Poly d5 = sr.apply(dx) - eps;
    rep.add("antipode-right(" + x + ")", rel.contains(d5, config), nf_witness(rel, d5, config));
  }

  std::size_t k = 0;
  for (const auto& r : h.relations.generators()) {
    std::string tag = "relation " + std::to_string(++k) + " [" + r.str() + "]";
    Poly dr = h.comul.apply(r);
    rep.add("comultiplication well-defined on " + tag, drel.contains(dr, config), nf_witness(drel, dr, config));
    Scalar er = h.counit_of(r);
    rep.add("counit well-defined on " + tag, er.is_zero(), er.str());
    Poly sr = h.antipode.apply(r);
    rep.add("antipode well-defined on " + tag, rel.contains(sr, config), nf_witness(rel, sr, config));
  }

  if (h.flat_certified) rep.add("flatness", check_flat(h, config), "relations are not pi-saturated");
  return rep;
}

bool check_flat(const HopfPresentation& h, const GroebnerConfig& config) {
  const Ideal& rel = h.relations;
  if (rel.is_zero()) return true;
  Ideal sat = saturate(rel, Poly::pi(h.ring), config);
  return rel.contains(sat, config);
}

HopfPresentation certify_flat(HopfPresentation h, const GroebnerConfig& config) {
  h.flat_certified = check_flat(h, config);
  return h;
}

HopfPresentation special_fibre(const HopfPresentation& h) {
  auto kill_pi = [](const RingPtr& r) {
    Substitution s = Substitution::identity(r);
    s.set_pi_image(Poly(r));
    return s;
  };
  Substitution kr = kill_pi(h.ring), kd = kill_pi(h.doubled), ks = kill_pi(scalar_ring());
  std::vector<Poly> rel;
  for (const auto& g : h.relations.generators()) rel.push_back(kr.apply(g));
  std::map<std::string, Poly> c, e, s;
  for (const auto& x : h.vars()) {
    c.emplace(x, kd.apply(h.comul.image(x)));
    e.emplace(x, ks.apply(h.counit.image(x)));
    s.emplace(x, kr.apply(h.antipode.image(x)));
  }
  HopfPresentation out = make_hopf(h.name + "_k", h.vars(), rel, c, e, s, 0u);
  return out;
}

ReductionResult reduce_mod(const HopfPresentation& h, unsigned n, const GroebnerConfig& config) {
  ReductionResult res;
  res.presentation = h;
  res.presentation.level = h.level ? std::min(*h.level, n) : n;
  res.presentation.name = h.name + "_R" + std::to_string(*res.presentation.level);
  res.presentation.flat_certified = false;
  res.presentation.refresh();
  const Ideal& rel = res.presentation.effective_relations();
  res.trivial = true;
  for (const auto& g : augmentation_ideal(res.presentation).generators()) {
    if (!rel.contains(g, config)) {
      res.trivial = false;
      res.nontrivial_witnesses.push_back(g.str() + " reduces to " + rel.reduce(g, config).str());
    }
  }
  return res;
}

ReductionResult reduce_mod(const GroupMorphism& m, unsigned n, const GroebnerConfig& config) {
  ReductionResult res = reduce_mod(m.source, n, config);
  const Ideal& rel = res.presentation.effective_relations();
  res.trivial = true;
  res.nontrivial_witnesses.clear();
  for (const auto& g : augmentation_ideal(m.target).generators()) {
    Poly p = m.pull(g);
    if (!rel.contains(p, config)) {
      res.trivial = false;
      res.nontrivial_witnesses.push_back("pullback of " + g.str() + " reduces to " + rel.reduce(p, config).str());
    }
  }
  return res;
}

Ideal augmentation_ideal(const HopfPresentation& h) {
  std::vector<Poly> gens;
  for (const auto& x : h.vars()) {
    Poly xv = Poly::var(h.ring, x);
    gens.push_back(xv - Poly::from_scalar(h.ring, h.counit_of(xv)));
  }
  return Ideal(h.ring, gens);
}

Report check_hopf_ideal(const HopfPresentation& h, const Ideal& I, std::optional<unsigned> mod_level,
                        const GroebnerConfig& config) {
  Report rep;
  std::vector<Poly> base = h.effective_relations().generators();
  std::vector<Poly> dbase = h.doubled_relations().generators();
  if (mod_level) {
    base.push_back(Poly::pi(h.ring, *mod_level + 1));
    dbase.push_back(Poly::pi(h.doubled, *mod_level + 1));
  }
  std::vector<Poly> ig;
  for (const auto& g : I.generators()) ig.push_back(g.embed(h.ring));
  Ideal full(h.ring, base);
  full = full.with(ig);
  std::vector<Poly> dg = dbase;
  for (const char* s : {"'", "''"}) {
    Substitution c = h.copy(s);
    for (const auto& g : ig) dg.push_back(c.apply(g));
  }
  Ideal dfull(h.doubled, dg);

  rep.add("proper", !full.is_unit(config), "the ideal contains 1");
  std::size_t k = 0;
  for (const auto& g : ig) {
    std::string tag = "generator " + std::to_string(++k) + " [" + g.str() + "]";
    Poly dgk = h.comul.apply(g);
    rep.add("comultiplication preserves " + tag, dfull.contains(dgk, config), nf_witness(dfull, dgk, config));
    Scalar e = h.counit_of(g);
    if (mod_level) e = e.truncated(*mod_level);
    rep.add("counit kills " + tag, e.is_zero(), e.str());
    Poly sg = h.antipode.apply(g);
    rep.add("antipode preserves " + tag, full.contains(sg, config), nf_witness(full, sg, config));
  }
  return rep;
}

GroupMorphism make_morphism(std::string name, HopfPresentation source, HopfPresentation target,
                            const std::map<std::string, Poly>& images) {
  Substitution s(source.ring);
  for (const auto& [n, p] : images) {
    if (!target.ring->contains(n)) throw Error(ErrorKind::UnknownVariable, "pullback given on unknown variable '" + n + "'");
    s.set(n, p.embed(source.ring));
  }
  for (const auto& n : target.vars())
    if (!s.has_image(n)) throw Error(ErrorKind::Precondition, "pullback has no image for '" + n + "'");
  return GroupMorphism{std::move(name), std::move(source), std::move(target), std::move(s)};
}

GroupMorphism identity_morphism(const HopfPresentation& h) {
  return GroupMorphism{"id", h, h, Substitution::identity(h.ring)};
}

GroupMorphism compose(const GroupMorphism& first, const GroupMorphism& second) {
  Substitution s(first.source.ring);
  for (const auto& n : second.target.vars()) s.set(n, first.pull(second.pullback.image(n)));
  return GroupMorphism{second.name + "." + first.name, first.source, second.target, std::move(s)};
}

Report check_morphism(const GroupMorphism& m, const GroebnerConfig& config) {
  Report rep;
  const HopfPresentation& src = m.source;
  const HopfPresentation& tgt = m.target;
  const Ideal& rel = src.effective_relations();
  const Ideal& drel = src.doubled_relations();

  std::size_t k = 0;
  for (const auto& r : tgt.relations.generators()) {
    Poly p = m.pull(r);
    rep.add("relation " + std::to_string(++k) + " [" + r.str() + "] maps to zero", rel.contains(p, config),
            nf_witness(rel, p, config));
  }
  if (tgt.level && (!src.level || *src.level > *tgt.level)) {
    Poly p = Poly::pi(src.ring, *tgt.level + 1);
    rep.add("base level", rel.contains(p, config), "source is not killed by pi^" + std::to_string(*tgt.level + 1));
  }

  Substitution c1 = src.copy("'"), c2 = src.copy("''");
  Substitution pull2(src.doubled);
  for (const auto& y : tgt.vars()) {
    Poly py = m.pullback.image(y);
    pull2.set(y + "'", c1.apply(py));
    pull2.set(y + "''", c2.apply(py));
  }
  for (const auto& y : tgt.vars()) {
    Poly py = m.pullback.image(y);
    Poly d = src.comul.apply(py) - pull2.apply(tgt.comul.image(y));
    rep.add("comultiplication on " + y, drel.contains(d, config), nf_witness(drel, d, config));
    Scalar es = src.counit_of(py);
    Scalar et = tgt.counit_of(Poly::var(tgt.ring, y));
    if (src.level) et = et.truncated(*src.level);
    rep.add("counit on " + y, es == et, "epsilon(pullback) = " + es.str() + ", expected " + et.str());
    Poly a = src.antipode.apply(py) - m.pull(tgt.antipode.image(y));
    rep.add("antipode on " + y, rel.contains(a, config), nf_witness(rel, a, config));
  }
  return rep;
}

Report check_isomorphism(const GroupMorphism& f, const GroupMorphism& g, const GroebnerConfig& config) {
  Report rep;
  rep.append(check_morphism(f, config), "forward: ");
  rep.append(check_morphism(g, config), "backward: ");
  const HopfPresentation& a = f.source;
  const HopfPresentation& b = f.target;
  for (const auto& x : a.vars()) {
    Poly d = f.pull(g.pullback.image(x)) - Poly::var(a.ring, x);
    rep.add("round trip on " + x, a.effective_relations().contains(d, config), nf_witness(a.effective_relations(), d, config));
  }
  for (const auto& y : b.vars()) {
    Poly d = g.pull(f.pullback.image(y)) - Poly::var(b.ring, y);
    rep.add("round trip on " + y, b.effective_relations().contains(d, config), nf_witness(b.effective_relations(), d, config));
  }
  return rep;
}

HopfPresentation rename(const HopfPresentation& h, const std::map<std::string, std::string>& names,
                        std::string new_name) {
  auto target = [&](const std::string& n) {
    auto it = names.find(n);
    return it == names.end() ? n : it->second;
  };
  std::vector<std::string> vars;
  for (const auto& n : h.vars()) vars.push_back(target(n));
  RingPtr r = make_ring(vars);
  RingPtr d = doubled_ring(*r);
  Substitution sr(r), sd(d);
  for (const auto& n : h.vars()) {
    sr.set(n, Poly::var(r, target(n)));
    sd.set(n + "'", Poly::var(d, target(n) + "'"));
    sd.set(n + "''", Poly::var(d, target(n) + "''"));
  }
  std::vector<Poly> rel;
  for (const auto& g : h.relations.generators()) rel.push_back(sr.apply(g));
  std::map<std::string, Poly> c, e, s;
  for (const auto& n : h.vars()) {
    c.emplace(target(n), sd.apply(h.comul.image(n)));
    e.emplace(target(n), h.counit.image(n));
    s.emplace(target(n), sr.apply(h.antipode.image(n)));
  }
  HopfPresentation out = make_hopf(new_name.empty() ? h.name : std::move(new_name), vars, rel, c, e, s, h.level);
  out.flat_certified = h.flat_certified;
  return out;
}

std::string describe(const HopfPresentation& h, const GroebnerConfig& config) {
  std::ostringstream os;
  os << "group " << h.name << "\n";
  os << "  vars: ";
  for (std::size_t i = 0; i < h.vars().size(); ++i) os << (i ? ", " : "") << h.vars()[i];
  os << "\n  relations: " << h.relations.canonical_str(config) << "\n";
  if (h.level) os << "  level: " << *h.level << "\n";
  for (const auto& x : h.vars()) {
    os << "  " << x << ": comul " << h.comul.image(x).str() << "; counit " << h.counit.image(x).str()
       << "; antipode " << h.antipode.image(x).str() << "\n";
  }
  return os.str();
}

}  // namespace neron
