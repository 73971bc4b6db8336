#include "neron/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace neron {

namespace {

struct Term {
  Exponents e;
  Rational c;
};

// Terms in strictly decreasing order.
using TVec = std::vector<Term>;

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents lcm_of(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Exponents diff(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

int degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

class Engine {
 public:
  Engine(RingPtr ring, MonomialOrder order) : ring_(std::move(ring)), order_(order) {}

  TVec from_poly(const Poly& p) const {
    TVec v;
    v.reserve(p.term_count());
    for (const auto& [e, c] : p.terms()) v.push_back({e, c});
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return order_.compare(a.e, b.e) > 0; });
    return v;
  }

  Poly to_poly(const TVec& v) const {
    Poly::TermMap m;
    for (const auto& t : v) m.emplace(t.e, t.c);
    return Poly(ring_, std::move(m));
  }

  // p[start..] - c * x^m * g
  TVec sub_mul(const TVec& p, std::size_t start, const Rational& c, const Exponents& m, const TVec& g) const {
    TVec out;
    out.reserve(p.size() - start + g.size());
    std::size_t i = start, j = 0;
    Exponents shifted(m.size());
    auto shift = [&](const Exponents& e) {
      for (std::size_t k = 0; k < m.size(); ++k) shifted[k] = e[k] + m[k];
    };
    if (j < g.size()) shift(g[j].e);
    while (i < p.size() || j < g.size()) {
      int cmp;
      if (i >= p.size())
        cmp = -1;
      else if (j >= g.size())
        cmp = 1;
      else
        cmp = order_.compare(p[i].e, shifted);
      if (cmp > 0) {
        out.push_back(p[i++]);
      } else if (cmp < 0) {
        out.push_back({shifted, -c * g[j].c});
        if (++j < g.size()) shift(g[j].e);
      } else {
        Rational v = p[i].c - c * g[j].c;
        if (v != 0) out.push_back({p[i].e, v});
        ++i;
        if (++j < g.size()) shift(g[j].e);
      }
    }
    return out;
  }

  // Full reduction.  When `quot` is given, quot[k] accumulates the quotient
  // of basis element k.
  TVec reduce(TVec p, const std::vector<const TVec*>& basis, std::vector<TVec>* quot) const {
    TVec rem;
    std::size_t start = 0;
    while (start < p.size()) {
      const Term& lt = p[start];
      std::size_t k = 0;
      for (; k < basis.size(); ++k)
        if (divides((*basis[k])[0].e, lt.e)) break;
      if (k == basis.size()) {
        rem.push_back(lt);
        ++start;
        continue;
      }
      const TVec& g = *basis[k];
      Exponents m = diff(lt.e, g[0].e);
      Rational c = lt.c / g[0].c;
      if (quot) (*quot)[k].push_back({m, c});
      p = sub_mul(p, start, c, m, g);
      start = 0;
    }
    return rem;
  }

  Poly quotient_poly(const TVec& q) const {
    Poly out(ring_);
    for (const auto& t : q) out += Poly::monomial(ring_, t.e, t.c);
    return out;
  }

  const RingPtr& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }

 private:
  RingPtr ring_;
  MonomialOrder order_;
};

struct Element {
  TVec p;
  int sugar = 0;
  std::vector<Poly> cof;
};

struct Pending {
  int sugar;
  std::size_t id;
  int i;  // -1 for an input generator
  std::size_t j;
  bool operator<(const Pending& o) const { return sugar != o.sugar ? sugar < o.sugar : id < o.id; }
};

void make_monic(Element& el) {
  Rational lc = el.p[0].c;
  if (lc == 1) return;
  Rational inv = 1 / lc;
  for (auto& t : el.p) t.c *= inv;
  for (auto& c : el.cof) c = c.scaled(inv);
}

}  // namespace

bool GroebnerBasis::is_unit() const {
  return basis.size() == 1 && basis[0].total_degree() == 0;
}

std::string GroebnerBasis::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < basis.size(); ++i) os << (i ? ", " : "") << basis[i].str();
  os << ")";
  return os.str();
}

GroebnerBasis compute_groebner(const RingPtr& ring, const std::vector<Poly>& generators, const MonomialOrder& order,
                               const GroebnerConfig& config, std::size_t tracked) {
  Engine eng(ring, order);
  const bool track = tracked > 0;
  const std::size_t nt = std::min(tracked, generators.size());
  std::vector<Element> G;
  std::set<Pending> queue;
  std::set<std::pair<std::size_t, std::size_t>> open_pairs;
  std::size_t next_id = 0;
  std::size_t processed = 0;

  std::vector<Element> inputs;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const Poly& g = generators[k];
    if (!same_ring(g.ring(), ring)) throw Error(ErrorKind::Precondition, "generator from a different ring");
    Element el;
    el.p = eng.from_poly(g);
    el.sugar = g.is_zero() ? 0 : g.total_degree();
    if (track) {
      el.cof.assign(tracked, Poly(ring));
      if (k < nt) el.cof[k] = Poly::constant(ring, 1);
    }
    inputs.push_back(std::move(el));
    if (!inputs.back().p.empty()) queue.insert({inputs.back().sugar, next_id++, -1, k});
  }

  auto basis_ptrs = [&] {
    std::vector<const TVec*> v;
    v.reserve(G.size());
    for (const auto& el : G) v.push_back(&el.p);
    return v;
  };

  bool unit = false;
  while (!queue.empty() && !unit) {
    Pending pd = *queue.begin();
    queue.erase(queue.begin());
    Element h;
    if (pd.i < 0) {
      h = inputs[pd.j];
    } else {
      std::size_t i = static_cast<std::size_t>(pd.i), j = pd.j;
      open_pairs.erase({i, j});
      const Exponents& li = G[i].p[0].e;
      const Exponents& lj = G[j].p[0].e;
      if (coprime(li, lj)) continue;
      Exponents l = lcm_of(li, lj);
      bool chain = false;
      for (std::size_t k = 0; k < G.size() && !chain; ++k) {
        if (k == i || k == j) continue;
        if (!divides(G[k].p[0].e, l)) continue;
        auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (!open_pairs.count(key(i, k)) && !open_pairs.count(key(j, k))) chain = true;
      }
      if (chain) continue;
      if (++processed > config.max_pairs)
        throw Error(ErrorKind::ResourceLimit, "Groebner computation exceeded " + std::to_string(config.max_pairs) + " pairs");
      Exponents mi = diff(l, li), mj = diff(l, lj);
      TVec left = eng.sub_mul(TVec{}, 0, Rational(-1), mi, G[i].p);
      h.p = eng.sub_mul(left, 0, Rational(1), mj, G[j].p);
      h.sugar = pd.sugar;
      if (track) {
        h.cof.assign(tracked, Poly(ring));
        Poly ti = Poly::monomial(ring, mi), tj = Poly::monomial(ring, mj);
        for (std::size_t t = 0; t < tracked; ++t) h.cof[t] = ti * G[i].cof[t] - tj * G[j].cof[t];
      }
    }

    std::vector<TVec> quot;
    std::vector<TVec>* qp = nullptr;
    if (track) {
      quot.assign(G.size(), TVec{});
      qp = &quot;
    }
    h.p = eng.reduce(std::move(h.p), basis_ptrs(), qp);
    if (h.p.empty()) continue;
    if (track) {
      for (std::size_t k = 0; k < G.size(); ++k) {
        if (quot[k].empty()) continue;
        Poly q = eng.quotient_poly(quot[k]);
        for (std::size_t t = 0; t < tracked; ++t) h.cof[t] -= q * G[k].cof[t];
      }
    }
    make_monic(h);
    if (degree(h.p[0].e) > config.max_degree)
      throw Error(ErrorKind::ResourceLimit,
                  "Groebner computation exceeded total degree " + std::to_string(config.max_degree));
    if (degree(h.p[0].e) == 0) unit = true;
    std::size_t n = G.size();
    for (std::size_t k = 0; k < n; ++k) {
      Exponents l = lcm_of(G[k].p[0].e, h.p[0].e);
      int s = std::max(G[k].sugar + degree(diff(l, G[k].p[0].e)), h.sugar + degree(diff(l, h.p[0].e)));
      queue.insert({s, next_id++, static_cast<int>(k), n});
      open_pairs.insert({k, n});
    }
    G.push_back(std::move(h));
  }

  GroebnerBasis out;
  out.ring = ring;
  out.order = order;
  out.tracked = tracked;

  if (unit) {
    Element& one = G.back();
    out.basis.push_back(Poly::constant(ring, 1));
    if (track) out.cofactors.push_back(one.cof);
    return out;
  }

  // Minimalise: drop elements whose leading monomial is divisible by another's.
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < G.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < G.size() && !redundant; ++l) {
      if (l == k) continue;
      if (!divides(G[l].p[0].e, G[k].p[0].e)) continue;
      if (G[l].p[0].e != G[k].p[0].e || l < k) redundant = true;
    }
    if (!redundant) keep.push_back(k);
  }
  std::sort(keep.begin(), keep.end(),
            [&](std::size_t a, std::size_t b) { return order.compare(G[a].p[0].e, G[b].p[0].e) < 0; });

  std::vector<Element> minimal;
  for (std::size_t k : keep) minimal.push_back(G[k]);

  // Inter-reduce tails.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<const TVec*> others;
    std::vector<std::size_t> idx;
    for (std::size_t l = 0; l < minimal.size(); ++l) {
      if (l == k) continue;
      others.push_back(&minimal[l].p);
      idx.push_back(l);
    }
    TVec head{minimal[k].p[0]};
    TVec tail(minimal[k].p.begin() + 1, minimal[k].p.end());
    std::vector<TVec> quot(others.size());
    TVec red = eng.reduce(std::move(tail), others, track ? &quot : nullptr);
    head.insert(head.end(), red.begin(), red.end());
    if (track) {
      for (std::size_t q = 0; q < others.size(); ++q) {
        if (quot[q].empty()) continue;
        Poly qp = eng.quotient_poly(quot[q]);
        for (std::size_t t = 0; t < tracked; ++t) minimal[k].cof[t] -= qp * minimal[idx[q]].cof[t];
      }
    }
    minimal[k].p = std::move(head);
  }

  for (auto& el : minimal) {
    out.basis.push_back(eng.to_poly(el.p));
    if (track) out.cofactors.push_back(std::move(el.cof));
  }
  return out;
}

Poly reduce(const GroebnerBasis& gb, const Poly& f) {
  std::vector<Poly> unused;
  Engine eng(gb.ring, gb.order);
  std::vector<TVec> basis;
  basis.reserve(gb.basis.size());
  for (const auto& g : gb.basis) basis.push_back(eng.from_poly(g));
  std::vector<const TVec*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  Poly in = same_ring(f.ring(), gb.ring) ? f : f.embed(gb.ring);
  return eng.to_poly(eng.reduce(eng.from_poly(in), ptrs, nullptr));
}

Poly reduce(const GroebnerBasis& gb, const Poly& f, std::vector<Poly>& quotients) {
  Engine eng(gb.ring, gb.order);
  std::vector<TVec> basis;
  for (const auto& g : gb.basis) basis.push_back(eng.from_poly(g));
  std::vector<const TVec*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  std::vector<TVec> quot(basis.size());
  Poly in = same_ring(f.ring(), gb.ring) ? f : f.embed(gb.ring);
  Poly r = eng.to_poly(eng.reduce(eng.from_poly(in), ptrs, &quot));
  quotients.clear();
  for (const auto& q : quot) quotients.push_back(eng.quotient_poly(q));
  return r;
}

// Ideal -------------------------------------------------------------------

Ideal::Ideal(RingPtr ring, std::vector<Poly> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (!same_ring(g.ring(), ring_)) g = g.embed(ring_);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(const RingPtr& ring) {
  return Ideal(ring, {Poly::constant(ring, 1)});
}

Ideal Ideal::from_basis(GroebnerBasis gb) {
  Ideal out(gb.ring, gb.basis);
  gb.tracked = 0;
  gb.cofactors.clear();
  if (gb.basis.empty()) return out;
  out.cache_->entries.push_back(std::make_unique<GroebnerBasis>(std::move(gb)));
  return out;
}

const GroebnerBasis& Ideal::basis(const MonomialOrder& order, const GroebnerConfig& config) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  for (const auto& e : cache_->entries)
    if (e->order == order) return *e;
  cache_->entries.push_back(std::make_unique<GroebnerBasis>(compute_groebner(ring_, gens_, order, config)));
  return *cache_->entries.back();
}

const GroebnerBasis* Ideal::cached(const MonomialOrder& order) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  for (const auto& e : cache_->entries)
    if (e->order == order) return e.get();
  return nullptr;
}

bool Ideal::is_unit(const GroebnerConfig& config) const {
  return basis(MonomialOrder::grevlex(), config).is_unit();
}

bool Ideal::is_zero() const {
  return gens_.empty();
}

bool Ideal::contains(const Poly& f, const GroebnerConfig& config) const {
  if (f.is_zero()) return true;
  if (gens_.empty()) return false;
  Poly in = same_ring(f.ring(), ring_) ? f : f.embed(ring_);
  return neron::reduce(basis(MonomialOrder::grevlex(), config), in).is_zero();
}

bool Ideal::contains(const Ideal& other, const GroebnerConfig& config) const {
  for (const auto& g : other.generators())
    if (!contains(g.embed(ring_), config)) return false;
  return true;
}

Poly Ideal::reduce(const Poly& f, const GroebnerConfig& config) const {
  Poly in = same_ring(f.ring(), ring_) ? f : f.embed(ring_);
  if (gens_.empty()) return in;
  return neron::reduce(basis(MonomialOrder::grevlex(), config), in);
}

Ideal Ideal::operator+(const Ideal& other) const {
  std::vector<Poly> g = gens_;
  for (const auto& p : other.generators()) g.push_back(p.embed(ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::with(const std::vector<Poly>& extra) const {
  std::vector<Poly> g = gens_;
  for (const auto& p : extra) g.push_back(p.embed(ring_));
  return Ideal(ring_, std::move(g));
}

Ideal Ideal::embed(const RingPtr& target) const {
  std::vector<Poly> g;
  for (const auto& p : gens_) g.push_back(p.embed(target));
  return Ideal(target, std::move(g));
}

Ideal Ideal::mapped(const Substitution& s) const {
  std::vector<Poly> g;
  for (const auto& p : gens_) g.push_back(s.apply(p));
  return Ideal(s.target(), std::move(g));
}

std::string Ideal::canonical_str(const GroebnerConfig& config) const {
  if (gens_.empty()) return "(0)";
  return basis(MonomialOrder::grevlex(), config).str();
}

std::string Ideal::generators_str() const {
  if (gens_.empty()) return "(0)";
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) os << (i ? ", " : "") << gens_[i].str();
  os << ")";
  return os.str();
}

namespace {

// An ideal whose reduced grevlex basis is already known.
Ideal seeded(const RingPtr& ring, std::vector<Poly> basis) {
  GroebnerBasis gb;
  gb.ring = ring;
  gb.order = MonomialOrder::grevlex();
  gb.basis = std::move(basis);
  return Ideal::from_basis(std::move(gb));
}

}  // namespace

Ideal buchberger(const Ideal& I, const MonomialOrder& order, const GroebnerConfig& config) {
  I.basis(order, config);
  return I;
}

Poly normal_form(const Poly& f, const Ideal& I, const MonomialOrder& order) {
  const GroebnerBasis* gb = I.cached(order);
  if (!gb) {
    if (I.is_zero()) return f.embed(I.ring());
    throw Error(ErrorKind::OrderMismatch, "no Groebner basis cached under " + order.str());
  }
  return reduce(*gb, f);
}

bool ideals_equal(const Ideal& a, const Ideal& b, const GroebnerConfig& config) {
  return a.contains(b, config) && b.contains(a, config);
}

MembershipCertificate ideal_member(const Poly& f, const Ideal& I, const GroebnerConfig& config) {
  MembershipCertificate cert;
  const auto& gens = I.generators();
  Poly in = f.embed(I.ring());
  if (in.is_zero()) {
    cert.member = true;
    cert.cofactors.assign(gens.size(), Poly(I.ring()));
    return cert;
  }
  if (gens.empty()) return cert;
  GroebnerBasis gb = compute_groebner(I.ring(), gens, MonomialOrder::grevlex(), config, gens.size());
  std::vector<Poly> quot;
  Poly r = reduce(gb, in, quot);
  if (!r.is_zero()) return cert;
  cert.member = true;
  cert.cofactors.assign(gens.size(), Poly(I.ring()));
  for (std::size_t k = 0; k < gb.basis.size(); ++k) {
    if (quot[k].is_zero()) continue;
    for (std::size_t t = 0; t < gens.size(); ++t) cert.cofactors[t] += quot[k] * gb.cofactors[k][t];
  }
  return cert;
}

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  auto used = [&](const std::string& n) { return n == "pi" || std::find(taken.begin(), taken.end(), n) != taken.end(); };
  if (!used(base)) return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!used(cand)) return cand;
  }
}

namespace {

// Elements of a block-order basis free of the first `split` variables, moved
// into `target` (whose variables are the remaining ones in the same order).
Ideal keep_second_block(const GroebnerBasis& gb, std::size_t split, const RingPtr& target) {
  std::vector<Poly> kept;
  for (const auto& g : gb.basis) {
    bool free = true;
    for (std::size_t s = 0; s < split && free; ++s) free = !g.uses_slot(s);
    if (!free) continue;
    Poly::TermMap m;
    for (const auto& [e, c] : g.terms()) m.emplace(Exponents(e.begin() + static_cast<long>(split), e.end()), c);
    kept.emplace_back(target, std::move(m));
  }
  return seeded(target, std::move(kept));
}

}  // namespace

Ideal saturate(const Ideal& I, const Poly& f, const GroebnerConfig& config) {
  const RingPtr& ring = I.ring();
  std::vector<std::string> names{fresh_name("t", ring->names())};
  for (const auto& n : ring->names()) names.push_back(n);
  RingPtr big = make_ring(names);
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(g.embed(big));
  gens.push_back(Poly::constant(big, 1) - Poly::var(big, names[0]) * f.embed(big));
  GroebnerBasis gb = compute_groebner(big, gens, MonomialOrder::block(1), config);
  return keep_second_block(gb, 1, ring);
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop, const GroebnerConfig& config) {
  const RingPtr& ring = I.ring();
  for (const auto& d : drop)
    if (!ring->contains(d)) throw Error(ErrorKind::UnknownVariable, "cannot eliminate unknown variable '" + d + "'");
  if (drop.empty()) return I;
  std::vector<std::string> first, rest;
  for (const auto& n : ring->names()) {
    if (std::find(drop.begin(), drop.end(), n) != drop.end())
      first.push_back(n);
    else
      rest.push_back(n);
  }
  std::vector<std::string> names = first;
  names.insert(names.end(), rest.begin(), rest.end());
  RingPtr big = make_ring(names);
  RingPtr small = make_ring(rest);
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(g.embed(big));
  GroebnerBasis gb = compute_groebner(big, gens, MonomialOrder::block(first.size()), config);
  return keep_second_block(gb, first.size(), small);
}

Ideal contract(const RingPtr& source, const Substitution& phi, const Ideal& relations_b, const Ideal& ideal_b,
               const GroebnerConfig& config) {
  const RingPtr& b = phi.target();
  std::vector<std::string> names = b->names();
  std::vector<std::string> tagged;
  for (const auto& n : source->names()) {
    std::string t = fresh_name("@" + n, names);
    names.push_back(t);
    tagged.push_back(t);
  }
  RingPtr big = make_ring(names);
  std::vector<Poly> gens;
  for (const auto& g : relations_b.generators()) gens.push_back(g.embed(big));
  for (const auto& g : ideal_b.generators()) gens.push_back(g.embed(big));
  for (std::size_t i = 0; i < source->size(); ++i)
    gens.push_back(Poly::var(big, tagged[i]) - phi.image(source->name(i)).embed(big));
  GroebnerBasis gb = compute_groebner(big, gens, MonomialOrder::block(b->size()), config);
  return keep_second_block(gb, b->size(), source);
}

Ideal kernel(const RingPtr& source, const Substitution& phi, const Ideal& relations_b, const GroebnerConfig& config) {
  return contract(source, phi, relations_b, Ideal(phi.target()), config);
}

SubalgebraResult subalgebra_member(const Poly& f, const std::vector<Poly>& gens, const Ideal& relations,
                                   const GroebnerConfig& config) {
  const RingPtr& b = relations.ring();
  std::vector<std::string> names = b->names();
  std::vector<std::string> znames, plain;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string z = fresh_name("@z" + std::to_string(i + 1), names);
    names.push_back(z);
    znames.push_back(z);
    plain.push_back("z" + std::to_string(i + 1));
  }
  RingPtr big = make_ring(names);
  RingPtr zring = make_ring(plain);
  std::vector<Poly> all;
  for (const auto& g : relations.generators()) all.push_back(g.embed(big));
  for (std::size_t i = 0; i < gens.size(); ++i) all.push_back(Poly::var(big, znames[i]) - gens[i].embed(big));

  SubalgebraResult res;
  try {
    GroebnerBasis gb = compute_groebner(big, all, MonomialOrder::block(b->size()), config);
    Poly nf = reduce(gb, f.embed(big));
    bool free = true;
    for (std::size_t s = 0; s < b->size() && free; ++s) free = !nf.uses_slot(s);
    if (free) {
      Poly::TermMap m;
      for (const auto& [e, c] : nf.terms()) m.emplace(Exponents(e.begin() + static_cast<long>(b->size()), e.end()), c);
      res.outcome = SubalgebraResult::Outcome::Member;
      res.expression = Poly(zring, std::move(m));
    } else {
      res.outcome = SubalgebraResult::Outcome::Absent;
      res.detail = "normal form " + nf.str() + " involves ring variables";
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceLimit) throw;
    res.outcome = SubalgebraResult::Outcome::Undecided;
    res.detail = e.what();
  }
  return res;
}

// PiDivider ---------------------------------------------------------------

PiDivider::PiDivider(Ideal relations, GroebnerConfig config)
    : relations_(std::move(relations)), config_(config) {
  std::vector<Poly> gens{Poly::pi(relations_.ring())};
  for (const auto& g : relations_.generators()) gens.push_back(g);
  with_pi_ = compute_groebner(relations_.ring(), gens, MonomialOrder::grevlex(), config_, 1);
}

bool PiDivider::divisible(const Poly& f) const {
  return reduce(with_pi_, f.embed(relations_.ring())).is_zero();
}

Poly PiDivider::divide(const Poly& f, unsigned m) const {
  Poly cur = f.embed(relations_.ring());
  for (unsigned step = 0; step < m; ++step) {
    Poly nf = relations_.reduce(cur, config_);
    if (nf.pi_valuation() >= 1) {
      cur = relations_.reduce(nf.divide_scalar_pi(1), config_);
      continue;
    }
    std::vector<Poly> quot;
    Poly r = reduce(with_pi_, nf, quot);
    if (!r.is_zero())
      throw Error(ErrorKind::DivisionObstruction,
                  f.str() + " is not divisible by pi^" + std::to_string(m) + " modulo the relations (residue " +
                      r.str() + ")");
    Poly q(relations_.ring());
    for (std::size_t k = 0; k < quot.size(); ++k)
      if (!quot[k].is_zero()) q += quot[k] * with_pi_.cofactors[k][0];
    cur = relations_.reduce(q, config_);
  }
  return cur;
}

}  // namespace neron
