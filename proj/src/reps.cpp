#include "neron/reps.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace neron {

namespace {

void require_square(const PolyMatrix& m, const std::string& what) {
  for (const auto& row : m)
    if (row.size() != m.size())
      throw Error(ErrorKind::ShapeMismatch, what + " is not a square matrix");
}

void require_same_vars(const HopfPresentation& a, const HopfPresentation& b, const std::string& what) {
  if (a.vars() != b.vars()) throw Error(ErrorKind::ShapeMismatch, what);
}

PolyMatrix zero_matrix(std::size_t n, const RingPtr& ring) {
  return PolyMatrix(n, std::vector<Poly>(n, Poly(ring)));
}

Poly delta(std::size_t i, std::size_t j, const RingPtr& ring) {
  return Poly::constant(ring, i == j ? 1 : 0);
}

}  // namespace

std::string matrix_str(const PolyMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string RepMatrix::str() const { return matrix_str(entries); }

Poly determinant(const PolyMatrix& m, const RingPtr& ring) {
  require_square(m, "determinant argument");
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(ring, 1);
  if (n > 20) throw Error(ErrorKind::ResourceLimit, "determinant of a matrix larger than 20x20");
  // Expansion along rows with memoisation over the set of used columns.
  std::map<unsigned long, Poly> memo;
  memo.emplace(0UL, Poly::constant(ring, 1));
  for (std::size_t row = 0; row < n; ++row) {
    std::map<unsigned long, Poly> next;
    for (const auto& [mask, val] : memo) {
      if (val.is_zero()) continue;
      int sign = 1;
      for (std::size_t c = n; c-- > 0;) {
        if (mask & (1UL << c)) {
          sign = -sign;
          continue;
        }
        const Poly& entry = m[row][c];
        if (entry.is_zero()) continue;
        // Sign is (-1)^(number of used columns greater than c).
        Poly term = val * entry.embed(ring);
        if (sign < 0) term = -term;
        auto it = next.find(mask | (1UL << c));
        if (it == next.end())
          next.emplace(mask | (1UL << c), std::move(term));
        else
          it->second += term;
      }
    }
    memo = std::move(next);
  }
  auto it = memo.find((n == 64 ? ~0UL : (1UL << n) - 1));
  return it == memo.end() ? Poly(ring) : it->second;
}

PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const RingPtr& ring) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = k ? b[0].size() : 0;
  PolyMatrix out(n, std::vector<Poly>(p, Poly(ring)));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw Error(ErrorKind::ShapeMismatch, "matrix product with incompatible shapes");
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < k; ++t)
        if (!a[i][t].is_zero() && !b[t][j].is_zero()) out[i][j] += a[i][t].embed(ring) * b[t][j].embed(ring);
  }
  return out;
}

RepMatrix make_rep(const HopfPresentation& group, PolyMatrix entries, std::optional<Poly> det_inverse,
                   const GroebnerConfig& config) {
  require_square(entries, "representation");
  for (auto& row : entries)
    for (auto& e : row) e = group.reduce(e.embed(group.ring), config);
  RepMatrix v{group, std::move(entries), Poly(group.ring)};
  if (det_inverse) {
    v.det_inverse = group.reduce(det_inverse->embed(group.ring), config);
    return v;
  }
  Poly det = group.reduce(determinant(v.entries, group.ring), config);
  if (det.is_zero()) throw Error(ErrorKind::Precondition, "the determinant vanishes");
  Ideal with_det = group.effective_relations().with({det});
  MembershipCertificate cert = ideal_member(Poly::constant(group.ring, 1), with_det, config);
  if (!cert.member)
    throw Error(ErrorKind::Precondition, "the determinant " + det.str() + " is not a unit in " + group.name);
  v.det_inverse = group.reduce(cert.cofactors.back(), config);
  return v;
}

RepMatrix make_rep_text(const HopfPresentation& group, const std::vector<std::vector<std::string>>& entries,
                        std::optional<std::string> det_inverse) {
  PolyMatrix m;
  for (const auto& row : entries) {
    std::vector<Poly> r;
    for (const auto& e : row) r.push_back(parse_poly(e, group.ring));
    m.push_back(std::move(r));
  }
  std::optional<Poly> w;
  if (det_inverse) w = parse_poly(*det_inverse, group.ring);
  return make_rep(group, std::move(m), w);
}

Report validate_rep(const RepMatrix& v, const GroebnerConfig& config) {
  Report report;
  const HopfPresentation& g = v.group;
  const std::size_t n = v.size();
  Substitution first = g.copy("'");
  Substitution second = g.copy("''");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::string at = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      Poly rhs(g.doubled);
      for (std::size_t k = 0; k < n; ++k) rhs += first.apply(v.at(i, k)) * second.apply(v.at(k, j));
      Poly diff = g.comul_of(v.at(i, j)) - rhs;
      bool ok = g.doubled_relations().contains(diff, config);
      report.add("comodule " + at, ok, ok ? "" : g.doubled_relations().reduce(diff, config).str());
      Scalar e = g.counit_of(v.at(i, j)) - Scalar(i == j ? 1 : 0);
      if (g.level) e = e.truncated(*g.level);
      report.add("counit " + at, e.is_zero(), e.is_zero() ? "" : e.str());
    }
  Poly unit = determinant(v.entries, g.ring) * v.det_inverse - Poly::constant(g.ring, 1);
  bool ok = g.effective_relations().contains(unit, config);
  report.add("determinant inverse", ok, ok ? "" : g.reduce(unit, config).str());
  return report;
}

RepMatrix pullback_rep(const RepMatrix& v, const GroupMorphism& m, const GroebnerConfig& config) {
  require_same_vars(m.target, v.group, "the morphism does not map into the group of the representation");
  PolyMatrix e = v.entries;
  for (auto& row : e)
    for (auto& x : row) x = m.pull(x);
  return make_rep(m.source, std::move(e), m.pull(v.det_inverse), config);
}

RepMatrix direct_sum(const RepMatrix& a, const RepMatrix& b, const GroebnerConfig& config) {
  require_same_vars(a.group, b.group, "direct sum of representations of different groups");
  const RingPtr& ring = a.group.ring;
  const std::size_t r = a.size();
  const std::size_t s = b.size();
  PolyMatrix m = zero_matrix(r + s, ring);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = a.at(i, j);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) m[r + i][r + j] = b.at(i, j).embed(ring);
  return make_rep(a.group, std::move(m), a.det_inverse * b.det_inverse.embed(ring), config);
}

RepMatrix identity_blowup_rep(const RepMatrix& v, const BlowupResult& b, const GroebnerConfig& config) {
  require_same_vars(b.projection.target, v.group, "the blowup is not of the group of the representation");
  if (!is_identity_subgroup(v.group, b.centre, config))
    throw Error(ErrorKind::Precondition, "the blowup centre " + b.centre.generators_str() + " is not the identity");
  const HopfPresentation& g = b.blown;
  PiDivider div(g.effective_relations(), config);
  const std::size_t r = v.size();
  PolyMatrix m = zero_matrix(2 * r, g.ring);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Poly a = b.projection.pull(v.at(i, j));
      m[i][r + j] = div.divide(a - delta(i, j, g.ring));
      m[i][j] = std::move(a);
    }
    m[r + i][r + i] = Poly::constant(g.ring, 1);
  }
  return make_rep(g, std::move(m), b.projection.pull(v.det_inverse), config);
}

Report check_conjugation(const RepMatrix& v, const RepMatrix& blown, const BlowupResult& b,
                         const GroebnerConfig& config) {
  const RingPtr& ring = b.blown.ring;
  const std::size_t r = v.size();
  if (blown.size() != 2 * r) throw Error(ErrorKind::ShapeMismatch, "the blown representation must have twice the rank");
  PolyMatrix sum = zero_matrix(2 * r, ring), pi_beta_inv = zero_matrix(2 * r, ring), beta = zero_matrix(2 * r, ring);
  Poly one = Poly::constant(ring, 1), pi = Poly::pi(ring);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) sum[i][j] = b.projection.pull(v.at(i, j));
    sum[r + i][r + i] = one;
    pi_beta_inv[i][i] = one;
    pi_beta_inv[i][r + i] = -one;
    pi_beta_inv[r + i][r + i] = pi;
    beta[i][i] = pi;
    beta[i][r + i] = one;
    beta[r + i][r + i] = one;
  }
  PolyMatrix lhs = multiply(multiply(pi_beta_inv, sum, ring), beta, ring);
  Ideal generic = saturate(b.blown.effective_relations(), pi, config);
  Report report;
  for (std::size_t i = 0; i < 2 * r; ++i)
    for (std::size_t j = 0; j < 2 * r; ++j) {
      Poly diff = lhs[i][j] - pi * blown.at(i, j).embed(ring);
      bool ok = generic.contains(diff, config);
      report.add("conjugate (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", ok,
                 ok ? "" : generic.reduce(diff, config).str());
    }
  return report;
}

Ideal stabilizer_ideal(const RepMatrix& v, std::size_t column) {
  if (column >= v.size()) throw Error(ErrorKind::ShapeMismatch, "column index out of range");
  std::vector<Poly> gens{Poly::pi(v.group.ring)};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != column) gens.push_back(v.at(i, column));
  return Ideal(v.group.ring, std::move(gens));
}

namespace {

void require_line_stabilizer(const RepMatrix& v, const BlowupResult& b, const GroebnerConfig& config) {
  require_same_vars(b.projection.target, v.group, "the blowup is not of the group of the representation");
  Ideal centre = b.centre + v.group.effective_relations();
  if (!centre.contains(stabilizer_ideal(v, 0), config))
    throw Error(ErrorKind::Precondition,
                "the blowup centre does not contain the ideal of the stabilizer of the first basis line");
}

}  // namespace

RepMatrix line_blowup_rep(const RepMatrix& v, const BlowupResult& b, const std::optional<RepMatrix>& e,
                          const GroebnerConfig& config) {
  require_line_stabilizer(v, b, config);
  const HopfPresentation& g = b.blown;
  const RingPtr& ring = g.ring;
  RepMatrix cover = e ? *e : RepMatrix{g, {{Poly::constant(ring, 1)}}, Poly::constant(ring, 1)};
  require_same_vars(cover.group, g, "the line representation must live on the blown group");
  if (cover.size() == 0) throw Error(ErrorKind::ShapeMismatch, "the line representation is empty");
  PiDivider div(g.effective_relations(), config);
  const std::size_t r = v.size();
  const std::size_t s = cover.size();

  PolyMatrix a = zero_matrix(r, ring);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = b.projection.pull(v.at(i, j));

  std::vector<Poly> c(s, Poly(ring));
  for (std::size_t j = 0; j < s; ++j) {
    Poly target = cover.at(0, j).embed(ring) - (j == 0 ? a[0][0] : Poly(ring));
    try {
      c[j] = div.divide(target);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DivisionObstruction) throw;
      throw Error(ErrorKind::ShapeMismatch, j == 0 ? "the (1,1) entry of the line representation is not a_11 mod pi"
                                                   : "entry (1," + std::to_string(j + 1) +
                                                         ") of the line representation is not divisible by pi");
    }
  }

  PolyMatrix m = zero_matrix(r + s, ring);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = a[i][j];
  m[0][r] = -c[0];
  for (std::size_t i = 1; i < r; ++i) m[i][r] = div.divide(a[i][0]);
  for (std::size_t j = 1; j < s; ++j) m[0][r + j] = -c[j];
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) m[r + i][r + j] = cover.at(i, j).embed(ring);
  return make_rep(g, std::move(m), b.projection.pull(v.det_inverse) * cover.det_inverse.embed(ring), config);
}

RescaledRep rescaled_rep(const RepMatrix& v, const BlowupResult& b, const GroebnerConfig& config) {
  require_line_stabilizer(v, b, config);
  const HopfPresentation& g = b.blown;
  const RingPtr& ring = g.ring;
  PiDivider div(g.effective_relations(), config);
  const std::size_t r = v.size();
  PolyMatrix m = zero_matrix(r, ring);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Poly a = b.projection.pull(v.at(i, j));
      if (i == 0 && j > 0)
        m[i][j] = Poly::pi(ring) * a;
      else if (i > 0 && j == 0)
        m[i][j] = div.divide(a);
      else
        m[i][j] = std::move(a);
    }
  RepMatrix rescaled = make_rep(g, std::move(m), b.projection.pull(v.det_inverse), config);
  RepMatrix sum = direct_sum(pullback_rep(v, b.projection, config), rescaled, config);
  return {std::move(rescaled), std::move(sum)};
}

RepMatrix sum_faithful(const RepMatrix& rho, const RepMatrix& sigma, const BlowupResult& b, const GroupMorphism& q,
                       const BlowupResult& a_blowup, const GroebnerConfig& config) {
  require_same_vars(sigma.group, a_blowup.blown, "sigma must be a representation of the blown quotient");
  GroupMorphism lifted = lift(a_blowup, compose(b.projection, q), config);
  return direct_sum(pullback_rep(rho, b.projection, config), pullback_rep(sigma, lifted, config), config);
}

std::string to_string(Faithfulness f) {
  switch (f) {
    case Faithfulness::Faithful: return "faithful";
    case Faithfulness::NotAtBound: return "not-at-bound";
    case Faithfulness::Fail: return "fail";
  }
  return "fail";
}

FaithfulnessResult verify_faithful(const RepMatrix& v, const GroebnerConfig& config) {
  FaithfulnessResult out;
  Report valid = validate_rep(v, config);
  if (!valid.passed()) {
    out.verdict = Faithfulness::Fail;
    for (const auto& f : valid.failures()) out.details.push_back("not a representation: " + f.check + " " + f.detail);
    return out;
  }
  std::vector<Poly> gens;
  for (const auto& row : v.entries)
    for (const auto& e : row) gens.push_back(e);
  gens.push_back(v.det_inverse);
  out.verdict = Faithfulness::Faithful;
  const std::string last = std::to_string(gens.size() - 1);
  std::string legend = (gens.size() == 2 ? std::string("z1 is the entry") : "z1..z" + last + " are the entries in row order") +
                       ", z" + std::to_string(gens.size()) + " is the inverse determinant";
  out.details.push_back(legend);
  for (const auto& y : v.group.vars()) {
    SubalgebraResult res = subalgebra_member(Poly::var(v.group.ring, y), gens, v.group.effective_relations(), config);
    if (res.member()) {
      out.details.push_back(y + " = " + res.expression->str());
    } else {
      out.verdict = Faithfulness::NotAtBound;
      std::string detail = res.detail;
      for (auto at = detail.find("@z"); at != std::string::npos; at = detail.find("@z")) detail.erase(at, 1);
      out.details.push_back(y + " not generated at this bound: " + detail);
    }
  }
  return out;
}

// Conormal representation -------------------------------------------------

namespace {

using Vector = std::map<Exponents, Rational>;

/// Coordinates of t in the span of `cols`, or nothing.
std::optional<std::vector<Rational>> solve(const std::vector<Vector>& cols, const Vector& t) {
  std::vector<Exponents> rows;
  for (const auto& c : cols)
    for (const auto& [e, x] : c) rows.push_back(e);
  for (const auto& [e, x] : t) rows.push_back(e);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  const std::size_t n = cols.size();
  std::vector<std::vector<Rational>> aug(rows.size(), std::vector<Rational>(n + 1, 0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto it = cols[j].find(rows[i]);
      if (it != cols[j].end()) aug[i][j] = it->second;
    }
    auto it = t.find(rows[i]);
    if (it != t.end()) aug[i][n] = it->second;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < aug.size(); ++j) {
    std::size_t p = rank;
    while (p < aug.size() && aug[p][j] == 0) ++p;
    if (p == aug.size()) continue;
    std::swap(aug[p], aug[rank]);
    Rational inv = 1 / aug[rank][j];
    for (auto& x : aug[rank]) x *= inv;
    for (std::size_t i = 0; i < aug.size(); ++i) {
      if (i == rank || aug[i][j] == 0) continue;
      Rational f = aug[i][j];
      for (std::size_t k = 0; k <= n; ++k) aug[i][k] -= f * aug[rank][k];
    }
    pivot_col.push_back(j);
    ++rank;
  }
  for (std::size_t i = rank; i < aug.size(); ++i)
    if (aug[i][n] != 0) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = aug[i][n];
  return x;
}

Vector as_vector(const Poly& p) { return Vector(p.terms().begin(), p.terms().end()); }

}  // namespace

ConormalData conormal_rep(const HopfPresentation& gk, const Ideal& subgroup, const GroebnerConfig& config) {
  HopfPresentation fib = special_fibre(gk);
  const RingPtr& ring = fib.ring;
  Ideal I = subgroup.embed(ring);
  Report hopf = check_hopf_ideal(fib, I, 0, config);
  if (!hopf.passed())
    throw Error(ErrorKind::NotASubgroup, "not a subgroup of the special fibre: " + hopf.failures().front().check);
  for (const auto& f : I.generators())
    if (!fib.counit_of(f).truncated(0).is_zero())
      throw Error(ErrorKind::Precondition, "the subgroup does not contain the identity");

  std::vector<Poly> qgens = fib.effective_relations().generators();
  Ideal aug = augmentation_ideal(fib);
  for (const auto& a : aug.generators())
    for (const auto& f : I.generators()) qgens.push_back(a * f);
  Ideal Q(ring, qgens);

  ConormalData out;
  std::vector<Vector> cols;
  for (const auto& f : I.generators()) {
    Poly nf = Q.reduce(f, config);
    if (nf.is_zero()) continue;
    if (solve(cols, as_vector(nf))) continue;
    out.basis.push_back(nf);
    cols.push_back(as_vector(nf));
  }
  if (out.basis.empty()) return out;

  // Right conjugation f(h^{-1} g h): g in the first tensor factor, h in the second.
  const RingPtr& dbl = fib.doubled;
  Substitution swap_inverse(dbl), finish(dbl);
  Substitution second = fib.copy("''");
  for (const auto& y : fib.vars()) {
    swap_inverse.set(y + "'", second.apply(fib.antipode_of(Poly::var(ring, y))));
    swap_inverse.set(y + "''", Poly::var(dbl, y + "'"));
  }
  for (const auto& y : fib.vars()) {
    finish.set(y + "'", swap_inverse.apply(fib.comul_of(Poly::var(ring, y))));
    finish.set(y + "''", Poly::var(dbl, y + "''"));
  }
  Substitution conj(dbl);
  for (const auto& y : fib.vars()) conj.set(y, finish.apply(fib.comul_of(Poly::var(ring, y))));

  HopfPresentation h0 = fib;
  h0.name = fib.name + "_H0";
  h0.relations = fib.relations + I;
  h0.refresh();

  Substitution first = fib.copy("'");
  std::vector<Poly> target_gens;
  for (const auto& q : Q.generators()) target_gens.push_back(first.apply(q));
  for (const auto& q : h0.effective_relations().generators()) target_gens.push_back(second.apply(q));
  Ideal target(dbl, target_gens);

  std::vector<std::size_t> first_slot(ring->size()), second_slot(ring->size());
  for (std::size_t k = 0; k < ring->size(); ++k) {
    first_slot[k] = *dbl->index_of(ring->name(k) + "'");
    second_slot[k] = *dbl->index_of(ring->name(k) + "''");
  }

  const std::size_t d = out.basis.size();
  PolyMatrix nu = zero_matrix(d, ring);
  for (std::size_t j = 0; j < d; ++j) {
    Poly image = target.reduce(conj.apply(out.basis[j]), config);
    std::map<Exponents, Poly::TermMap> split;
    for (const auto& [e, c] : image.terms()) {
      if (e[dbl->pi_slot()] != 0) throw Error(ErrorKind::Precondition, "pi survived reduction to the special fibre");
      Exponents a(ring->slots(), 0), h(ring->slots(), 0);
      for (std::size_t k = 0; k < ring->size(); ++k) {
        a[k] = e[first_slot[k]];
        h[k] = e[second_slot[k]];
      }
      split[h].emplace(a, c);
    }
    for (auto& [h, terms] : split) {
      Poly coeff = Q.reduce(Poly(ring, std::move(terms)), config);
      auto x = solve(cols, as_vector(coeff));
      if (!x) throw Error(ErrorKind::Precondition, "the conjugation action does not preserve the conormal space");
      Poly mono = Poly::monomial(ring, h);
      for (std::size_t i = 0; i < d; ++i)
        if ((*x)[i] != 0) nu[i][j] += mono.scaled((*x)[i]);
    }
  }
  out.action = make_rep(h0, std::move(nu), std::nullopt, config);
  return out;
}

}  // namespace neron
