#include "neron/dgal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace neron {

// Laurent ------------------------------------------------------------------

Laurent::Laurent(const Scalar& s) { add_term(0, s); }

Laurent Laurent::monomial(int x_exponent, const Scalar& coefficient) {
  Laurent l;
  l.add_term(x_exponent, coefficient);
  return l;
}

void Laurent::add_term(int e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar Laurent::coefficient(int x_exponent) const {
  auto it = terms_.find(x_exponent);
  return it == terms_.end() ? Scalar() : it->second;
}

int Laurent::min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int Laurent::max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Laurent Laurent::derivative() const {
  Laurent out;
  for (const auto& [e, c] : terms_)
    if (e != 0) out.add_term(e - 1, c * Scalar(e));
  return out;
}

Laurent Laurent::truncated(unsigned level) const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.add_term(e, c.truncated(level));
  return out;
}

Scalar Laurent::at_one() const {
  Scalar s;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

Laurent Laurent::operator-() const {
  Laurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  // Print as a polynomial in x and pi, highest x-power first.
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    for (auto jt = it->second.coefficients().rbegin(); jt != it->second.coefficients().rend(); ++jt) {
      Rational q = jt->second;
      unsigned p = jt->first;
      int e = it->first;
      bool neg = q < 0;
      if (neg) q = -q;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      std::vector<std::string> factors;
      if (p > 0) factors.push_back(p == 1 ? "pi" : "pi^" + std::to_string(p));
      if (e != 0) factors.push_back(e == 1 ? "x" : "x^" + std::to_string(e));
      if (factors.empty() || q != 1) factors.insert(factors.begin(), rational_str(q));
      for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
  }
  return os.str();
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), p = k ? b[0].size() : 0;
  LaurentMatrix out(n, std::vector<Laurent>(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
  return out;
}

LaurentMatrix identity_matrix(std::size_t r) {
  LaurentMatrix m(r, std::vector<Laurent>(r));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = Laurent(Scalar(1));
  return m;
}

std::string matrix_str(const LaurentMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? ", " : "") << m[i][j].str();
    os << "]";
  }
  os << "]";
  return os.str();
}

// Connections --------------------------------------------------------------

int Connection::max_degree() const {
  int d = 1;
  for (const auto& row : matrix)
    for (const auto& e : row)
      if (!e.is_zero()) d = std::max({d, std::abs(e.min_degree()), std::abs(e.max_degree())});
  return d;
}

std::string to_string(Connection::Base b) {
  return b == Connection::Base::AffineLine ? "affine-line" : "punctured-line";
}

Connection::Base parse_base(const std::string& text) {
  if (text == "affine-line") return Connection::Base::AffineLine;
  if (text == "punctured-line") return Connection::Base::PuncturedLine;
  throw Error(ErrorKind::Precondition, "unknown base '" + text + "'");
}

Connection make_connection(Connection::Base base, const GenericMatrix& entries) {
  Connection c;
  c.base = base;
  for (const auto& row : entries) {
    if (row.size() != entries.size()) throw Error(ErrorKind::ShapeMismatch, "connection matrix is not square");
    std::vector<Laurent> r;
    for (const auto& g : row) {
      Laurent l;
      for (const auto& [mono, q] : g) {
        int ex = 0, ep = 0;
        for (const auto& [name, e] : mono) {
          if (name == "x")
            ex += e;
          else if (name == "pi")
            ep += e;
          else
            throw Error(ErrorKind::UnknownVariable, "connection entries may only use x and pi, not '" + name + "'");
        }
        if (ep < 0) throw Error(ErrorKind::Precondition, "negative power of pi in a connection entry");
        if (ex < 0 && base == Connection::Base::AffineLine)
          throw Error(ErrorKind::Precondition, "negative power of x on the affine line");
        l += Laurent::monomial(ex, Scalar::pi_power(static_cast<unsigned>(ep), q));
      }
      r.push_back(std::move(l));
    }
    c.matrix.push_back(std::move(r));
  }
  return c;
}

Connection make_connection_text(Connection::Base base, const std::vector<std::vector<std::string>>& entries) {
  GenericMatrix m;
  for (const auto& row : entries) {
    std::vector<GenericPoly> r;
    for (const auto& e : row) r.push_back(parse_generic(e));
    m.push_back(std::move(r));
  }
  return make_connection(base, m);
}

LaurentMatrix formal_solution(const Connection& c, unsigned order) {
  const std::size_t r = c.rank();
  int top = 0;
  for (const auto& row : c.matrix)
    for (const auto& e : row) {
      if (!e.is_zero() && e.min_degree() < 0)
        throw Error(ErrorKind::Precondition, "the connection matrix has a pole at 0");
      top = std::max(top, e.max_degree());
    }
  // Coefficient matrices A_e and Y_m over Q[pi].
  using SMatrix = std::vector<std::vector<Scalar>>;
  std::vector<SMatrix> a(static_cast<std::size_t>(top) + 1, SMatrix(r, std::vector<Scalar>(r)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (const auto& [e, s] : c.matrix[i][j].terms()) a[static_cast<std::size_t>(e)][i][j] = s;
  std::vector<SMatrix> y(order + 1, SMatrix(r, std::vector<Scalar>(r)));
  for (std::size_t i = 0; i < r; ++i) y[0][i][i] = Scalar(1);
  for (unsigned m = 0; m < order; ++m) {
    Rational factor = Rational(-1, m + 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Scalar acc;
        for (unsigned e = 0; e <= m && e < a.size(); ++e)
          for (std::size_t t = 0; t < r; ++t) acc += a[e][i][t] * y[m - e][t][j];
        y[m + 1][i][j] = acc * Scalar(factor);
      }
  }
  LaurentMatrix out(r, std::vector<Laurent>(r));
  for (unsigned m = 0; m <= order; ++m)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out[i][j] += Laurent::monomial(static_cast<int>(m), y[m][i][j]);
  return out;
}

// Triviality ----------------------------------------------------------------

std::string to_string(TrivialityLevel::Status s) {
  switch (s) {
    case TrivialityLevel::Status::Trivial: return "trivial";
    case TrivialityLevel::Status::Obstructed: return "obstructed";
    case TrivialityLevel::Status::Undecided: return "undecided";
  }
  return "undecided";
}

LaurentMatrix horizontality_defect(const Connection& c, const LaurentMatrix& g, unsigned level) {
  LaurentMatrix ga = multiply(g, c.matrix);
  LaurentMatrix out(g.size(), std::vector<Laurent>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i][j] = (g[i][j].derivative() - ga[i][j]).truncated(level);
  return out;
}

namespace {

using Row = std::map<std::size_t, Rational>;

/// Incremental exact elimination; rows are kept with their leading column
/// normalised to 1.
class Eliminator {
 public:
  /// False when the row reduces to 0 = nonzero.
  bool add(Row row, Rational rhs) {
    while (!row.empty()) {
      auto [col, coef] = *row.begin();
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        Rational inv = 1 / coef;
        for (auto& [k, v] : row) v *= inv;
        pivots_.emplace(col, std::make_pair(std::move(row), rhs * inv));
        return true;
      }
      const auto& [prow, prhs] = it->second;
      Rational f = coef;
      for (const auto& [k, v] : prow) {
        Rational nv = row[k] - f * v;
        if (nv == 0)
          row.erase(k);
        else
          row[k] = nv;
      }
      rhs -= f * prhs;
    }
    return rhs == 0;
  }

  /// A solution with free unknowns set to zero.
  std::vector<Rational> solve(std::size_t n) const {
    std::vector<Rational> x(n, 0);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto& [row, rhs] = it->second;
      Rational v = rhs;
      for (const auto& [k, c] : row)
        if (k != it->first) v -= c * x[k];
      x[it->first] = v;
    }
    return x;
  }

 private:
  std::map<std::size_t, std::pair<Row, Rational>> pivots_;
};

Laurent det(const LaurentMatrix& m) {
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  Laurent out;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inv;
    Laurent term(Scalar(inv % 2 ? -1 : 1));
    for (std::size_t i = 0; i < perm.size(); ++i) term = term * m[i][perm[i]];
    out += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TrivialityLevel triviality_mod(const Connection& c, unsigned level, int degree_bound) {
  TrivialityLevel out;
  out.level = level;
  const std::size_t r = c.rank();
  const int bound = degree_bound > 0 ? degree_bound : 2 * static_cast<int>(level + 1) * c.max_degree();
  out.degree_bound = bound;
  const bool punctured = c.base == Connection::Base::PuncturedLine;
  const int kmin = punctured ? -bound : 0;
  const std::size_t nk = static_cast<std::size_t>(bound - kmin + 1);
  const std::size_t np = level + 1;
  const std::size_t unknowns = r * r * nk * np;
  if (unknowns > 200000) throw Error(ErrorKind::ResourceLimit, "gauge search with too many unknowns");
  auto index = [&](std::size_t i, std::size_t j, int k, unsigned p) {
    return ((i * r + j) * nk + static_cast<std::size_t>(k - kmin)) * np + p;
  };
  auto describe = [&](std::size_t idx) {
    std::size_t p = idx % np, rest = idx / np;
    int k = static_cast<int>(rest % nk) + kmin;
    rest /= nk;
    std::size_t j = rest % r, i = rest / r;
    return "g" + std::to_string(i + 1) + std::to_string(j + 1) + "[pi^" + std::to_string(p) + "*x^" +
           std::to_string(k) + "]";
  };

  Eliminator elim;
  // Normalisation at the base point.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (unsigned p = 0; p < np; ++p) {
        Row row;
        if (punctured)
          for (int k = kmin; k <= bound; ++k) row[index(i, j, k, p)] = 1;
        else
          row[index(i, j, 0, p)] = 1;
        elim.add(std::move(row), (i == j && p == 0) ? 1 : 0);
      }

  // Coefficient of pi^p x^m in entry (i, j) of dg/dx - g A.
  using Key = std::tuple<unsigned, int, std::size_t, std::size_t>;
  std::map<Key, Row> eqs;
  auto bump = [&](const Key& key, std::size_t idx, const Rational& v) {
    Row& row = eqs[key];
    Rational nv = row[idx] + v;
    if (nv == 0)
      row.erase(idx);
    else
      row[idx] = nv;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (int k = kmin; k <= bound; ++k)
        for (unsigned p = 0; p < np; ++p) {
          if (k != 0) bump({p, k - 1, i, j}, index(i, j, k, p), Rational(k));
        }
  // g A: entry (i, j) gains g_{i t} A_{t j}.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < r; ++t)
      for (int k = kmin; k <= bound; ++k)
        for (unsigned p = 0; p < np; ++p)
          for (std::size_t j = 0; j < r; ++j)
            for (const auto& [e, s] : c.matrix[t][j].terms())
              for (const auto& [q, a] : s.coefficients())
                if (p + q < np) bump({p + q, k + e, i, j}, index(i, t, k, p), -a);

  for (auto& [key, row] : eqs) {
    Row copy = row;
    if (!elim.add(std::move(row), 0)) {
      const auto& [p, m, i, j] = key;
      std::string lhs;
      for (const auto& [idx, v] : copy) {
        std::string coef = rational_str(v < 0 ? Rational(-v) : v);
        lhs += (lhs.empty() ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ")) + (coef == "1" ? "" : coef + "*") +
               describe(idx);
      }
      out.status = TrivialityLevel::Status::Obstructed;
      out.obstruction = "coefficient of pi^" + std::to_string(p) + "*x^" + std::to_string(m) + " in entry (" +
                        std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + (lhs.empty() ? "0" : lhs) +
                        " = 0 is inconsistent with the earlier equations and the normalisation";
      return out;
    }
  }

  std::vector<Rational> x = elim.solve(unknowns);
  LaurentMatrix g(r, std::vector<Laurent>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (int k = kmin; k <= bound; ++k)
        for (unsigned p = 0; p < np; ++p) {
          const Rational& v = x[index(i, j, k, p)];
          if (v != 0) g[i][j] += Laurent::monomial(k, Scalar::pi_power(p, v));
        }

  for (const auto& row : horizontality_defect(c, g, level))
    for (const auto& e : row)
      if (!e.is_zero()) throw Error(ErrorKind::Precondition, "internal: gauge fails horizontality");

  LaurentMatrix g0 = g;
  for (auto& row : g0)
    for (auto& e : row) e = e.truncated(0);
  Laurent d = det(g0);
  bool unit = d.terms().size() == 1 && (punctured || d.terms().begin()->first == 0);
  if (!unit) {
    out.status = TrivialityLevel::Status::Undecided;
    out.obstruction = "the solution found is not invertible mod pi (determinant " + d.str() + ")";
    return out;
  }
  out.status = TrivialityLevel::Status::Trivial;
  out.gauge = std::move(g);
  return out;
}

GaloisDiagnostic galois_diagnostic(const Connection& c, unsigned max_level, int degree_bound) {
  if (c.rank() != 1) throw Error(ErrorKind::Precondition, "the Galois diagnostic needs a rank one connection");
  GaloisDiagnostic out;
  bool chain = true;
  std::optional<unsigned> undecided;
  for (unsigned n = 0; n <= max_level; ++n) {
    out.levels.push_back(triviality_mod(c, n, degree_bound));
    const auto& lv = out.levels.back();
    if (chain && lv.trivial())
      out.trivial_through = static_cast<int>(n);
    else if (chain) {
      chain = false;
      if (lv.status == TrivialityLevel::Status::Undecided) undecided = n;
    }
  }
  const int t = out.trivial_through;
  const std::string nmax = std::to_string(max_level);
  if (c.matrix[0][0].is_zero())
    out.summary = "trivial connection; Gal' = Gal = trivial group";
  else if (undecided)
    out.summary = "trivial through level " + std::to_string(t) + "; undecided at level " + std::to_string(*undecided) +
                  " within the degree bound";
  else if (t == static_cast<int>(max_level))
    out.summary = "trivial through level " + nmax +
                  "; evidence that Gal' is the automatic blowup of Gal at the identity (checked to level " + nmax + ")";
  else if (t < 0)
    out.summary = "not trivial mod pi; no evidence for blowups of the identity";
  else if (t == 0)
    out.summary = "trivial at level 0 only; evidence for exactly one Neron blowup of the identity (Gal' = G'_m)";
  else
    out.summary = "trivial through level " + std::to_string(t) + " only; evidence for exactly " +
                  std::to_string(t + 1) + " Neron blowups of the identity";
  return out;
}

}  // namespace neron
