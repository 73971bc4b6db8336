#include "neron/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace neron {

std::string rational_str(const Rational& q) {
  return q.get_str();
}

// Scalar ------------------------------------------------------------------

Scalar::Scalar(long value) {
  if (value != 0) coeffs_.emplace(0u, Rational(value));
}

Scalar::Scalar(const Rational& value) {
  if (value != 0) coeffs_.emplace(0u, value);
}

Scalar Scalar::pi_power(unsigned exponent, const Rational& coefficient) {
  Scalar s;
  if (coefficient != 0) s.coeffs_.emplace(exponent, coefficient);
  return s;
}

Rational Scalar::coefficient(unsigned exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

unsigned Scalar::pi_valuation() const {
  return coeffs_.empty() ? kInfiniteValuation : coeffs_.begin()->first;
}

Scalar Scalar::divide_pi(unsigned m) const {
  if (pi_valuation() < m) throw Error(ErrorKind::NotDivisible, str() + " is not divisible by pi^" + std::to_string(m));
  Scalar out;
  for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e - m, c);
  return out;
}

Scalar Scalar::truncated(unsigned level) const {
  Scalar out;
  for (const auto& [e, c] : coeffs_)
    if (e <= level) out.coeffs_.emplace(e, c);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& kv : out.coeffs_) kv.second = -kv.second;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  for (const auto& [e, c] : other.coeffs_) {
    auto [it, inserted] = coeffs_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  return *this += -other;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [ea, ca] : a.coeffs_)
    for (const auto& [eb, cb] : b.coeffs_) out += Scalar::pi_power(ea + eb, ca * cb);
  return out;
}

std::string Scalar::str() const {
  RingPtr r = make_ring({});
  return Poly::from_scalar(r, *this).str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

// Ring --------------------------------------------------------------------

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@'; };
  std::size_t i = 0;
  if (!alpha(s[0])) return false;
  for (i = 1; i < s.size() && (alpha(s[i]) || std::isdigit(static_cast<unsigned char>(s[i]))); ++i) {
  }
  for (; i < s.size(); ++i)
    if (s[i] != '\'') return false;
  return true;
}

}  // namespace

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == "pi") throw Error(ErrorKind::Precondition, "`pi` is reserved and cannot be a variable");
    if (!valid_identifier(names_[i])) throw Error(ErrorKind::SyntaxError, "invalid variable name '" + names_[i] + "'");
    if (!index_.emplace(names_[i], i).second)
      throw Error(ErrorKind::Precondition, "duplicate variable '" + names_[i] + "'");
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

// MonomialOrder -------------------------------------------------------------

namespace {

int grevlex_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
  long da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  switch (kind) {
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::GRevLex:
      return grevlex_range(a, b, 0, a.size());
    case Kind::BlockLex: {
      std::size_t s = std::min(split, a.size());
      int c = grevlex_range(a, b, 0, s);
      if (c != 0) return c;
      return grevlex_range(a, b, s, a.size());
    }
  }
  return 0;
}

std::string MonomialOrder::str() const {
  switch (kind) {
    case Kind::Lex: return "lex";
    case Kind::GRevLex: return "grevlex";
    case Kind::BlockLex: return "block-lex(" + std::to_string(split) + ")";
  }
  return "?";
}

// Poly --------------------------------------------------------------------

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly::Poly(RingPtr ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != ring_->slots())
      throw Error(ErrorKind::Precondition, "exponent vector length does not match the ring");
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::constant(RingPtr ring, const Rational& value) {
  Poly p(ring);
  if (value != 0) p.terms_.emplace(Exponents(ring->slots(), 0), value);
  return p;
}

Poly Poly::from_scalar(RingPtr ring, const Scalar& value) {
  Poly p(ring);
  for (const auto& [e, c] : value.coefficients()) {
    Exponents x(ring->slots(), 0);
    x[ring->pi_slot()] = static_cast<int>(e);
    p.terms_.emplace(std::move(x), c);
  }
  return p;
}

Poly Poly::pi(RingPtr ring, unsigned exponent) {
  return from_scalar(std::move(ring), Scalar::pi_power(exponent));
}

Poly Poly::var(RingPtr ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw Error(ErrorKind::UnknownVariable, "no variable '" + std::string(name) + "' in ring");
  Exponents x(ring->slots(), 0);
  x[*idx] = 1;
  return monomial(std::move(ring), std::move(x));
}

Poly Poly::monomial(RingPtr ring, Exponents exponents, const Rational& coefficient) {
  Poly p(ring);
  if (exponents.size() != ring->slots()) throw Error(ErrorKind::Precondition, "exponent vector length does not match the ring");
  if (coefficient != 0) p.terms_.emplace(std::move(exponents), coefficient);
  return p;
}

bool Poly::is_scalar() const {
  const std::size_t n = ring_->size();
  for (const auto& kv : terms_)
    for (std::size_t i = 0; i < n; ++i)
      if (kv.first[i] != 0) return false;
  return true;
}

Scalar Poly::to_scalar() const {
  if (!is_scalar()) throw Error(ErrorKind::Precondition, "polynomial " + str() + " is not an element of Q[pi]");
  Scalar s;
  for (const auto& [e, c] : terms_) s += Scalar::pi_power(static_cast<unsigned>(e[ring_->pi_slot()]), c);
  return s;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& kv : terms_) d = std::max(d, std::accumulate(kv.first.begin(), kv.first.end(), 0));
  return d;
}

bool Poly::uses_slot(std::size_t slot) const {
  for (const auto& kv : terms_)
    if (kv.first[slot] != 0) return true;
  return false;
}

bool Poly::uses_variable(std::string_view name) const {
  auto idx = ring_->index_of(name);
  return idx && uses_slot(*idx);
}

unsigned Poly::pi_valuation() const {
  unsigned v = kInfiniteValuation;
  const std::size_t ps = ring_->pi_slot();
  for (const auto& kv : terms_) v = std::min(v, static_cast<unsigned>(kv.first[ps]));
  return v;
}

Poly Poly::divide_scalar_pi(unsigned m) const {
  if (pi_valuation() < m) throw Error(ErrorKind::NotDivisible, str() + " is not divisible by pi^" + std::to_string(m));
  Poly out(ring_);
  const std::size_t ps = ring_->pi_slot();
  for (const auto& [e, c] : terms_) {
    Exponents x = e;
    x[ps] -= static_cast<int>(m);
    out.terms_.emplace(std::move(x), c);
  }
  return out;
}

Poly Poly::truncated(unsigned level) const {
  Poly out(ring_);
  const std::size_t ps = ring_->pi_slot();
  for (const auto& kv : terms_)
    if (static_cast<unsigned>(kv.first[ps]) <= level) out.terms_.insert(kv);
  return out;
}

Scalar Poly::coefficient(const Exponents& var_exponents) const {
  Scalar s;
  const std::size_t n = ring_->size();
  for (const auto& [e, c] : terms_) {
    if (std::equal(e.begin(), e.begin() + static_cast<long>(n), var_exponents.begin()))
      s += Scalar::pi_power(static_cast<unsigned>(e[n]), c);
  }
  return s;
}

std::pair<Exponents, Rational> Poly::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw Error(ErrorKind::Precondition, "zero polynomial has no leading term");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.compare(it->first, best->first) > 0) best = it;
  return *best;
}

void Poly::check_ring(const Poly& other) const {
  if (!same_ring(ring_, other.ring_)) throw Error(ErrorKind::Precondition, "polynomials live in different rings");
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& kv : out.terms_) kv.second = -kv.second;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) {
    auto [it, inserted] = terms_.emplace(e, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_ring(b);
  Poly out(a.ring_);
  Exponents x(a.ring_->slots());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = ea[i] + eb[i];
      Rational c = ca * cb;
      auto [it, inserted] = out.terms_.emplace(x, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly Poly::scaled(const Rational& factor) const {
  if (factor == 0) return Poly(ring_);
  Poly out = *this;
  for (auto& kv : out.terms_) kv.second *= factor;
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Poly Poly::embed(const RingPtr& target) const {
  if (same_ring(ring_, target)) return Poly(target, terms_);
  std::vector<std::size_t> slot_map(ring_->slots());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto idx = target->index_of(ring_->name(i));
    if (!idx) {
      if (uses_slot(i)) throw Error(ErrorKind::UnknownVariable, "variable '" + ring_->name(i) + "' missing from target ring");
      slot_map[i] = target->slots();
    } else {
      slot_map[i] = *idx;
    }
  }
  slot_map[ring_->pi_slot()] = target->pi_slot();
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Exponents x(target->slots(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) x[slot_map[i]] = e[i];
    out.terms_.emplace(std::move(x), c);
  }
  return out;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  order.reserve(terms_.size());
  for (const auto& kv : terms_) order.push_back(&kv);
  const MonomialOrder grl = MonomialOrder::grevlex();
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) { return grl.compare(a->first, b->first) > 0; });

  std::ostringstream os;
  bool first = true;
  for (const auto* term : order) {
    const Exponents& e = term->first;
    Rational c = term->second;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;

    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string name = i == ring_->pi_slot() ? std::string("pi") : ring_->name(i);
      if (e[i] != 1) name += "^" + std::to_string(e[i]);
      factors.push_back(std::move(name));
    }
    // pi is printed first: pi^2*x rather than x*pi^2
    if (!factors.empty() && e[ring_->pi_slot()] != 0) std::rotate(factors.rbegin(), factors.rbegin() + 1, factors.rend());
    if (factors.empty()) {
      os << rational_str(c);
    } else {
      if (c != 1) os << rational_str(c) << "*";
      for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << p.str();
}

// Substitution --------------------------------------------------------------

Substitution::Substitution(RingPtr target, std::map<std::string, Poly> images)
    : target_(std::move(target)), images_(std::move(images)) {
  for (auto& [name, p] : images_) {
    if (!same_ring(p.ring(), target_)) p = p.embed(target_);
  }
}

Substitution Substitution::identity(const RingPtr& ring) {
  Substitution s(ring);
  for (const auto& n : ring->names()) s.images_.emplace(n, Poly::var(ring, n));
  return s;
}

Substitution Substitution::renaming(const RingPtr& source, const RingPtr& target, const std::string& suffix) {
  Substitution s(target);
  for (const auto& n : source->names()) s.images_.emplace(n, Poly::var(target, n + suffix));
  return s;
}

const Poly& Substitution::image(const std::string& name) const {
  auto it = images_.find(name);
  if (it == images_.end()) throw Error(ErrorKind::UnknownVariable, "substitution has no image for '" + name + "'");
  return it->second;
}

void Substitution::set(const std::string& name, Poly image) {
  if (!same_ring(image.ring(), target_)) image = image.embed(target_);
  images_.insert_or_assign(name, std::move(image));
}

void Substitution::set_pi_image(Poly image) {
  if (!same_ring(image.ring(), target_)) image = image.embed(target_);
  pi_image_ = std::move(image);
}

Poly Substitution::apply(const Poly& f) const {
  const RingPtr& src = f.ring();
  const std::size_t slots = src->slots();
  std::vector<const Poly*> base(slots, nullptr);
  Poly pi_default = Poly::pi(target_);
  for (std::size_t i = 0; i < src->size(); ++i) {
    if (!f.uses_slot(i)) continue;
    base[i] = &image(src->name(i));
  }
  base[src->pi_slot()] = pi_image_ ? &*pi_image_ : &pi_default;

  std::vector<std::vector<Poly>> powers(slots);
  auto power = [&](std::size_t slot, int e) -> const Poly& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(Poly::constant(target_, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *base[slot]);
    return cache[static_cast<std::size_t>(e)];
  };

  Poly out(target_);
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(target_, c);
    for (std::size_t i = 0; i < slots; ++i)
      if (e[i] != 0) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

}  // namespace neron
