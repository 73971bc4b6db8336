#include <cctype>

#include "neron/ring.hpp"

namespace neron {

namespace {

GenericPoly generic_constant(const Rational& c) {
  GenericPoly g;
  if (c != 0) g.emplace(GenericMonomial{}, c);
  return g;
}

void add_into(GenericPoly& a, const GenericPoly& b, int sign) {
  for (const auto& [m, c] : b) {
    auto [it, inserted] = a.emplace(m, sign * c);
    if (!inserted) {
      it->second += sign * c;
      if (it->second == 0) a.erase(it);
    }
  }
}

GenericMonomial mul_monomial(const GenericMonomial& a, const GenericMonomial& b) {
  std::map<std::string, int> acc;
  for (const auto& [n, e] : a) acc[n] += e;
  for (const auto& [n, e] : b) acc[n] += e;
  GenericMonomial out;
  for (const auto& [n, e] : acc)
    if (e != 0) out.emplace_back(n, e);
  return out;
}

GenericPoly mul(const GenericPoly& a, const GenericPoly& b) {
  GenericPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_into(out, GenericPoly{{mul_monomial(ma, mb), ca * cb}}, 1);
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, SourcePos origin) : text_(text), origin_(origin) {}

  GenericPoly parse_all() {
    GenericPoly g = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    int line = origin_.line;
    int col = origin_.column;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GenericPoly expr() {
    GenericPoly acc = term();
    for (;;) {
      if (accept('+'))
        add_into(acc, term(), 1);
      else if (accept('-'))
        add_into(acc, term(), -1);
      else
        return acc;
    }
  }

  GenericPoly term() {
    GenericPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = mul(acc, unary());
      } else if (accept('/')) {
        skip_ws();
        std::size_t at = pos_;
        GenericPoly d = unary();
        if (d.size() != 1 || !d.begin()->first.empty()) {
          pos_ = at;
          fail("division is only allowed by a nonzero rational constant");
        }
        acc = mul(acc, generic_constant(1 / d.begin()->second));
      } else {
        return acc;
      }
    }
  }

  GenericPoly unary() {
    if (accept('-')) {
      GenericPoly g = unary();
      for (auto& kv : g) kv.second = -kv.second;
      return g;
    }
    if (accept('+')) return unary();
    return power();
  }

  int exponent() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      neg = true;
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
    return neg ? -e : e;
  }

  GenericPoly power() {
    skip_ws();
    std::size_t at = pos_;
    GenericPoly base = atom();
    if (!accept('^')) return base;
    int e = exponent();
    if (e >= 0) {
      GenericPoly r = generic_constant(1);
      for (int i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    if (base.size() != 1) {
      pos_ = at;
      fail("negative exponents apply only to monomials");
    }
    const auto& [m, c] = *base.begin();
    GenericMonomial inv;
    for (const auto& [n, k] : m) inv.emplace_back(n, -k);
    GenericPoly r = generic_constant(1);
    GenericPoly unit{{inv, 1 / c}};
    for (int i = 0; i < -e; ++i) r = mul(r, unit);
    return r;
  }

  GenericPoly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      GenericPoly g = expr();
      if (!accept(')')) fail("expected ')'");
      return g;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Rational q(std::string(text_.substr(start, pos_ - start)));
      return generic_constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '@'))
        ++pos_;
      while (pos_ < text_.size() && text_[pos_] == '\'') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      GenericPoly g;
      g.emplace(GenericMonomial{{name, 1}}, Rational(1));
      return g;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  SourcePos origin_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string generic_str(const GenericPoly& g) {
  if (g.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c0] : g) {
    Rational c = c0;
    bool negative = c < 0;
    if (negative) c = -c;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (const auto& [n, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += n;
      if (e != 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += rational_str(c);
    else if (c == 1)
      out += mono;
    else
      out += rational_str(c) + "*" + mono;
  }
  return out;
}

GenericPoly parse_generic(std::string_view text, SourcePos origin) {
  return Parser(text, origin).parse_all();
}

Poly to_poly(const GenericPoly& g, const RingPtr& ring, SourcePos origin) {
  auto where = [&] {
    return "line " + std::to_string(origin.line) + ", column " + std::to_string(origin.column) + ": ";
  };
  Poly::TermMap terms;
  for (const auto& [m, c] : g) {
    Exponents x(ring->slots(), 0);
    for (const auto& [name, e] : m) {
      std::size_t slot;
      if (name == "pi") {
        slot = ring->pi_slot();
      } else {
        auto idx = ring->index_of(name);
        if (!idx) throw Error(ErrorKind::UnknownVariable, where() + "unknown variable '" + name + "'");
        slot = *idx;
      }
      if (e < 0) throw Error(ErrorKind::SyntaxError, where() + "negative power of '" + name + "' is not a polynomial");
      x[slot] = e;
    }
    terms.emplace(std::move(x), c);
  }
  return Poly(ring, std::move(terms));
}

Poly parse_poly(std::string_view text, const RingPtr& ring, SourcePos origin) {
  return to_poly(parse_generic(text, origin), ring, origin);
}

std::vector<Poly> parse_poly_list(std::string_view text, const RingPtr& ring, SourcePos origin) {
  std::vector<Poly> out;
  int depth = 0;
  std::size_t start = 0;
  SourcePos piece = origin;
  SourcePos cursor = origin;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : ',';
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      std::string_view item = text.substr(start, i - start);
      bool blank = item.find_first_not_of(" \t\r\n") == std::string_view::npos;
      if (blank) {
        if (i < text.size() || !out.empty())
          throw Error(ErrorKind::SyntaxError, "line " + std::to_string(cursor.line) + ", column " +
                                                  std::to_string(cursor.column) + ": empty list item");
      } else {
        out.push_back(parse_poly(item, ring, piece));
      }
      start = i + 1;
    }
    if (i < text.size()) {
      if (text[i] == '\n') {
        ++cursor.line;
        cursor.column = 1;
      } else {
        ++cursor.column;
      }
    }
    if (c == ',' && depth == 0) piece = cursor;
  }
  return out;
}

}  // namespace neron
