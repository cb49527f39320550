#include "fox/assoc_poly.hpp"

#include <cctype>

namespace fox {

AssocPoly AssocPoly::constant(int rank, const Rational& c) { return monomial(rank, Monomial{}, c); }

AssocPoly AssocPoly::monomial(int rank, const Monomial& m, const Rational& c) {
  AssocPoly p(rank);
  p.add_term(m, c);
  return p;
}

Rational AssocPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AssocPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int AssocPoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

AssocPoly AssocPoly::component(int d) const {
  AssocPoly out(rank_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) == d) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

AssocPoly AssocPoly::truncated(int d) const {
  AssocPoly out(rank_);
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m.size()) > d) break;
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

namespace {
void require_rank(const AssocPoly& a, const AssocPoly& b) {
  if (a.rank() != b.rank()) throw MismatchError("polynomial rank mismatch");
}
}  // namespace

AssocPoly operator+(const AssocPoly& a, const AssocPoly& b) {
  require_rank(a, b);
  AssocPoly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

AssocPoly operator-(const AssocPoly& a, const AssocPoly& b) {
  require_rank(a, b);
  AssocPoly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, -c);
  return out;
}

AssocPoly operator*(const Rational& k, const AssocPoly& a) {
  AssocPoly out(a.rank());
  if (k == 0) return out;
  for (const auto& [m, c] : a.terms()) out.add_term(m, k * c);
  return out;
}

AssocPoly poly_multiply(const AssocPoly& a, const AssocPoly& b) {
  require_rank(a, b);
  AssocPoly out(a.rank());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma + mb, ca * cb);
  return out;
}

AssocPoly poly_commutator(const AssocPoly& p, const AssocPoly& q) { return p * q - q * p; }

std::string rational_to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const AssocPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.empty()) {
      out += rational_to_string(mag);
    } else {
      if (mag != 1) out += rational_to_string(mag) + "*";
      out += monomial_to_string(m);
    }
  }
  return out;
}

namespace {

struct PolyParser {
  int rank;
  std::string_view text;
  std::size_t i = 0;

  void skip() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }
  bool at(char c) {
    skip();
    return i < text.size() && text[i] == c;
  }

  Rational read_rational() {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '/') {
      ++i;
      std::size_t den = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (den == i) throw ParseError("expected denominator", i);
    }
    Rational q(std::string(text.substr(start, i - start)));
    if (q.get_den() == 0) throw ParseError("zero denominator", start);
    q.canonicalize();
    return q;
  }

  Monomial read_factor() {
    skip();
    std::size_t start = i;
    if (i >= text.size() || text[i] != 'x') throw ParseError("expected x<k>", i);
    ++i;
    std::size_t d = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (d == i) throw ParseError("expected generator index", i);
    long k = std::stol(std::string(text.substr(d, i - d)));
    if (k < 1 || k > rank || k > 255) throw ParseError("generator x" + std::to_string(k) + " out of range", start);
    return letter(static_cast<int>(k));
  }

  AssocPoly parse() {
    AssocPoly out(rank);
    skip();
    if (i == text.size()) throw ParseError("empty polynomial", i);
    bool first = true;
    while (true) {
      skip();
      if (i == text.size()) break;
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", i);
      }
      first = false;
      Rational coeff = 1;
      Monomial m;
      bool need_factor = true;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff = read_rational();
        need_factor = false;
        if (at('*')) {
          ++i;
          need_factor = true;
        }
      }
      if (need_factor) {
        m += read_factor();
        while (at('*')) {
          ++i;
          m += read_factor();
        }
      }
      out.add_term(m, sign * coeff);
    }
    return out;
  }
};

}  // namespace

AssocPoly parse_assoc_poly(int rank, std::string_view text) { return PolyParser{rank, text}.parse(); }

}  // namespace fox
