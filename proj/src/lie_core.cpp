#include "fox/lie_core.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace fox {

namespace {

struct BasisTable {
  std::vector<Monomial> words;
  std::unordered_map<Monomial, int> index;
};

std::mutex g_basis_mutex;
std::map<std::pair<int, int>, BasisTable> g_basis;

const BasisTable& basis_table(int rank, int d) {
  if (rank < 1 || d < 1) throw PreconditionError("lyndon_basis needs rank >= 1 and d >= 1");
  if (rank > 255) throw PreconditionError("rank too large");
  std::lock_guard lock(g_basis_mutex);
  auto it = g_basis.find({rank, d});
  if (it != g_basis.end()) return it->second;
  // Duval's generation of Lyndon words of length <= d in lex order.
  BasisTable t;
  std::vector<int> w{0};
  while (!w.empty()) {
    if (static_cast<int>(w.size()) == d) {
      Monomial m;
      for (int c : w) m += letter(c + 1);
      t.index.emplace(m, static_cast<int>(t.words.size()));
      t.words.push_back(std::move(m));
    }
    const std::size_t period = w.size();
    while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - period]);
    while (!w.empty() && w.back() == rank - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return g_basis.emplace(std::pair{rank, d}, std::move(t)).first->second;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

void require_rank(const LieElt& a, const LieElt& b) {
  if (a.rank() != b.rank()) throw MismatchError("Lie element rank mismatch");
}

std::mutex g_expand_mutex;
std::map<std::pair<int, Monomial>, AssocPoly> g_expand;

const AssocPoly& expand_basis(int rank, const Monomial& w) {
  {
    std::lock_guard lock(g_expand_mutex);
    auto it = g_expand.find({rank, w});
    if (it != g_expand.end()) return it->second;
  }
  AssocPoly p(rank);
  if (w.size() == 1) {
    p = AssocPoly::monomial(rank, w);
  } else {
    auto [u, v] = standard_factorization(w);
    p = poly_commutator(expand_basis(rank, u), expand_basis(rank, v));
  }
  std::lock_guard lock(g_expand_mutex);
  return g_expand.emplace(std::pair{rank, w}, std::move(p)).first->second;
}

std::mutex g_bracket_mutex;
std::map<std::tuple<int, Monomial, Monomial>, LieElt> g_bracket;

// [P_u, P_v] for Lyndon u < v.
const LieElt& bracket_basis(int rank, const Monomial& u, const Monomial& v) {
  auto key = std::tuple{rank, u, v};
  {
    std::lock_guard lock(g_bracket_mutex);
    auto it = g_bracket.find(key);
    if (it != g_bracket.end()) return it->second;
  }
  LieElt r = project_to_lyndon(poly_commutator(expand_basis(rank, u), expand_basis(rank, v)));
  std::lock_guard lock(g_bracket_mutex);
  return g_bracket.emplace(std::move(key), std::move(r)).first->second;
}

}  // namespace

bool is_lyndon(const Monomial& w) {
  if (w.empty()) return false;
  for (std::size_t k = 1; k < w.size(); ++k)
    if (!(w < w.substr(k) + w.substr(0, k))) return false;
  return true;
}

const std::vector<Monomial>& lyndon_basis(int rank, int d) { return basis_table(rank, d).words; }

int lyndon_index(int rank, const Monomial& w) {
  const BasisTable& t = basis_table(rank, static_cast<int>(w.size()));
  auto it = t.index.find(w);
  if (it == t.index.end()) throw PreconditionError("not a Lyndon word over the given rank");
  return it->second;
}

Integer witt_dimension(int rank, int d) {
  if (rank < 1 || d < 1) throw PreconditionError("witt_dimension needs rank >= 1 and d >= 1");
  Integer total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = mobius(e);
    if (!mu) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(rank), static_cast<unsigned long>(d / e));
    total += mu * p;
  }
  return total / d;
}

std::pair<Monomial, Monomial> standard_factorization(const Monomial& w) {
  if (w.size() < 2) throw PreconditionError("standard factorization needs length >= 2");
  for (std::size_t k = 1; k < w.size(); ++k) {
    Monomial v = w.substr(k);
    if (is_lyndon(v)) return {w.substr(0, k), v};
  }
  throw PreconditionError("word has no proper Lyndon suffix");
}

std::string bracketing_to_string(const Monomial& w) {
  if (w.size() == 1) return "y" + std::to_string(letter_at(w, 0));
  auto [u, v] = standard_factorization(w);
  return "[" + bracketing_to_string(u) + "," + bracketing_to_string(v) + "]";
}

LieElt LieElt::generator(int rank, int i) {
  if (i < 1 || i > rank) throw PreconditionError("generator y" + std::to_string(i) + " out of range");
  return basis(rank, letter(i));
}

LieElt LieElt::basis(int rank, const Monomial& lyndon, const Rational& c) {
  if (!is_lyndon(lyndon)) throw PreconditionError("basis element must be a Lyndon word");
  LieElt a(rank);
  a.add_term(lyndon, c);
  return a;
}

Rational LieElt::coefficient(const Monomial& w) const {
  auto it = coords_.find(w);
  return it == coords_.end() ? Rational(0) : it->second;
}

void LieElt::add_term(const Monomial& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = coords_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coords_.erase(it);
  }
}

int LieElt::degree() const { return coords_.empty() ? 0 : static_cast<int>(coords_.rbegin()->first.size()); }
int LieElt::min_degree() const { return coords_.empty() ? 0 : static_cast<int>(coords_.begin()->first.size()); }
bool LieElt::is_homogeneous() const { return degree() == min_degree(); }

LieElt LieElt::component(int d) const {
  LieElt out(rank_);
  for (const auto& [w, c] : coords_)
    if (static_cast<int>(w.size()) == d) out.coords_.emplace_hint(out.coords_.end(), w, c);
  return out;
}

std::vector<int> LieElt::degrees() const {
  std::vector<int> out;
  for (const auto& [w, c] : coords_)
    if (out.empty() || out.back() != static_cast<int>(w.size())) out.push_back(static_cast<int>(w.size()));
  return out;
}

LieElt operator+(const LieElt& a, const LieElt& b) {
  require_rank(a, b);
  LieElt out = a;
  for (const auto& [w, c] : b.coords()) out.add_term(w, c);
  return out;
}

LieElt operator-(const LieElt& a, const LieElt& b) {
  require_rank(a, b);
  LieElt out = a;
  for (const auto& [w, c] : b.coords()) out.add_term(w, -c);
  return out;
}

LieElt operator*(const Rational& k, const LieElt& a) {
  LieElt out(a.rank());
  if (k == 0) return out;
  for (const auto& [w, c] : a.coords()) out.add_term(w, k * c);
  return out;
}

LieElt bracket(const LieElt& a, const LieElt& b) {
  require_rank(a, b);
  LieElt out(a.rank());
  for (const auto& [u, cu] : a.coords()) {
    for (const auto& [v, cv] : b.coords()) {
      if (u == v) continue;
      const bool swapped = v < u;
      const LieElt& r = swapped ? bracket_basis(a.rank(), v, u) : bracket_basis(a.rank(), u, v);
      const Rational k = swapped ? Rational(-cu * cv) : Rational(cu * cv);
      for (const auto& [w, c] : r.coords()) out.add_term(w, k * c);
    }
  }
  return out;
}

LieElt left_normed(const std::vector<LieElt>& parts) {
  if (parts.empty()) throw PreconditionError("empty bracket");
  LieElt acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = bracket(acc, parts[i]);
  return acc;
}

AssocPoly expand_to_assoc(const LieElt& a) {
  AssocPoly out(a.rank());
  for (const auto& [w, c] : a.coords())
    for (const auto& [m, k] : expand_basis(a.rank(), w).terms()) out.add_term(m, c * k);
  return out;
}

LieElt project_to_lyndon(const AssocPoly& p) {
  LieElt out(p.rank());
  AssocPoly rest = p;
  // The standard bracketing of a Lyndon word w expands to w plus lex-larger words.
  while (!rest.is_zero()) {
    const auto& [w, c] = *rest.terms().begin();
    if (!is_lyndon(w)) throw NotLieError("polynomial is not a Lie element: " + to_string(rest), rest);
    const Monomial word = w;
    const Rational coeff = c;
    out.add_term(word, coeff);
    for (const auto& [m, k] : expand_basis(p.rank(), word).terms()) rest.add_term(m, -coeff * k);
  }
  return out;
}

RVector dense_component(const LieElt& a, int d) {
  RVector v(lyndon_basis(a.rank(), d).size());
  for (const auto& [w, c] : a.coords())
    if (static_cast<int>(w.size()) == d) v[lyndon_index(a.rank(), w)] = c;
  return v;
}

LieElt from_dense(int rank, int d, const RVector& v) {
  const auto& words = lyndon_basis(rank, d);
  if (v.size() != words.size()) throw MismatchError("dense vector has the wrong length");
  LieElt out(rank);
  for (std::size_t i = 0; i < v.size(); ++i) out.add_term(words[i], v[i]);
  return out;
}

std::string to_string(const LieElt& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : a.coords()) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += rational_to_string(mag) + "*";
    out += bracketing_to_string(w);
  }
  return out;
}

namespace {

struct LieParser {
  int rank;
  std::string_view text;
  std::size_t i = 0;

  void skip() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }
  char peek() {
    skip();
    return i < text.size() ? text[i] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
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

  LieElt atom() {
    char c = peek();
    std::size_t start = i;
    if (c == 'y') {
      ++i;
      std::size_t d = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (d == i) throw ParseError("expected generator index", i);
      long k = std::stol(std::string(text.substr(d, i - d)));
      if (k < 1 || k > rank) throw ParseError("generator y" + std::to_string(k) + " out of range", start);
      return LieElt::generator(rank, static_cast<int>(k));
    }
    if (c == '[') {
      ++i;
      LieElt a = expr();
      expect(',');
      LieElt b = expr();
      expect(']');
      return bracket(a, b);
    }
    throw ParseError("expected 'y<k>' or '['", i);
  }

  LieElt term() {
    Rational coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = read_rational();
      expect('*');
    }
    return coeff * atom();
  }

  LieElt expr() {
    LieElt out(rank);
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    }
    out = out + Rational(sign) * term();
    while (peek() == '+' || peek() == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      out = out + Rational(sign) * term();
    }
    return out;
  }

  LieElt parse() {
    skip();
    if (text.substr(i) == "0") return LieElt(rank);
    LieElt out = expr();
    skip();
    if (i != text.size()) throw ParseError("unexpected trailing input", i);
    return out;
  }
};

}  // namespace

LieElt parse_lie(int rank, std::string_view text) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  return LieParser{rank, text}.parse();
}

GradedSubspace::GradedSubspace(int rank, int cutoff) : rank_(rank), cutoff_(cutoff) {
  if (rank < 1 || cutoff < 1) throw PreconditionError("graded subspace needs rank >= 1 and cutoff >= 1");
  for (int d = 1; d <= cutoff; ++d) by_degree_.emplace_back(static_cast<int>(lyndon_basis(rank, d).size()));
}

GradedSubspace GradedSubspace::power(int rank, int cutoff, int m) {
  GradedSubspace s(rank, cutoff);
  for (int d = std::max(m, 1); d <= cutoff; ++d) s.by_degree_[d - 1] = Echelon::identity(s.by_degree_[d - 1].columns());
  return s;
}

GradedSubspace GradedSubspace::subalgebra_on(int rank, int cutoff, const std::vector<int>& indices) {
  GradedSubspace s(rank, cutoff);
  for (int d = 1; d <= cutoff; ++d) {
    const auto& words = lyndon_basis(rank, d);
    for (std::size_t k = 0; k < words.size(); ++k) {
      bool inside = true;
      for (std::size_t p = 0; p < words[k].size() && inside; ++p)
        inside = std::find(indices.begin(), indices.end(), letter_at(words[k], p)) != indices.end();
      if (!inside) continue;
      RVector v(words.size());
      v[k] = 1;
      s.by_degree_[d - 1].insert(v);
    }
  }
  return s;
}

GradedSubspace GradedSubspace::span(int rank, int cutoff, const std::vector<LieElt>& elements) {
  GradedSubspace s(rank, cutoff);
  for (const LieElt& a : elements) s.insert(a);
  return s;
}

const Echelon& GradedSubspace::degree(int d) const {
  if (d < 1 || d > cutoff_) throw PreconditionError("degree " + std::to_string(d) + " outside cutoff");
  return by_degree_[d - 1];
}

Echelon& GradedSubspace::degree_mut(int d) {
  if (d < 1 || d > cutoff_) throw PreconditionError("degree " + std::to_string(d) + " outside cutoff");
  return by_degree_[d - 1];
}

bool GradedSubspace::insert(const LieElt& a) {
  if (a.rank() != rank_) throw MismatchError("Lie element rank does not match subspace");
  bool grew = false;
  for (int d : a.degrees())
    if (d <= cutoff_) grew = by_degree_[d - 1].insert(dense_component(a, d)) || grew;
  return grew;
}

bool GradedSubspace::member(const LieElt& a) const {
  if (a.rank() != rank_) throw MismatchError("Lie element rank does not match subspace");
  for (int d : a.degrees()) {
    if (d > cutoff_) throw PreconditionError("element degree exceeds subspace cutoff");
    if (!by_degree_[d - 1].contains(dense_component(a, d))) return false;
  }
  return true;
}

std::map<int, int> GradedSubspace::dims() const {
  std::map<int, int> out;
  for (int d = 1; d <= cutoff_; ++d) out[d] = by_degree_[d - 1].rank();
  return out;
}

std::vector<LieElt> GradedSubspace::basis(int d) const {
  std::vector<LieElt> out;
  for (const RVector& r : degree(d).rows()) out.push_back(from_dense(rank_, d, r));
  return out;
}

bool GradedSubspace::contains(const GradedSubspace& other) const {
  require_compatible(*this, other);
  for (int d = 1; d <= cutoff_; ++d)
    for (const RVector& r : other.by_degree_[d - 1].rows())
      if (!by_degree_[d - 1].contains(r)) return false;
  return true;
}

void require_compatible(const GradedSubspace& a, const GradedSubspace& b) {
  if (a.rank() != b.rank()) throw MismatchError("graded subspace rank mismatch");
  if (a.cutoff() != b.cutoff()) throw MismatchError("graded subspace cutoff mismatch");
}

GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b) {
  require_compatible(a, b);
  GradedSubspace out = a;
  for (int d = 1; d <= a.cutoff(); ++d) out.degree_mut(d) = sum(a.degree(d), b.degree(d));
  return out;
}

GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b) {
  require_compatible(a, b);
  GradedSubspace out(a.rank(), a.cutoff());
  for (int d = 1; d <= a.cutoff(); ++d) out.degree_mut(d) = intersect(a.degree(d), b.degree(d));
  return out;
}

GradedSubspace bracket_span(const GradedSubspace& a, const GradedSubspace& b) {
  require_compatible(a, b);
  const int D = a.cutoff();
  GradedSubspace out(a.rank(), D);
  std::vector<std::vector<LieElt>> ba(D + 1), bb(D + 1);
  for (int d = 1; d <= D; ++d) {
    ba[d] = a.basis(d);
    bb[d] = b.basis(d);
  }
  for (int d = 2; d <= D; ++d) {
    Echelon& target = out.degree_mut(d);
    for (int i = 1; i < d; ++i) {
      for (const LieElt& x : ba[i]) {
        for (const LieElt& y : bb[d - i]) {
          if (target.rank() == target.columns()) break;
          target.insert(dense_component(bracket(x, y), d));
        }
      }
    }
  }
  return out;
}

GradedSubspace ideal_closure(const GradedSubspace& s) {
  GradedSubspace out = s;
  for (int d = 1; d < s.cutoff(); ++d) {
    Echelon& next = out.degree_mut(d + 1);
    for (const LieElt& x : out.basis(d)) {
      for (int i = 1; i <= s.rank() && next.rank() < next.columns(); ++i)
        next.insert(dense_component(bracket(x, LieElt::generator(s.rank(), i)), d + 1));
    }
  }
  return out;
}

std::vector<Integer> free_lie_dims(const std::vector<int>& generator_degrees, int cutoff) {
  std::vector<Rational> gen(cutoff + 1);
  for (int e : generator_degrees) {
    if (e < 1) throw PreconditionError("generator degrees must be positive");
    if (e <= cutoff) gen[e] += 1;
  }
  // a_n = sum_m [C(t)^m]_n / m, the coefficients of -log(1 - C(t)).
  std::vector<Rational> a(cutoff + 1), powm(cutoff + 1);
  powm[0] = 1;
  for (int m = 1; m <= cutoff; ++m) {
    std::vector<Rational> next(cutoff + 1);
    for (int i = 0; i <= cutoff; ++i) {
      if (powm[i] == 0) continue;
      for (int j = 1; i + j <= cutoff; ++j)
        if (gen[j] != 0) next[i + j] += powm[i] * gen[j];
    }
    powm = std::move(next);
    for (int n = 1; n <= cutoff; ++n) a[n] += powm[n] / m;
  }
  std::vector<Integer> out(cutoff + 1);
  for (int d = 1; d <= cutoff; ++d) {
    Rational acc = 0;
    for (int e = 1; e <= d; ++e)
      if (d % e == 0) acc += mobius(d / e) * (e * a[e]);
    acc /= d;
    if (acc.get_den() != 1) throw Error("graded Witt formula produced a non-integer");
    out[d] = acc.get_num();
  }
  return out;
}

}  // namespace fox
