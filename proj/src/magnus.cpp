#include "fox/magnus.hpp"

namespace fox {

TruncSeries::TruncSeries(int rank, int cutoff) : rank_(rank), cutoff_(cutoff) {
  if (cutoff < 0) throw PreconditionError("series cutoff must be nonnegative");
}

TruncSeries TruncSeries::one(int rank, int cutoff) {
  TruncSeries s(rank, cutoff);
  s.terms_.emplace(Monomial{}, 1);
  return s;
}

Integer TruncSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void TruncSeries::add_term(const Monomial& m, const Integer& c) {
  if (static_cast<int>(m.size()) > cutoff_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int TruncSeries::min_degree() const {
  return terms_.empty() ? cutoff_ + 1 : static_cast<int>(terms_.begin()->first.size());
}

namespace {
void require_compatible(const TruncSeries& a, const TruncSeries& b) {
  if (a.cutoff() != b.cutoff()) throw MismatchError("series cutoff mismatch");
  if (a.rank() != b.rank()) throw MismatchError("series rank mismatch");
}
}  // namespace

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  TruncSeries out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b) {
  return series_add(a, series_scale(-1, b));
}

TruncSeries series_scale(const Integer& k, const TruncSeries& a) {
  TruncSeries out(a.rank(), a.cutoff());
  if (k == 0) return out;
  for (const auto& [m, c] : a.terms()) out.add_term(m, k * c);
  return out;
}

TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b) {
  require_compatible(a, b);
  TruncSeries out(a.rank(), a.cutoff());
  const auto D = static_cast<std::size_t>(a.cutoff());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      // deg-lex order: once too long, everything after is too
      if (ma.size() + mb.size() > D) break;
      out.add_term(ma + mb, ca * cb);
    }
  }
  return out;
}

Integer binomial(const Integer& e, unsigned k) {
  Integer num = 1, den = 1;
  for (unsigned t = 0; t < k; ++t) {
    num *= e - t;
    den *= t + 1;
  }
  return num / den;
}

namespace {

// Right-multiply s by (1 + x_j)^e truncated.
TruncSeries times_generator_power(const TruncSeries& s, int j, const Integer& e) {
  TruncSeries out(s.rank(), s.cutoff());
  const int D = s.cutoff();
  std::vector<Integer> coeffs;
  for (int k = 0; k <= D; ++k) coeffs.push_back(binomial(e, static_cast<unsigned>(k)));
  for (const auto& [m, c] : s.terms()) {
    Monomial mm = m;
    for (int k = 0; static_cast<int>(m.size()) + k <= D; ++k) {
      if (coeffs[static_cast<std::size_t>(k)] != 0) out.add_term(mm, c * coeffs[static_cast<std::size_t>(k)]);
      mm += static_cast<char>(j);
    }
  }
  return out;
}

}  // namespace

TruncSeries embed(const Word& w, int cutoff) {
  if (w.alphabet()->has_factors())
    throw PreconditionError("Magnus embedding needs a free alphabet (no cyclic factors)");
  TruncSeries s = TruncSeries::one(w.alphabet()->free_rank, cutoff);
  for (const Letter& l : w.letters()) s = times_generator_power(s, l.index, l.exponent);
  return s;
}

TruncSeries embed(const RingElt& a, int cutoff) {
  if (a.alphabet()->has_factors())
    throw PreconditionError("Magnus embedding needs a free alphabet (no cyclic factors)");
  TruncSeries s(a.alphabet()->free_rank, cutoff);
  for (const auto& [w, c] : a.terms()) s = series_add(s, series_scale(c, embed(w, cutoff)));
  return s;
}

std::string to_string(const FiltrationWeight& w) {
  return (w.at_least ? ">=" : "") + std::to_string(w.value);
}

namespace {
FiltrationWeight weight_of(const TruncSeries& s) {
  int d = s.min_degree();
  return {d, d > s.cutoff()};
}
}  // namespace

FiltrationWeight gamma_weight(const Word& w, int cutoff) {
  TruncSeries s = embed(w, cutoff);
  s.add_term(Monomial{}, -1);
  return weight_of(s);
}

FiltrationWeight ideal_weight(const RingElt& a, int cutoff) { return weight_of(embed(a, cutoff)); }

std::string to_string(const TruncSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (m.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += monomial_to_string(m);
    }
  }
  return out;
}

}  // namespace fox
