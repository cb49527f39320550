#include "fox/group_ring.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>

#include "fox/magnus.hpp"

namespace fox {

RingElt RingElt::one(AlphabetPtr alphabet) {
  RingElt r(alphabet);
  r.add_term(Word(alphabet), 1);
  return r;
}

RingElt RingElt::from_word(const Word& w, Integer coeff) {
  RingElt r(w.alphabet());
  r.add_term(w, coeff);
  return r;
}

Integer RingElt::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

void RingElt::add_term(const Word& w, const Integer& coeff) {
  if (coeff == 0) return;
  require_same_alphabet(alphabet_, w.alphabet());
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<std::pair<Word, Integer>> RingElt::sorted_terms() const {
  std::vector<std::pair<Word, Integer>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return shortlex_less(a.first, b.first); });
  return out;
}

bool operator==(const RingElt& a, const RingElt& b) {
  return same_alphabet(a.alphabet_, b.alphabet_) && a.terms_ == b.terms_;
}

RingElt ring_add(const RingElt& a, const RingElt& b) {
  require_same_alphabet(a.alphabet(), b.alphabet());
  RingElt out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, c);
  return out;
}

RingElt ring_sub(const RingElt& a, const RingElt& b) {
  require_same_alphabet(a.alphabet(), b.alphabet());
  RingElt out = a;
  for (const auto& [w, c] : b.terms()) out.add_term(w, -c);
  return out;
}

RingElt ring_scale(const Integer& k, const RingElt& a) {
  RingElt out(a.alphabet());
  if (k == 0) return out;
  for (const auto& [w, c] : a.terms()) out.add_term(w, k * c);
  return out;
}

RingElt ring_multiply(const RingElt& a, const RingElt& b) {
  require_same_alphabet(a.alphabet(), b.alphabet());
  RingElt out(a.alphabet());
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out.add_term(u * v, cu * cv);
  return out;
}

RingElt multiply_right(const RingElt& a, const Word& w) {
  RingElt out(a.alphabet());
  for (const auto& [u, c] : a.terms()) out.add_term(u * w, c);
  return out;
}

RingElt multiply_left(const Word& w, const RingElt& a) {
  RingElt out(a.alphabet());
  for (const auto& [u, c] : a.terms()) out.add_term(w * u, c);
  return out;
}

Integer augmentation(const RingElt& a) {
  Integer s = 0;
  for (const auto& [w, c] : a.terms()) s += c;
  return s;
}

namespace {

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Index of the next term separator ('+' / '-' not following '^') at or after pos.
std::size_t next_separator(std::string_view text, std::size_t pos) {
  for (std::size_t p = pos; p < text.size(); ++p) {
    if (text[p] != '+' && text[p] != '-') continue;
    std::size_t q = p;
    while (q > 0 && is_blank(text[q - 1])) --q;
    if (q > 0 && text[q - 1] == '^') continue;
    return p;
  }
  return text.size();
}

}  // namespace

RingElt parse_ring_elt(const AlphabetPtr& alphabet, std::string_view text) {
  RingElt out(alphabet);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && is_blank(text[i])) ++i;
  };
  skip();
  if (i == text.size()) throw ParseError("empty ring element", i);
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-'", i);
    }
    first = false;
    std::size_t end = next_separator(text, i);
    std::string_view term = text.substr(i, end - i);
    while (!term.empty() && is_blank(term.back())) term.remove_suffix(1);
    if (term.empty()) throw ParseError("empty term", i);
    Integer coeff = 1;
    std::string_view word_text = term;
    std::size_t word_offset = i;
    std::size_t d = 0;
    while (d < term.size() && std::isdigit(static_cast<unsigned char>(term[d]))) ++d;
    if (d > 0) {
      std::size_t after = d;
      while (after < term.size() && is_blank(term[after])) ++after;
      if (after == term.size()) {
        coeff = Integer(std::string(term.substr(0, d)));
        word_text = {};
      } else if (term[after] == '*') {
        coeff = Integer(std::string(term.substr(0, d)));
        word_text = term.substr(after + 1);
        word_offset = i + after + 1;
      }
    }
    try {
      out.add_term(parse_word(alphabet, word_text), sign * coeff);
    } catch (const ParseError& e) {
      throw e.shifted(word_offset);
    }
    i = end;
    skip();
  }
  return out;
}

std::string to_string(const RingElt& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : a.sorted_terms()) {
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (w.is_identity()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += to_string(w);
    }
  }
  return out;
}

std::string key_to_string(const CosetKey& key) {
  std::string out = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ",";
    out += key[i].get_str();
  }
  return out + ")";
}

std::string to_string(const Residue& r) {
  if (r.empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [k, c] : r) {
    if (!first) out += ", ";
    first = false;
    out += key_to_string(k) + ": " + c.get_str();
  }
  return out + "}";
}

QuotientOracle QuotientOracle::trivial(AlphabetPtr alphabet) {
  QuotientOracle q;
  q.kind_ = Kind::trivial;
  q.alphabet_ = std::move(alphabet);
  q.index_ = 1;
  return q;
}

QuotientOracle QuotientOracle::identity_subgroup(AlphabetPtr alphabet) {
  QuotientOracle q;
  q.kind_ = Kind::identity;
  q.alphabet_ = std::move(alphabet);
  if (q.alphabet_->free_rank == 0 && q.alphabet_->factor_count() == 1) q.index_ = q.alphabet_->factor_orders[0];
  return q;
}

QuotientOracle QuotientOracle::abelianization(AlphabetPtr alphabet, bool kill_factors) {
  QuotientOracle q;
  q.kind_ = Kind::abelian;
  q.alphabet_ = std::move(alphabet);
  q.kill_factors_ = kill_factors;
  std::size_t width = static_cast<std::size_t>(q.alphabet_->free_rank);
  if (!kill_factors) width += q.alphabet_->factor_orders.size();
  q.identity_key_.assign(width, 0);
  if (q.alphabet_->free_rank == 0) {
    long idx = 1;
    if (!kill_factors)
      for (int m : q.alphabet_->factor_orders) idx *= m;
    q.index_ = idx;
  }
  return q;
}

QuotientOracle QuotientOracle::free_nilpotent(AlphabetPtr alphabet, int c) {
  if (alphabet->has_factors())
    throw UnsupportedError("free-nilpotent oracle is only defined for free alphabets");
  if (c < 1) throw PreconditionError("nilpotency class must be at least 1");
  QuotientOracle q;
  q.kind_ = Kind::nilpotent;
  q.alphabet_ = std::move(alphabet);
  q.nilpotent_class_ = c;
  q.identity_key_ = q.coset_key(Word(q.alphabet_));
  return q;
}

QuotientOracle QuotientOracle::finite_abelian(AlphabetPtr alphabet, std::vector<Integer> orders,
                                              std::vector<std::vector<Integer>> free_images,
                                              std::vector<std::vector<Integer>> factor_images) {
  if (orders.empty()) throw PreconditionError("finite quotient needs at least one target order");
  for (const Integer& m : orders)
    if (m < 1) throw PreconditionError("target orders must be positive");
  if (free_images.size() != static_cast<std::size_t>(alphabet->free_rank))
    throw PreconditionError("need one image per free generator");
  factor_images.resize(alphabet->factor_orders.size(), std::vector<Integer>(orders.size(), 0));
  auto normalize = [&](std::vector<Integer>& v) {
    if (v.size() != orders.size()) throw PreconditionError("image has wrong number of components");
    for (std::size_t t = 0; t < v.size(); ++t) {
      v[t] %= orders[t];
      if (v[t] < 0) v[t] += orders[t];
    }
  };
  for (auto& v : free_images) normalize(v);
  for (std::size_t i = 0; i < factor_images.size(); ++i) {
    normalize(factor_images[i]);
    for (std::size_t t = 0; t < orders.size(); ++t)
      if ((factor_images[i][t] * alphabet->factor_orders[i]) % orders[t] != 0)
        throw PreconditionError("image of a" + std::to_string(i + 1) +
                                " is incompatible with its order");
  }
  QuotientOracle q;
  q.kind_ = Kind::finite;
  q.alphabet_ = std::move(alphabet);
  q.orders_ = std::move(orders);
  q.free_images_ = std::move(free_images);
  q.factor_images_ = std::move(factor_images);
  q.identity_key_.assign(q.orders_.size(), 0);

  // [F:N] is the size of the image subgroup.
  std::vector<std::vector<Integer>> gens = q.free_images_;
  gens.insert(gens.end(), q.factor_images_.begin(), q.factor_images_.end());
  std::set<CosetKey> seen{q.identity_key_};
  std::deque<CosetKey> queue{q.identity_key_};
  while (!queue.empty()) {
    CosetKey cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      CosetKey next = cur;
      for (std::size_t t = 0; t < next.size(); ++t) next[t] = (next[t] + g[t]) % q.orders_[t];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  q.index_ = static_cast<long>(seen.size());
  return q;
}

CosetKey QuotientOracle::coset_key(const Word& w) const {
  require_same_alphabet(alphabet_, w.alphabet());
  switch (kind_) {
    case Kind::trivial:
      return {};
    case Kind::identity: {
      CosetKey key;
      for (const Letter& l : w.letters()) {
        key.push_back(static_cast<int>(l.kind));
        key.push_back(l.index);
        key.push_back(l.exponent);
      }
      return key;
    }
    case Kind::abelian: {
      CosetKey key = identity_key_;
      const auto fr = static_cast<std::size_t>(alphabet_->free_rank);
      for (const Letter& l : w.letters()) {
        if (l.kind == LetterKind::free) {
          key[static_cast<std::size_t>(l.index - 1)] += l.exponent;
        } else if (!kill_factors_) {
          auto slot = fr + static_cast<std::size_t>(l.index - 1);
          key[slot] = (key[slot] + l.exponent) % alphabet_->factor_order(l.index);
        }
      }
      return key;
    }
    case Kind::nilpotent: {
      // Dense coefficient vector over all monomials of degree 1..c in deg-lex order.
      TruncSeries s = embed(w, nilpotent_class_);
      CosetKey key;
      const int n = alphabet_->free_rank;
      Monomial m;
      for (int d = 1; d <= nilpotent_class_; ++d) {
        m.assign(static_cast<std::size_t>(d), static_cast<char>(1));
        for (;;) {
          key.push_back(s.coefficient(m));
          int pos = d - 1;
          while (pos >= 0 && letter_at(m, static_cast<std::size_t>(pos)) == n) {
            m[static_cast<std::size_t>(pos)] = 1;
            --pos;
          }
          if (pos < 0) break;
          ++m[static_cast<std::size_t>(pos)];
        }
      }
      return key;
    }
    case Kind::finite: {
      CosetKey key = identity_key_;
      for (const Letter& l : w.letters()) {
        const auto& img = l.kind == LetterKind::free ? free_images_[static_cast<std::size_t>(l.index - 1)]
                                                     : factor_images_[static_cast<std::size_t>(l.index - 1)];
        for (std::size_t t = 0; t < key.size(); ++t) key[t] += l.exponent * img[t];
      }
      for (std::size_t t = 0; t < key.size(); ++t) {
        key[t] %= orders_[t];
        if (key[t] < 0) key[t] += orders_[t];
      }
      return key;
    }
  }
  return {};
}

std::string QuotientOracle::describe() const {
  switch (kind_) {
    case Kind::trivial:
      return "trivial";
    case Kind::identity:
      return "identity";
    case Kind::abelian:
      return kill_factors_ ? "abelian" : "abelian-keep-factors";
    case Kind::nilpotent:
      return "nilpotent:" + std::to_string(nilpotent_class_);
    case Kind::finite: {
      std::string out = "finite:";
      for (std::size_t t = 0; t < orders_.size(); ++t) out += (t ? "," : "") + orders_[t].get_str();
      return out;
    }
  }
  return "?";
}

Residue reduce_mod(const RingElt& a, const QuotientOracle& q) {
  require_same_alphabet(a.alphabet(), q.alphabet());
  Residue out;
  for (const auto& [w, c] : a.terms()) {
    auto [it, inserted] = out.try_emplace(q.coset_key(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

}  // namespace fox
