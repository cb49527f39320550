#include "fox/words.hpp"

#include <algorithm>
#include <cctype>

namespace fox {

AlphabetPtr make_alphabet(int free_rank, std::vector<int> factor_orders) {
  if (free_rank < 0) throw PreconditionError("free rank must be nonnegative");
  if (free_rank + static_cast<int>(factor_orders.size()) < 1)
    throw PreconditionError("alphabet needs at least one generator or factor");
  for (int m : factor_orders)
    if (m < 2) throw PreconditionError("factor orders must be at least 2");
  auto a = std::make_shared<Alphabet>();
  a->free_rank = free_rank;
  a->factor_orders = std::move(factor_orders);
  return a;
}

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
  if (!same_alphabet(a, b)) throw MismatchError("operands live over different alphabets");
}

bool symbol_less(const Symbol& a, const Symbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.index != b.index) return a.index < b.index;
  if (a.kind == LetterKind::factor) return a.exponent < b.exponent;
  // g before g^-1
  return a.exponent > b.exponent;
}

std::vector<Symbol> all_symbols(const Alphabet& alphabet) {
  std::vector<Symbol> out;
  for (int i = 1; i <= alphabet.factor_count(); ++i)
    for (int e = 1; e < alphabet.factor_order(i); ++e) out.push_back({LetterKind::factor, i, e});
  for (int j = 1; j <= alphabet.free_rank; ++j) {
    out.push_back({LetterKind::free, j, 1});
    out.push_back({LetterKind::free, j, -1});
  }
  return out;
}

namespace {

void check_letter(const Alphabet& a, const Letter& l) {
  if (l.kind == LetterKind::free) {
    if (l.index < 1 || l.index > a.free_rank)
      throw PreconditionError("free generator index g" + std::to_string(l.index) + " out of range");
  } else if (l.index < 1 || l.index > a.factor_count()) {
    throw PreconditionError("factor index a" + std::to_string(l.index) + " out of range");
  }
}

Integer normalized_exponent(const Alphabet& a, const Letter& l) {
  if (l.kind == LetterKind::free) return l.exponent;
  Integer m = a.factor_order(l.index);
  Integer e = l.exponent % m;
  if (e < 0) e += m;
  return e;
}

// Push one letter onto a reduced stack, merging and cancelling as needed.
void push_reduced(const Alphabet& a, std::vector<Letter>& stack, Letter l) {
  l.exponent = normalized_exponent(a, l);
  if (l.exponent == 0) return;
  if (!stack.empty() && stack.back().same_base(l)) {
    Letter& top = stack.back();
    top.exponent += l.exponent;
    top.exponent = normalized_exponent(a, top);
    if (top.exponent == 0) stack.pop_back();
    return;
  }
  stack.push_back(std::move(l));
}

}  // namespace

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {
  if (!alphabet_) throw PreconditionError("word needs an alphabet");
}

Word::Word(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {}

Word Word::reduce(AlphabetPtr alphabet, std::span<const Letter> raw) {
  if (!alphabet) throw PreconditionError("word needs an alphabet");
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (const Letter& l : raw) {
    check_letter(*alphabet, l);
    push_reduced(*alphabet, stack, l);
  }
  return Word(std::move(alphabet), std::move(stack));
}

Word Word::generator(AlphabetPtr alphabet, int j, Integer exponent) {
  Letter l = Letter::free(j, std::move(exponent));
  return reduce(std::move(alphabet), std::span<const Letter>(&l, 1));
}

Word Word::factor_element(AlphabetPtr alphabet, int i, Integer exponent) {
  Letter l = Letter::factor(i, std::move(exponent));
  return reduce(std::move(alphabet), std::span<const Letter>(&l, 1));
}

Word Word::from_symbol(AlphabetPtr alphabet, const Symbol& s) {
  Letter l{s.kind, s.index, Integer(s.exponent)};
  return reduce(std::move(alphabet), std::span<const Letter>(&l, 1));
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const Letter& l : letters_)
    n += l.kind == LetterKind::factor ? 1 : Integer(abs(l.exponent)).get_ui();
  return n;
}

std::vector<Symbol> Word::symbols() const {
  std::vector<Symbol> out;
  out.reserve(length());
  for (const Letter& l : letters_) {
    if (l.kind == LetterKind::factor) {
      out.push_back({LetterKind::factor, l.index, static_cast<int>(l.exponent.get_si())});
      continue;
    }
    int sign = sgn(l.exponent);
    for (unsigned long k = Integer(abs(l.exponent)).get_ui(); k > 0; --k)
      out.push_back({LetterKind::free, l.index, sign});
  }
  return out;
}

bool Word::over_free_indices(std::span<const int> indices) const {
  return std::all_of(letters_.begin(), letters_.end(), [&](const Letter& l) {
    return l.kind == LetterKind::free &&
           std::find(indices.begin(), indices.end(), l.index) != indices.end();
  });
}

bool operator==(const Word& a, const Word& b) {
  return same_alphabet(a.alphabet_, b.alphabet_) && a.letters_ == b.letters_;
}

Word multiply(const Word& u, const Word& v) {
  require_same_alphabet(u.alphabet(), v.alphabet());
  std::vector<Letter> stack = u.letters();
  for (const Letter& l : v.letters()) push_reduced(*u.alphabet(), stack, l);
  return Word::reduce(u.alphabet(), stack);
}

Word invert(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.letters().size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it)
    out.push_back({it->kind, it->index, -it->exponent});
  return Word::reduce(u.alphabet(), out);
}

Word conjugate(const Word& u, const Word& t) { return invert(t) * u * t; }

Word commutator(const Word& u, const Word& v) { return invert(u) * invert(v) * u * v; }

Word left_normed_commutator(std::span<const Word> parts) {
  if (parts.empty()) throw PreconditionError("empty commutator");
  Word acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = commutator(acc, parts[i]);
  return acc;
}

Word power(const Word& u, long exponent) {
  Word base = exponent < 0 ? invert(u) : u;
  unsigned long e = exponent < 0 ? -static_cast<unsigned long>(exponent) : exponent;
  Word acc(u.alphabet());
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

CyclicReduction cyclically_reduce(const Word& u) {
  Word core = u;
  Word conj(u.alphabet());
  for (;;) {
    const auto& ls = core.letters();
    if (ls.size() < 2 || !ls.front().same_base(ls.back())) break;
    // a^p X a^q == (a^q)^-1 (a^{p+q} X) a^q
    Word c = Word::reduce(u.alphabet(), std::span<const Letter>(&ls.back(), 1));
    core = c * core * invert(c);
    conj = c * conj;
  }
  return {core, conj};
}

bool shortlex_less(const Word& a, const Word& b) {
  std::size_t la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  auto sa = a.symbols(), sb = b.symbols();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end(), symbol_less);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t seed = w.letters().size();
  for (const Letter& l : w.letters()) {
    hash_combine(seed, static_cast<std::size_t>(l.kind) * 131 + static_cast<std::size_t>(l.index));
    hash_combine(seed, hash_integer(l.exponent));
  }
  return seed;
}

Word parse_word(const AlphabetPtr& alphabet, std::string_view text) {
  std::vector<Letter> raw;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](bool allow_sign) -> Integer {
    std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (digits == i) throw ParseError("expected integer", start);
    std::string s(text.substr(start, i - start));
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  };
  skip_ws();
  while (i < text.size()) {
    std::size_t start = i;
    char c = text[i];
    if (c == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;  // explicit identity token
    } else if (c == 'g' || c == 'a') {
      ++i;
      Integer idx = read_int(false);
      Integer e = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        e = read_int(true);
      }
      if (!idx.fits_sint_p() || idx < 1) throw ParseError("bad generator index", start);
      Letter l{c == 'g' ? LetterKind::free : LetterKind::factor, static_cast<int>(idx.get_si()), e};
      try {
        check_letter(*alphabet, l);
      } catch (const PreconditionError& err) {
        throw ParseError(err.what(), start);
      }
      raw.push_back(std::move(l));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
      throw ParseError("expected whitespace between tokens", i);
    skip_ws();
  }
  return Word::reduce(alphabet, raw);
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.kind == LetterKind::free ? 'g' : 'a';
    out += std::to_string(l.index);
    if (l.exponent != 1) out += "^" + l.exponent.get_str();
  }
  return out;
}

Word retract_to_free_indices(const Word& w, std::span<const int> keep) {
  std::vector<Letter> raw;
  for (const Letter& l : w.letters()) {
    if (l.kind == LetterKind::free && std::find(keep.begin(), keep.end(), l.index) == keep.end())
      continue;
    raw.push_back(l);
  }
  return Word::reduce(w.alphabet(), raw);
}

Word substitute(const Word& w, std::span<const Word> images, const AlphabetPtr& target) {
  Word acc(target);
  for (const Letter& l : w.letters()) {
    if (l.kind != LetterKind::free) throw PreconditionError("substitution needs a free word");
    if (l.index < 1 || static_cast<std::size_t>(l.index) > images.size())
      throw PreconditionError("no image for g" + std::to_string(l.index));
    if (!l.exponent.fits_slong_p()) throw PreconditionError("exponent too large to substitute");
    acc = acc * power(images[static_cast<std::size_t>(l.index - 1)], l.exponent.get_si());
  }
  return acc;
}

}  // namespace fox
