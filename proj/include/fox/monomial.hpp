#pragma once

#include <string>
#include <string_view>

namespace fox {

/// A word in the free monoid on x1..xn, one char per letter holding the
/// 1-based generator index. Shared by truncated series, envelope polynomials
/// and Lyndon words.
using Monomial = std::string;

inline Monomial letter(int index) { return Monomial(1, static_cast<char>(index)); }
inline int letter_at(const Monomial& m, std::size_t pos) {
  return static_cast<unsigned char>(m[pos]);
}

/// Degree first, then lexicographic (x1 < x2 < ...).
struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// "x1*x2*x1"; the empty monomial prints as "1".
inline std::string monomial_to_string(const Monomial& m, char var = 'x') {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += '*';
    out += var;
    out += std::to_string(letter_at(m, i));
  }
  return out;
}

}  // namespace fox
