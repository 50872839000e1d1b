#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace ncp {

using Q = mpq_class;
using Z = mpz_class;

/// Parse "p/q" or "p" into a canonical rational.
inline Q parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  Q r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Q& q) { return q.get_str(); }

inline bool is_odd(long k) { return (k % 2 + 2) % 2 == 1; }
inline int sign_of(long k) { return is_odd(k) ? -1 : 1; }

/// Sparse vector over integer-indexed basis; zero entries are never stored.
using Vec = std::map<int, Q>;

inline void axpy(Vec& y, const Q& a, const Vec& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

inline void add_entry(Vec& y, int k, const Q& a) {
  if (a == 0) return;
  auto it = y.find(k);
  if (it == y.end()) {
    y.emplace(k, a);
  } else {
    it->second += a;
    if (it->second == 0) y.erase(it);
  }
}

inline Vec scaled(const Vec& x, const Q& a) {
  Vec y;
  axpy(y, a, x);
  return y;
}

inline Vec unit_vec(int k) { return Vec{{k, Q(1)}}; }

}  // namespace ncp
