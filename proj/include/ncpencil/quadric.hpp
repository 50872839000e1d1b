#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "category.hpp"
#include "ncsys.hpp"
#include "twisted.hpp"

namespace ncp::quadric {

/// Basis ids shared by all the case-study categories; the Kronecker quiver
/// occupies ids 0..3 and every larger category extends it.
struct Ids {
  static constexpr int X = 0, Y = 1;
  static constexpr int e = 0, f = 1, a = 2, b = 3;
  static constexpr int as = 4, bs = 5, c = 6, g = 7;  // a*, b*, a*a, aa*
};

inline void require_n(int n) {
  if (n < 3) throw std::invalid_argument("n must be at least 3");
}

/// Graded Kronecker quiver: A(X,Y) = ⟨a, b⟩ with |a| = 0, |b| = n-1.
inline AInfCategory build_kronecker(int n, int modulus = 0) {
  require_n(n);
  AInfCategory k;
  k.modulus = modulus;
  int x = k.add_object("X"), y = k.add_object("Y");
  k.add_unit(x, "e");
  k.add_unit(y, "f");
  k.add_basis("a", x, y, 0);
  k.add_basis("b", x, y, n - 1);
  add_unit_products(k);
  return k;
}

/// Kronecker quiver extended by a*, b* with products prescribed by
/// b*a = p e, ab* = p f, a*b = q e, ba* = q f, aa* = bb*, a*a = b*b.
inline AInfCategory build_frobenius(int n, long deg_as, long deg_bs, const Q& p, const Q& q, int modulus) {
  require_n(n);
  using I = Ids;
  AInfCategory k = build_kronecker(n, modulus);
  k.mu.clear();
  k.add_basis("a*", I::Y, I::X, deg_as);
  k.add_basis("b*", I::Y, I::X, deg_bs);
  k.add_basis("a*a", I::X, I::X, deg_as);
  k.add_basis("aa*", I::Y, I::Y, deg_as);
  add_unit_products(k);
  auto prod = [&](int x2, int x1, int out, const Q& c) { add_product(k, x2, x1, out, c); };
  prod(I::as, I::a, I::c, 1);
  prod(I::bs, I::b, I::c, 1);
  prod(I::a, I::as, I::g, 1);
  prod(I::b, I::bs, I::g, 1);
  prod(I::bs, I::a, I::e, p);
  prod(I::a, I::bs, I::f, p);
  prod(I::as, I::b, I::e, q);
  prod(I::b, I::as, I::f, q);
  // consequences of the relations on the products through a*a and aa*
  prod(I::a, I::c, I::b, p);
  prod(I::g, I::a, I::b, p);
  prod(I::b, I::c, I::a, q);
  prod(I::g, I::b, I::a, q);
  prod(I::c, I::as, I::bs, q);
  prod(I::as, I::g, I::bs, q);
  prod(I::c, I::bs, I::as, p);
  prod(I::bs, I::g, I::as, p);
  prod(I::c, I::c, I::e, p * q);
  prod(I::g, I::g, I::f, p * q);
  return k;
}

inline AInfCategory build_f_infty(int n, const Q& lambda) {
  if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
  return build_frobenius(n, n - 1, 0, lambda, 0, 0);
}

inline AInfCategory build_f_zero(int n, const Q& lambda) {
  if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
  return build_frobenius(n, 1 - n, 2 - 2 * n, 0, lambda, 0);
}

/// Z/(2n-2)-graded fibre with b*a = s·λ∞ e and a*b = t·λ0 e.
inline AInfCategory generic_fibre(int n, const Q& s, const Q& t, const Q& l_inf = 1, const Q& l_zero = 1) {
  if (s == 0 && t == 0) throw std::invalid_argument("s and t cannot both vanish");
  return build_frobenius(n, n - 1, 0, s * l_inf, t * l_zero, 2 * n - 2);
}

/// Y_d = Cone(⊕_{k=1..d} X[k(1-n)] → ⊕_{k=0..d} Y[k(1-n)]); Y_0 = Y, Y_{-1} = X.
inline TwistedComplex build_Yd(int n, int d) {
  require_n(n);
  std::string name = "Y" + std::to_string(d);
  if (d == -1) return TwistedComplex::object(name, Ids::X);
  if (d == 0) return TwistedComplex::object(name, Ids::Y);
  if (d < -1) throw std::invalid_argument("d must be at least -1");
  TwistedComplex t{name, {}, {}};
  for (int k = 1; k <= d; ++k) t.summands.push_back({Ids::X, static_cast<long>(k) * (1 - n) + 1});
  for (int k = 0; k <= d; ++k) t.summands.push_back({Ids::Y, static_cast<long>(k) * (1 - n)});
  for (int k = 1; k <= d; ++k) {
    int src = k - 1;
    t.delta.push_back({src, d + (k - 1), Ids::b, Q(1)});
    t.delta.push_back({src, d + k, Ids::a, Q(1)});
  }
  return t;
}

/// T_μ = Cone(X ⊕ X[1-n] → Y ⊕ Y[1-n]) via diag(1,μ)⊗a + antidiag(1,1)⊗b.
inline TwistedComplex build_Tmu(int n, const Q& mu, const std::string& name = "T") {
  require_n(n);
  TwistedComplex t{name, {{Ids::X, 1}, {Ids::X, 2 - n}, {Ids::Y, 0}, {Ids::Y, 1 - n}}, {}};
  if (mu != 0) {
    t.delta.push_back({0, 2, Ids::a, Q(1)});
    t.delta.push_back({1, 3, Ids::a, mu});
  }
  t.delta.push_back({1, 2, Ids::b, Q(1)});
  t.delta.push_back({0, 3, Ids::b, Q(1)});
  return t;
}

/// Linear system over ℚ[v_va, v_ch] with |v_va| = 0, |v_ch| = 2n-2, whose
/// fibre at (1,0) is F∞, at (0,1) is F0 (after regrading) and at (s,t) the
/// generic fibre.
inline NCLinearSystem kronecker_pencil(int n) {
  require_n(n);
  using I = Ids;
  NCLinearSystem l;
  l.variables = {"v_va", "v_ch"};
  l.var_degrees = {0, 2L * n - 2};
  AInfCategory& k = l.gens;
  int x = k.add_object("X"), y = k.add_object("Y");
  k.add_unit(x, "e");
  k.add_unit(y, "f");
  k.add_basis("a", x, y, 0);
  k.add_basis("b", x, y, n - 1);
  k.add_basis("a*", y, x, n - 1, -1);
  k.add_basis("b*", y, x, 0, -1);
  k.add_basis("a*a", x, x, n - 1, -1);
  k.add_basis("aa*", y, y, n - 1, -1);
  AInfCategory tmp = k;
  add_unit_products(tmp);
  for (const auto& [chain, v] : tmp.mu[2])
    for (const auto& [o, c] : v) l.add_mu(chain, o, l.zero(), c);
  const Mono one = l.zero(), va = l.var(0), ch = l.var(1), both = mono_add(va, ch);
  auto prod = [&](int x2, int x1, int out, const Mono& m) {
    l.add_mu({x1, x2}, out, m, Q(sign_of(k.deg(x1))));
  };
  prod(I::as, I::a, I::c, one);
  prod(I::bs, I::b, I::c, one);
  prod(I::a, I::as, I::g, one);
  prod(I::b, I::bs, I::g, one);
  prod(I::bs, I::a, I::e, va);
  prod(I::a, I::bs, I::f, va);
  prod(I::as, I::b, I::e, ch);
  prod(I::b, I::as, I::f, ch);
  prod(I::a, I::c, I::b, va);
  prod(I::g, I::a, I::b, va);
  prod(I::b, I::c, I::a, ch);
  prod(I::g, I::b, I::a, ch);
  prod(I::c, I::as, I::bs, ch);
  prod(I::as, I::g, I::bs, ch);
  prod(I::c, I::bs, I::as, va);
  prod(I::bs, I::g, I::as, va);
  prod(I::c, I::c, I::e, both);
  prod(I::g, I::g, I::f, both);
  return l;
}

}  // namespace ncp::quadric
