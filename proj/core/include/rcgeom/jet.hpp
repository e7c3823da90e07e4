// Copyright 2026 The rcgeom Authors.
// SPDX-License-Identifier: Apache-2.0

// Forward-mode differentiation carriers over the four chart coordinates.
//
// Jet1<S> carries a value and its gradient; Jet2<S> ("hyper-dual") adds the
// ten independent entries of the Hessian. Both are templated on the scalar so
// they nest: Jet2<Jet1<double>> seeded with the coordinates yields every
// derivative up to third order in a single pass.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace rcgeom {

inline constexpr int kDim = 4;

/// Packed index of the symmetric pair (i, j) in a 10-entry Hessian.
constexpr int sym_index(int i, int j) noexcept {
  if (i > j) {
    int t = i;
    i = j;
    j = t;
  }
  return i * kDim - i * (i - 1) / 2 + (j - i);
}

template <class S>
struct Jet1;
template <class S>
struct Jet2;

template <class T>
struct is_jet : std::false_type {};
template <class S>
struct is_jet<Jet1<S>> : std::true_type {};
template <class S>
struct is_jet<Jet2<S>> : std::true_type {};

inline double scalar_value(double x) noexcept { return x; }

//---------------------------------------------------------------------------//
// First order
//---------------------------------------------------------------------------//

template <class S>
struct Jet1 {
  S v{};
  std::array<S, kDim> d{};

  Jet1() = default;
  Jet1(S const& value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet1(S const& value, std::array<S, kDim> const& grad) : v(value), d(grad) {}

  /// Independent variable number `axis` with value `x`.
  static Jet1 variable(S const& x, int axis) {
    Jet1 r(x);
    r.d[axis] = S(1.0);
    return r;
  }

  Jet1& operator+=(Jet1 const& b) {
    v += b.v;
    for (int i = 0; i < kDim; ++i) d[i] += b.d[i];
    return *this;
  }
  Jet1& operator-=(Jet1 const& b) {
    v -= b.v;
    for (int i = 0; i < kDim; ++i) d[i] -= b.d[i];
    return *this;
  }
  Jet1& operator*=(Jet1 const& b) { return *this = *this * b; }
  Jet1& operator/=(Jet1 const& b) { return *this = *this / b; }

  friend Jet1 operator-(Jet1 a) {
    a.v = -a.v;
    for (auto& x : a.d) x = -x;
    return a;
  }
  friend Jet1 operator+(Jet1 a, Jet1 const& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, Jet1 const& b) { return a -= b; }
  friend Jet1 operator+(Jet1 a, S const& b) {
    a.v += b;
    return a;
  }
  friend Jet1 operator+(S const& a, Jet1 b) {
    b.v += a;
    return b;
  }
  friend Jet1 operator-(Jet1 a, S const& b) {
    a.v -= b;
    return a;
  }
  friend Jet1 operator-(S const& a, Jet1 const& b) { return -b + a; }

  friend Jet1 operator*(Jet1 const& a, Jet1 const& b) {
    Jet1 r(a.v * b.v);
    for (int i = 0; i < kDim; ++i) r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
    return r;
  }
  friend Jet1 operator*(Jet1 a, S const& b) {
    a.v *= b;
    for (auto& x : a.d) x *= b;
    return a;
  }
  friend Jet1 operator*(S const& a, Jet1 b) { return b * a; }

  friend Jet1 operator/(Jet1 const& a, Jet1 const& b) {
    S inv = S(1.0) / b.v;
    S q = a.v * inv;
    Jet1 r(q);
    for (int i = 0; i < kDim; ++i) r.d[i] = (a.d[i] - q * b.d[i]) * inv;
    return r;
  }
  friend Jet1 operator/(Jet1 a, S const& b) {
    S inv = S(1.0) / b;
    return a * inv;
  }
  friend Jet1 operator/(S const& a, Jet1 const& b) { return Jet1(a) / b; }
};

template <class S>
double scalar_value(Jet1<S> const& x) noexcept {
  return scalar_value(x.v);
}

/// Chain rule for f(u) given f(u.v) and f'(u.v).
template <class S>
Jet1<S> chain(Jet1<S> const& u, S const& f0, S const& f1) {
  Jet1<S> r(f0);
  for (int i = 0; i < kDim; ++i) r.d[i] = f1 * u.d[i];
  return r;
}

//---------------------------------------------------------------------------//
// Second order
//---------------------------------------------------------------------------//

template <class S>
struct Jet2 {
  static constexpr int kHess = kDim * (kDim + 1) / 2;

  S v{};
  std::array<S, kDim> d{};
  std::array<S, kHess> h{};

  Jet2() = default;
  Jet2(S const& value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Jet2 variable(S const& x, int axis) {
    Jet2 r(x);
    r.d[axis] = S(1.0);
    return r;
  }

  S const& hess(int i, int j) const { return h[sym_index(i, j)]; }

  Jet2& operator+=(Jet2 const& b) {
    v += b.v;
    for (int i = 0; i < kDim; ++i) d[i] += b.d[i];
    for (int k = 0; k < kHess; ++k) h[k] += b.h[k];
    return *this;
  }
  Jet2& operator-=(Jet2 const& b) {
    v -= b.v;
    for (int i = 0; i < kDim; ++i) d[i] -= b.d[i];
    for (int k = 0; k < kHess; ++k) h[k] -= b.h[k];
    return *this;
  }

  friend Jet2 operator-(Jet2 a) {
    a.v = -a.v;
    for (auto& x : a.d) x = -x;
    for (auto& x : a.h) x = -x;
    return a;
  }
  friend Jet2 operator+(Jet2 a, Jet2 const& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, Jet2 const& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, S const& b) {
    a.v += b;
    return a;
  }
  friend Jet2 operator+(S const& a, Jet2 b) {
    b.v += a;
    return b;
  }
  friend Jet2 operator-(Jet2 a, S const& b) {
    a.v -= b;
    return a;
  }
  friend Jet2 operator-(S const& a, Jet2 const& b) { return -b + a; }

  friend Jet2 operator*(Jet2 const& a, Jet2 const& b) {
    Jet2 r(a.v * b.v);
    for (int i = 0; i < kDim; ++i) r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
    for (int i = 0; i < kDim; ++i) {
      for (int j = i; j < kDim; ++j) {
        int k = sym_index(i, j);
        r.h[k] = a.v * b.h[k] + a.h[k] * b.v + a.d[i] * b.d[j] +
                 a.d[j] * b.d[i];
      }
    }
    return r;
  }
  friend Jet2 operator*(Jet2 a, S const& b) {
    a.v *= b;
    for (auto& x : a.d) x *= b;
    for (auto& x : a.h) x *= b;
    return a;
  }
  friend Jet2 operator*(S const& a, Jet2 b) { return b * a; }

  friend Jet2 operator/(Jet2 const& a, Jet2 const& b) {
    return a * reciprocal(b);
  }
  friend Jet2 operator/(Jet2 a, S const& b) {
    S inv = S(1.0) / b;
    return a * inv;
  }
  friend Jet2 operator/(S const& a, Jet2 const& b) {
    return reciprocal(b) * a;
  }

  friend Jet2 reciprocal(Jet2 const& u) {
    S f0 = S(1.0) / u.v;
    S f1 = -f0 * f0;
    S f2 = S(-2.0) * f1 * f0;
    return chain(u, f0, f1, f2);
  }
};

template <class S>
double scalar_value(Jet2<S> const& x) noexcept {
  return scalar_value(x.v);
}

/// Chain rule for f(u) given f, f', f'' at u.v.
template <class S>
Jet2<S> chain(Jet2<S> const& u, S const& f0, S const& f1, S const& f2) {
  Jet2<S> r(f0);
  for (int i = 0; i < kDim; ++i) r.d[i] = f1 * u.d[i];
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      int k = sym_index(i, j);
      r.h[k] = f1 * u.h[k] + f2 * u.d[i] * u.d[j];
    }
  }
  return r;
}

//---------------------------------------------------------------------------//
// Elementary functions. The double overloads come from <cmath>; the jet
// overloads recurse through `using std::...` so nested jets work.
//---------------------------------------------------------------------------//

#define RCGEOM_JET_FUNCTION(NAME, F0, F1, F2)                \
  template <class S>                                         \
  Jet1<S> NAME(Jet1<S> const& u) {                           \
    using std::cos;                                          \
    using std::cosh;                                         \
    using std::exp;                                          \
    using std::log;                                          \
    using std::sin;                                          \
    using std::sinh;                                         \
    using std::sqrt;                                         \
    using std::tan;                                          \
    using std::tanh;                                         \
    S const& x = u.v;                                        \
    S f0 = F0;                                               \
    return chain(u, f0, S(F1));                              \
  }                                                          \
  template <class S>                                         \
  Jet2<S> NAME(Jet2<S> const& u) {                           \
    using std::cos;                                          \
    using std::cosh;                                         \
    using std::exp;                                          \
    using std::log;                                          \
    using std::sin;                                          \
    using std::sinh;                                         \
    using std::sqrt;                                         \
    using std::tan;                                          \
    using std::tanh;                                         \
    S const& x = u.v;                                        \
    S f0 = F0;                                               \
    S f1 = F1;                                               \
    return chain(u, f0, f1, S(F2));                          \
  }

RCGEOM_JET_FUNCTION(sin, sin(x), cos(x), -f0)
RCGEOM_JET_FUNCTION(cos, cos(x), -sin(x), -f0)
RCGEOM_JET_FUNCTION(tan, tan(x), S(1.0) + f0 * f0, S(2.0) * f0 * f1)
RCGEOM_JET_FUNCTION(sinh, sinh(x), cosh(x), f0)
RCGEOM_JET_FUNCTION(cosh, cosh(x), sinh(x), f0)
RCGEOM_JET_FUNCTION(tanh, tanh(x), S(1.0) - f0 * f0, S(-2.0) * f0 * f1)
RCGEOM_JET_FUNCTION(exp, exp(x), f0, f0)
RCGEOM_JET_FUNCTION(log, log(x), S(1.0) / x, -f1 * f1)
RCGEOM_JET_FUNCTION(sqrt, sqrt(x), S(0.5) / f0, S(-0.5) * f1 / x)

#undef RCGEOM_JET_FUNCTION

/// u^p for a constant exponent p (integer exponents allow negative bases).
inline double pow_const(double u, double p) { return std::pow(u, p); }

template <class S>
Jet1<S> pow_const(Jet1<S> const& u, double p) {
  if (p == 0.0) return Jet1<S>(S(1.0));
  if (p == 1.0) return u;
  S f0 = pow_const(u.v, p);
  S f1 = p * pow_const(u.v, p - 1.0);
  return chain(u, f0, f1);
}

template <class S>
Jet2<S> pow_const(Jet2<S> const& u, double p) {
  if (p == 0.0) return Jet2<S>(S(1.0));
  if (p == 1.0) return u;
  S f0 = pow_const(u.v, p);
  S f1 = p * pow_const(u.v, p - 1.0);
  S f2 = p * (p - 1.0) * pow_const(u.v, p - 2.0);
  return chain(u, f0, f1, f2);
}

}  // namespace rcgeom
