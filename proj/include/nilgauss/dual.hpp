#pragma once

#include <cmath>

namespace nilgauss {

// Forward-mode dual number. Nesting (Dual<Dual<double>>) gives mixed second
// derivatives.
template <class T>
struct Dual {
  T val{};
  T eps{};

  Dual() = default;
  Dual(double v) : val(v), eps(0.0) {}  // NOLINT(google-explicit-constructor)
  Dual(T v, T e) : val(v), eps(e) {}

  Dual& operator+=(const Dual& o) { val += o.val; eps += o.eps; return *this; }
  Dual& operator-=(const Dual& o) { val -= o.val; eps -= o.eps; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.eps + b.eps}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.eps - b.eps}; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.val * b.val, a.eps * b.val + a.val * b.eps};
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    return {a.val / b.val, (a.eps * b.val - a.val * b.eps) / (b.val * b.val)};
  }

  friend Dual sin(const Dual& a) {
    using std::cos;
    using std::sin;
    return {sin(a.val), a.eps * cos(a.val)};
  }
  friend Dual cos(const Dual& a) {
    using std::cos;
    using std::sin;
    return {cos(a.val), -(a.eps * sin(a.val))};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    T e = exp(a.val);
    return {e, a.eps * e};
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    T s = sqrt(a.val);
    return {s, a.eps / (s * 2.0)};
  }
};

template <class T>
T value_of(const T& x) {
  return x;
}
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.val);
}

// Integer power by repeated squaring; negative exponents invert.
template <class T>
T ipow(const T& base, int exponent) {
  if (exponent < 0) return T(1.0) / ipow(base, -exponent);
  T result(1.0);
  T b = base;
  while (exponent > 0) {
    if (exponent & 1) result = result * b;
    b = b * b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace nilgauss
