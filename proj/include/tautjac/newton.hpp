#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace tautjac {

// Conversion between the special-divisor classes w_1..w_g (elementary
// symmetric functions of the roots of x^g - w_1 x^{g-1} + ... + (-1)^g w_g)
// and the differences d_k = p_k - q_k = -P_k / k!, where P_k is the k-th
// power sum of the roots. T is Rational or Poly.

namespace detail {

inline void check_length(std::size_t n, int genus) {
  if (genus < 1 || n != static_cast<std::size_t>(genus))
    throw std::invalid_argument("expected exactly " + std::to_string(genus) + " entries, got " +
                                std::to_string(n));
}

}  // namespace detail

// Newton's identities: P_k = sum_{i<k} (-1)^{i-1} w_i P_{k-i} + (-1)^{k-1} k w_k.
template <class T>
std::vector<T> power_sums(std::span<const T> w) {
  const int g = static_cast<int>(w.size());
  std::vector<T> P(static_cast<std::size_t>(g) + 1, T(0));
  for (int k = 1; k <= g; ++k) {
    T acc = T(0);
    for (int i = 1; i < k; ++i) {
      T t = w[i - 1] * P[k - i];
      if (i % 2) acc += t; else acc -= t;
    }
    T last = w[k - 1] * Rational(k);
    if (k % 2) acc += last; else acc -= last;
    P[k] = acc;
  }
  return P;
}

template <class T>
std::vector<T> w_to_d(std::span<const T> w, int genus) {
  detail::check_length(w.size(), genus);
  std::vector<T> P = power_sums(w);
  std::vector<T> d;
  for (int k = 1; k <= genus; ++k)
    d.push_back(P[k] * make_rational(Integer(-1), factorial(k)));
  return d;
}

// Inverse of w_to_d; w_k depends only on d_1..d_k.
template <class T>
std::vector<T> d_to_w(std::span<const T> d, int genus) {
  detail::check_length(d.size(), genus);
  std::vector<T> P(static_cast<std::size_t>(genus) + 1, T(0));
  std::vector<T> w;
  for (int k = 1; k <= genus; ++k) {
    P[k] = d[k - 1] * Rational(-factorial(k));
    T rest = P[k];
    for (int i = 1; i < k; ++i) {
      T t = w[i - 1] * P[k - i];
      if (i % 2) rest -= t; else rest += t;
    }
    Rational scale = make_rational(k % 2 ? 1 : -1, k);
    w.push_back(rest * scale);
  }
  return w;
}

}  // namespace tautjac
