#pragma once

// Small finite fields GF(p^k) with table-driven arithmetic.
//
// Element indexing: an element c_0 + c_1 x + ... + c_{k-1} x^{k-1} has index
// c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Prime-power fields use a fixed
// irreducible (Conway) polynomial per (p, k); prime fields are Z/p.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "classifier.hpp"

namespace mindim {

/// Conway polynomials, coefficients low degree first, monic.
inline const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> &
conway_polynomials() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>
      table = {
          {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
          {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 5}, {1, 0, 1, 0, 0, 1}},
          {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
          {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
          {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
          {{3, 2}, {2, 2, 1}},          {{3, 3}, {1, 2, 0, 1}},
          {{3, 4}, {2, 0, 0, 2, 1}},    {{3, 5}, {1, 2, 0, 0, 0, 1}},
          {{5, 2}, {2, 4, 1}},          {{5, 3}, {3, 3, 0, 1}},
          {{7, 2}, {3, 6, 1}},          {{11, 2}, {2, 7, 1}},
          {{13, 2}, {2, 12, 1}},
      };
  return table;
}

class FiniteField {
public:
  /// GF(q) for a prime power q <= 256.
  explicit FiniteField(unsigned q) : q_(q) {
    if (q < 2 || q > 256)
      throw std::invalid_argument("field order out of supported range: " +
                                  std::to_string(q));
    auto w = prime_power(q);
    if (!w.is_prime_power)
      throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    p_ = static_cast<unsigned>(w.prime);
    k_ = w.exponent;
    if (k_ == 1) {
      modulus_ = {0, 1};
      // x - g with g the least primitive root
      unsigned g = least_primitive_root(p_);
      modulus_[0] = (p_ - g) % p_;
    } else {
      auto it = conway_polynomials().find({p_, k_});
      if (it == conway_polynomials().end())
        throw std::invalid_argument("no embedded irreducible polynomial for " +
                                    std::to_string(q));
      modulus_ = it->second;
    }
    build_tables();
  }

  unsigned order() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  const std::vector<unsigned> &modulus() const { return modulus_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
  unsigned inv(unsigned a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
  }
  unsigned pow(unsigned a, unsigned e) const {
    unsigned r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  /// Frobenius a -> a^p.
  unsigned frobenius(unsigned a) const { return pow(a, p_); }

  /// Generator of the multiplicative group.
  unsigned primitive_element() const { return generator_; }

  /// Multiplicative order of a nonzero element.
  unsigned multiplicative_order(unsigned a) const {
    if (a == 0) throw std::domain_error("zero has no multiplicative order");
    unsigned x = a, k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

private:
  static unsigned least_primitive_root(unsigned p) {
    if (p == 2) return 1;
    for (unsigned g = 2; g < p; ++g) {
      unsigned x = g, k = 1;
      while (x != 1) {
        x = x * g % p;
        ++k;
      }
      if (k == p - 1) return g;
    }
    throw std::logic_error("no primitive root");
  }

  std::vector<unsigned> digits(unsigned a) const {
    std::vector<unsigned> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }
  unsigned index(const std::vector<unsigned> &d) const {
    unsigned a = 0;
    for (unsigned i = k_; i-- > 0;) a = a * p_ + d[i];
    return a;
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<unsigned> dn(k_);
      for (unsigned i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
      neg_[a] = index(dn);
      for (unsigned b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<unsigned> ds(k_);
        for (unsigned i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
        add_[a * q_ + b] = index(ds);
        // polynomial product reduced mod the monic modulus
        std::vector<unsigned> prod(2 * k_, 0);
        for (unsigned i = 0; i < k_; ++i)
          for (unsigned j = 0; j < k_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (unsigned d = 2 * k_ - 1; d >= k_; --d) {
          unsigned c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          for (unsigned i = 0; i < k_; ++i)
            prod[d - k_ + i] =
                (prod[d - k_ + i] + (p_ - c) * modulus_[i]) % p_;
        }
        prod.resize(k_);
        mul_[a * q_ + b] = index(prod);
      }
    }
    for (unsigned a = 1; a < q_; ++a) {
      for (unsigned b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] == 0)
        throw std::invalid_argument("modulus is not irreducible");
    }
    generator_ = 0;
    for (unsigned a = 1; a < q_; ++a)
      if (multiplicative_order(a) == q_ - 1) {
        generator_ = a;
        break;
      }
    if (q_ == 2) generator_ = 1;
  }

  unsigned q_, p_ = 0, k_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<unsigned> add_, mul_, neg_, inv_;
  unsigned generator_ = 1;
};

} // namespace mindim
