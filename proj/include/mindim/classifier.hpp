#pragma once

// Closed-form value of the minimal size of a maximal irredundant family of
// maximal subgroups of A_n, with machine-checkable arithmetic reasons.
// Runs on the full 64-bit range; no group computation.

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mindim {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// floor(n^(1/k)), exact.
inline std::uint64_t integer_root(std::uint64_t n, unsigned k) {
  if (k == 1 || n < 2) return n;
  auto pow_le = [&](std::uint64_t x) {
    // x^k <= n without overflow
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= x;
      if (acc > n) return false;
    }
    return true;
  };
  std::uint64_t lo = 1, hi = std::uint64_t{1} << (64 / k + 1);
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pow_le(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

} // namespace detail

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3e24.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t smallest_prime_factor(std::uint64_t n);

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

} // namespace detail

/// Trial division up to 10^6, then Pollard rho.
inline std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("no prime factor below 2");
  for (std::uint64_t p = 2; p <= 1'000'000 && p * p <= n; ++p)
    if (n % p == 0) return p;
  if (is_prime(n)) return n;
  // n has no factor <= 10^6; split with Pollard rho and recurse on parts.
  std::uint64_t d = detail::pollard_rho(n);
  return std::min(smallest_prime_factor(d), smallest_prime_factor(n / d));
}

/// Either n = p^e with p prime, or two distinct prime factors of n.
struct PrimePowerWitness {
  std::uint64_t n = 0;
  bool is_prime_power = false;
  std::uint64_t prime = 0;    // valid if is_prime_power
  unsigned exponent = 0;      // valid if is_prime_power
  std::uint64_t factor_a = 0; // distinct primes dividing n otherwise
  std::uint64_t factor_b = 0;

  /// Re-verifies the stored facts from scratch.
  bool verify() const {
    if (is_prime_power) {
      if (!is_prime(prime) || exponent == 0) return false;
      unsigned __int128 acc = 1;
      for (unsigned i = 0; i < exponent; ++i) acc *= prime;
      return acc == n;
    }
    return factor_a != factor_b && is_prime(factor_a) && is_prime(factor_b) &&
           n % factor_a == 0 && n % factor_b == 0;
  }
};

inline PrimePowerWitness prime_power(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("prime_power requires n >= 2");
  PrimePowerWitness w;
  w.n = n;
  for (unsigned k = 63; k >= 1; --k) {
    std::uint64_t r = detail::integer_root(n, k);
    if (r < 2) continue;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= r;
    if (acc == n && is_prime(r)) {
      w.is_prime_power = true;
      w.prime = r;
      w.exponent = k;
      return w;
    }
  }
  std::uint64_t p = smallest_prime_factor(n);
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  w.factor_a = p;
  w.factor_b = smallest_prime_factor(m);
  return w;
}

// Reason codes -------------------------------------------------------------

namespace reason {

/// n in {6, 7, 8, 11, 12}.
struct ExceptionalSmall {
  std::uint64_t n;
};
/// n = 2p, p odd prime != 11, and 2p - 1 is not a prime power.
struct TwoPNoQPlusOne {
  std::uint64_t p;
  PrimePowerWitness q_evidence;
};
/// n = 2p = q + 1 with q a prime power: PGL_2(q) gives a primitive
/// maximal subgroup.
struct TwoPWithQPlusOne {
  std::uint64_t p;
  PrimePowerWitness q_evidence;
};
/// n = 22: Mathieu group M22 is primitive.
struct TwentyTwo {};
/// n = p prime: a maximal subgroup containing a p-cycle is primitive.
struct PrimeDegree {
  std::uint64_t p;
};
/// n = p^2: a maximal subgroup containing ASL_2(p) is primitive.
struct PrimeSquare {
  std::uint64_t p;
};
/// Small degrees settled individually: 4 (base of size 2), 5 (two 2-set
/// stabilizers), 9 (ASL(2,3)), 10 (PGL-type primitive subgroup), and the
/// explicit primitive subgroups at 15, 16, 20, 24.
struct ExplicitPrimitive {
  std::uint64_t n;
  std::string note;
};
/// Composite n with a factorization n = k * l (k >= 3) whose imprimitive
/// action has a base of size 2.
struct GenericTwo {
  std::uint64_t k;
  std::uint64_t l;
  std::string note;
};

} // namespace reason

using ClassificationReason =
    std::variant<reason::ExceptionalSmall, reason::TwoPNoQPlusOne,
                 reason::TwoPWithQPlusOne, reason::TwentyTwo,
                 reason::PrimeDegree, reason::PrimeSquare,
                 reason::ExplicitPrimitive, reason::GenericTwo>;

inline std::string reason_tag(const ClassificationReason &r) {
  struct V {
    std::string operator()(const reason::ExceptionalSmall &) {
      return "ExceptionalSmall";
    }
    std::string operator()(const reason::TwoPNoQPlusOne &) {
      return "TwoPNoQPlusOne";
    }
    std::string operator()(const reason::TwoPWithQPlusOne &) {
      return "TwoPWithQPlusOne";
    }
    std::string operator()(const reason::TwentyTwo &) { return "TwentyTwo"; }
    std::string operator()(const reason::PrimeDegree &) {
      return "PrimeDegree";
    }
    std::string operator()(const reason::PrimeSquare &) {
      return "PrimeSquare";
    }
    std::string operator()(const reason::ExplicitPrimitive &) {
      return "ExplicitPrimitive";
    }
    std::string operator()(const reason::GenericTwo &) { return "GenericTwo"; }
  };
  return std::visit(V{}, r);
}

inline std::string describe(const PrimePowerWitness &w) {
  if (w.is_prime_power)
    return std::to_string(w.n) + "=" + std::to_string(w.prime) + "^" +
           std::to_string(w.exponent);
  return std::to_string(w.n) + " divisible by distinct primes " +
         std::to_string(w.factor_a) + "," + std::to_string(w.factor_b);
}

inline std::string reason_text(const ClassificationReason &r) {
  struct V {
    std::string operator()(const reason::ExceptionalSmall &x) {
      return "exceptional small degree " + std::to_string(x.n);
    }
    std::string operator()(const reason::TwoPNoQPlusOne &x) {
      return "n=2p with p=" + std::to_string(x.p) + ", p!=11, and " +
             describe(x.q_evidence) + " (not a prime power)";
    }
    std::string operator()(const reason::TwoPWithQPlusOne &x) {
      return "n=2p=q+1 with p=" + std::to_string(x.p) + ", q: " +
             describe(x.q_evidence) +
             "; PGL_2(q) gives a primitive maximal subgroup";
    }
    std::string operator()(const reason::TwentyTwo &) {
      return "n=22; M22 is a primitive subgroup";
    }
    std::string operator()(const reason::PrimeDegree &x) {
      return "n=" + std::to_string(x.p) +
             " prime; a maximal subgroup containing a p-cycle is primitive";
    }
    std::string operator()(const reason::PrimeSquare &x) {
      return "n=" + std::to_string(x.p) + "^2; a maximal subgroup containing "
             "ASL_2(p) is primitive";
    }
    std::string operator()(const reason::ExplicitPrimitive &x) {
      return "n=" + std::to_string(x.n) + ": " + x.note;
    }
    std::string operator()(const reason::GenericTwo &x) {
      return "n=" + std::to_string(x.k) + "*" + std::to_string(x.l) + ": " +
             x.note;
    }
  };
  return std::visit(V{}, r);
}

struct Classification {
  std::uint64_t n = 0;
  int value = 0; // 2 or 3
  ClassificationReason reason;
};

/// True iff S_{2p} (equivalently A_{2p}) has primitive maximal subgroups
/// other than A_{2p}: 2p = 22 or 2p - 1 is a prime power.
inline std::pair<bool, PrimePowerWitness>
has_primitive_maximal_2p(std::uint64_t p) {
  if (p < 3 || !is_prime(p))
    throw std::invalid_argument("has_primitive_maximal_2p requires an odd "
                                "prime, got " +
                                std::to_string(p));
  auto w = prime_power(2 * p - 1);
  return {p == 11 || w.is_prime_power, w};
}

inline Classification mindim_theorem(std::uint64_t n) {
  if (n < 4) throw std::invalid_argument("mindim_theorem requires n >= 4");
  if (n > (std::numeric_limits<std::uint64_t>::max() >> 1))
    throw std::invalid_argument("n too large");
  Classification c;
  c.n = n;
  if (n == 6 || n == 7 || n == 8 || n == 11 || n == 12) {
    c.value = 3;
    c.reason = reason::ExceptionalSmall{n};
    return c;
  }
  if (n == 4) {
    c.value = 2;
    c.reason = reason::ExplicitPrimitive{4, "A_4 has a base of size 2"};
    return c;
  }
  if (n == 5) {
    c.value = 2;
    c.reason = reason::ExplicitPrimitive{
        5, "stabilizers of {1,2} and {1,3} intersect trivially"};
    return c;
  }
  if (n == 9) {
    c.value = 2;
    c.reason = reason::ExplicitPrimitive{
        9, "primitive maximal subgroup ASL(2,3) has a base of size 2"};
    return c;
  }
  if (n == 10) {
    c.value = 2;
    c.reason = reason::TwoPWithQPlusOne{5, prime_power(9)};
    return c;
  }
  c.value = 2;
  if (is_prime(n)) {
    c.reason = reason::PrimeDegree{n};
    return c;
  }
  if (n % 2 == 0 && is_prime(n / 2)) {
    std::uint64_t p = n / 2;
    auto [prim, w] = has_primitive_maximal_2p(p);
    if (p == 11) {
      c.reason = reason::TwentyTwo{};
    } else if (prim) {
      c.reason = reason::TwoPWithQPlusOne{p, w};
    } else {
      c.value = 3;
      c.reason = reason::TwoPNoQPlusOne{p, w};
    }
    return c;
  }
  std::uint64_t r = detail::integer_root(n, 2);
  if (r * r == n && is_prime(r)) {
    c.reason = reason::PrimeSquare{r};
    return c;
  }
  switch (n) {
  case 15:
    c.reason = reason::ExplicitPrimitive{15, "A_15 has a proper primitive "
                                             "subgroup (PSL_4(2) on 15 points)"};
    return c;
  case 16:
    c.reason = reason::ExplicitPrimitive{
        16, "A_16 has a proper primitive subgroup AGL_2(4)"};
    return c;
  case 20:
    c.reason = reason::ExplicitPrimitive{
        20, "A_20 has a proper primitive subgroup PSL_2(19)"};
    return c;
  case 24:
    c.reason = reason::ExplicitPrimitive{
        24, "A_24 has a proper primitive subgroup (M24)"};
    return c;
  default:
    break;
  }
  // Remaining composite n >= 13: some factorization n = k*l with k >= 3 and
  // l >= k + 2 exists, and that imprimitive action has a base of size 2.
  for (std::uint64_t k = 3; k * k <= n; ++k) {
    if (n % k) continue;
    std::uint64_t l = n / k;
    if (l >= k + 2 && !(l == k + 2 && (l == 5 || l == 6))) {
      c.reason = reason::GenericTwo{
          k, l, "(S_k wr S_l) cap A_n has a base of size 2 (l >= k+2)"};
      return c;
    }
  }
  // Unreachable for n >= 13 by the factorization argument; keep an explicit
  // failure instead of a silent default.
  throw std::logic_error("no classification branch for n=" +
                         std::to_string(n));
}

struct ClassifyRow {
  std::uint64_t n;
  int value;
  std::string reason_tag;
  std::string reason_text;
};

inline std::vector<ClassifyRow> classify_range(std::uint64_t lo,
                                               std::uint64_t hi) {
  if (lo < 4) throw std::invalid_argument("classify_range requires lo >= 4");
  std::vector<ClassifyRow> rows;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    auto c = mindim_theorem(n);
    rows.push_back({n, c.value, reason_tag(c.reason), reason_text(c.reason)});
    if (n == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return rows;
}

/// Primes 7 <= p <= bound with mindim_theorem(2p) == 3. p = 3 is left out:
/// 2p = 6 is one of the exceptional small degrees, not the 2p branch.
inline std::vector<std::uint64_t> primes_with_mindim3(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 7; p <= bound; p += 2)
    if (is_prime(p) && mindim_theorem(2 * p).value == 3) out.push_back(p);
  return out;
}

} // namespace mindim
