#pragma once

// Permutations of {1..n}.
//
// Convention: points act on the right. compose(p, q) (also p * q) maps
// i to q(p(i)), i.e. "apply p, then q". Conjugation x^g = g^-1 * x * g.
// Points are 1-based in every external form (cycle text, JSON, accessors
// named image()); storage is 0-based.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mindim {

using Point = std::uint16_t;

/// Hard cap on the degree of any permutation built by the toolkit.
inline constexpr std::size_t kMaxDegree = 256;

enum class Parity { Even, Odd };

class Permutation {
public:
  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree) : img_(degree) {
    if (degree > kMaxDegree)
      throw std::invalid_argument("degree " + std::to_string(degree) +
                                  " exceeds cap " +
                                  std::to_string(kMaxDegree));
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<Point>(i);
  }

  /// From 0-based images; validates bijectivity.
  static Permutation from_images0(std::vector<Point> images) {
    Permutation p;
    p.img_ = std::move(images);
    p.check_bijection();
    return p;
  }

  /// From 0-based images without validation; caller guarantees bijectivity.
  static Permutation from_images0_unchecked(std::vector<Point> images) {
    Permutation p;
    p.img_ = std::move(images);
    return p;
  }

  /// From 1-based images, as in [2,1,4,3].
  static Permutation from_images1(const std::vector<int> &images) {
    std::vector<Point> v(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] < 1 || static_cast<std::size_t>(images[i]) > images.size())
        throw std::invalid_argument("image out of range");
      v[i] = static_cast<Point>(images[i] - 1);
    }
    return from_images0(std::move(v));
  }

  std::size_t degree() const { return img_.size(); }

  /// 0-based image.
  Point operator[](std::size_t i) const { return img_[i]; }
  /// 1-based image.
  int image(int point) const { return img_.at(point - 1) + 1; }

  const std::vector<Point> &images0() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i)
      r.img_[img_[i]] = static_cast<Point>(i);
    return r;
  }

  /// First moved point (0-based), or degree() if identity.
  std::size_t first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return img_.size();
  }

  std::size_t support_size() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) c += img_[i] != i;
    return c;
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &a, const Permutation &b) {
    return a.img_ <=> b.img_;
  }

private:
  void check_bijection() const {
    if (img_.size() > kMaxDegree)
      throw std::invalid_argument("degree exceeds cap");
    std::vector<bool> seen(img_.size(), false);
    for (Point v : img_) {
      if (v >= img_.size() || seen[v])
        throw std::invalid_argument("images do not form a bijection");
      seen[v] = true;
    }
  }

  std::vector<Point> img_;
};

inline void require_same_degree(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("degree mismatch: " +
                                std::to_string(p.degree()) + " vs " +
                                std::to_string(q.degree()));
}

/// i -> q(p(i)).
inline Permutation compose(const Permutation &p, const Permutation &q) {
  require_same_degree(p, q);
  std::vector<Point> r(p.degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = q[p[i]];
  return Permutation::from_images0_unchecked(std::move(r));
}

inline Permutation operator*(const Permutation &p, const Permutation &q) {
  return compose(p, q);
}

/// g^-1 x g.
inline Permutation conjugate(const Permutation &x, const Permutation &g) {
  require_same_degree(x, g);
  std::vector<Point> r(x.degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[g[i]] = g[x[i]];
  return Permutation::from_images0_unchecked(std::move(r));
}

/// Cycle lengths, fixed points included as 1s, sorted descending.
inline std::vector<std::size_t> cycle_type(const Permutation &p) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Parity parity(const Permutation &p) {
  auto cycles = cycle_type(p).size();
  return (p.degree() - cycles) % 2 == 0 ? Parity::Even : Parity::Odd;
}

inline bool is_even(const Permutation &p) { return parity(p) == Parity::Even; }

/// Order of the permutation (lcm of cycle lengths).
inline std::uint64_t element_order(const Permutation &p) {
  std::uint64_t l = 1;
  for (auto c : cycle_type(p)) l = std::lcm(l, static_cast<std::uint64_t>(c));
  return l;
}

/// Disjoint-cycle text, 1-based, fixed points omitted, identity "()".
inline std::string format_cycles(const Permutation &p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// Parses disjoint-cycle text such as "(1 2 3)(4 5)". Commas are accepted
/// as separators too. Throws std::invalid_argument on repeated or
/// out-of-range points.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation id(degree);
  std::vector<Point> img = id.images0();
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == ','))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("expected '(' in cycle text: " +
                                  std::string(text));
    ++i;
    std::vector<std::size_t> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size())
        throw std::invalid_argument("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9')
        throw std::invalid_argument("unexpected character in cycle text: " +
                                    std::string(text));
      std::size_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 1'000'000) throw std::invalid_argument("point out of range");
        ++i;
      }
      if (v < 1 || v > degree)
        throw std::invalid_argument("point " + std::to_string(v) +
                                    " out of range for degree " +
                                    std::to_string(degree));
      if (used[v - 1])
        throw std::invalid_argument("repeated point " + std::to_string(v));
      used[v - 1] = true;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      img[cyc[k]] = static_cast<Point>(cyc[(k + 1) % cyc.size()]);
    skip_ws();
  }
  return Permutation::from_images0(std::move(img));
}

/// Permutation from explicit 1-based cycles.
inline Permutation from_cycles(std::size_t degree,
                               const std::vector<std::vector<int>> &cycles) {
  std::string s;
  for (const auto &c : cycles) {
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(c[k]);
    }
    s += ')';
  }
  return parse_cycles(s, degree);
}

inline std::ostream &operator<<(std::ostream &os, const Permutation &p) {
  return os << format_cycles(p);
}

} // namespace mindim

template <> struct std::hash<mindim::Permutation> {
  std::size_t operator()(const mindim::Permutation &p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : p.images0()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
