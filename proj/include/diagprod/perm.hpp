#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diagprod {

/// Cycle structure of a finite permutation: the multiset of cycle lengths
/// >= 2 (descending) together with the number of fixed points.
struct CycleType {
  std::vector<int> cycles;
  int fixed = 0;

  int degree() const;
  int support_size() const;
  /// Full partition of the degree: cycle lengths followed by 1^fixed.
  std::vector<int> as_partition() const;

  bool operator==(const CycleType&) const = default;
};

/// Permutation of [d] = {1, ..., d}. Points are 1-based throughout, matching
/// cycle notation; images are stored densely.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);

  /// images[i] is the (1-based) image of point i+1. Throws unless a bijection.
  static Perm from_images(std::vector<int> images);
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
  /// Parses cycle notation, e.g. "(1 2 3)(4 5)" or "()" for the identity.
  static Perm parse(int degree, std::string_view text);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int point) const { return img_[point - 1]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(long long e) const;

  std::vector<int> support() const;
  int sign() const;
  bool is_even() const { return sign() == 1; }
  CycleType cycle_type() const;

  /// Same mapping on [d], fixing the new points of [m] for m >= d.
  Perm extended(int m) const;

  std::string to_cycle_string() const;
  /// Canonical byte key for hashing and dedup.
  std::string key() const;

  bool operator==(const Perm&) const = default;

 private:
  std::vector<int> img_;
};

/// (p*q)(i) = p(q(i)).
Perm compose(const Perm& p, const Perm& q);
inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }

/// Finitely supported permutation of the integers; only moved points are
/// stored, so equality is structural.
class WindowPerm {
 public:
  WindowPerm() = default;

  static WindowPerm from_map(std::map<long, long> images);
  static WindowPerm transposition(long a, long b);
  static WindowPerm cycle(const std::vector<long>& points);

  long operator()(long i) const;
  const std::map<long, long>& moved() const { return img_; }

  bool is_identity() const { return img_.empty(); }
  WindowPerm inverse() const;

  std::vector<long> support() const;
  int sign() const;
  bool is_even() const { return sign() == 1; }

  /// Conjugate by the translation i -> i + m: result(j) = this(j - m) + m.
  WindowPerm shift_conjugate(long m) const;

  std::string to_cycle_string() const;
  std::string key() const;

  bool operator==(const WindowPerm&) const = default;

 private:
  std::map<long, long> img_;
};

WindowPerm compose(const WindowPerm& p, const WindowPerm& q);
inline WindowPerm operator*(const WindowPerm& p, const WindowPerm& q) {
  return compose(p, q);
}

/// Full cycle (1 2 ... d).
Perm neumann_alpha(int d);
/// 3-cycle (1, 1+r, 1+2r); requires 2r <= d-1.
Perm neumann_beta(int d, int r);

/// Generator pair (alpha_n, beta_n) of the level-n factor of B(d, r).
/// Validates the whole parameter family: d strictly increasing, d(1) >= 5,
/// every d(n) odd, 2 r(n) <= d(n) - 1. Sequences are 1-indexed via n.
std::pair<Perm, Perm> neumann_generators(const std::vector<int>& d,
                                         const std::vector<int>& r, int n);

/// x_k = product of the k+1 disjoint transpositions (2(i+k^2), 2(i+k^2)+1),
/// i = 0..k. Requires k odd.
WindowPerm bekka_witness(int k);

/// [r, x] = x^{-1} (r x r^{-1}) for the full shift r: i -> i+1.
WindowPerm shift_commutator(const WindowPerm& x);

}  // namespace diagprod
