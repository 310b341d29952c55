#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagprod/perm.hpp"

namespace diagprod {

/// Raised when an encoding would need residues outside the injectivity
/// window, i.e. the approximation horizon was exceeded.
struct SupportTooWide : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of the lamplighter (Z/3Z) wr Z, written lamps-then-shift:
/// (k,f)·(k',f') = (k+k', f + f' translated by k). Lamp values live in
/// {1,2}; zeros are never stored, so equality is structural.
struct LampElement {
  long shift = 0;
  std::map<long, int> lamps;

  bool is_identity() const { return shift == 0 && lamps.empty(); }
  /// Largest |index| touched by the element (shift or lamp position).
  long extent() const;
  std::string key() const;
  std::string to_string() const;

  static LampElement alpha();  // the shift generator
  static LampElement beta();   // the lamp at position 0

  bool operator==(const LampElement&) const = default;
};

LampElement lamp_mul(const LampElement& a, const LampElement& b);
LampElement lamp_inv(const LampElement& a);

/// Element of A(Z) = Z ⋉ Alt_fin(Z), realized as the permutation
/// j -> shift + perm(j). The perm component stays even.
struct AZElement {
  long shift = 0;
  WindowPerm perm;

  bool is_identity() const { return shift == 0 && perm.is_identity(); }
  long extent() const;
  long act(long j) const { return shift + perm(j); }
  std::string key() const;
  std::string to_string() const;

  static AZElement shift_gen();  // s: the full shift
  static AZElement tau();        // t: the 3-cycle (-1, 0, 1)

  bool operator==(const AZElement&) const = default;
};

AZElement az_mul(const AZElement& a, const AZElement& b);
AZElement az_inv(const AZElement& a);

/// theta_n for the lamplighter base: the canonical word image
/// prod_j (alpha^j beta alpha^{-j})^{f(j)} · alpha^k in Alt(d), where
/// alpha, beta are the level generators for (d, r).
Perm theta_lamp(const LampElement& g, int d, int r);

/// theta_n for the A(Z) base: residues mod d as points of [d], shift to the
/// full-cycle power, window permutation through residue representatives.
/// Requires supp(perm) inside the open window (-floor(d/2), floor(d/2)).
Perm theta_az(const AZElement& g, int d);

/// Left-multiplication marking of a finite group on its own element list,
/// one permutation per labeled generator image plus the matching 3-cycles
/// (theta(s^-1), theta(e), theta(s)).
struct EncodedMarking {
  std::vector<std::string> labels;
  std::vector<Perm> perms;
};

/// group_size elements indexed 0..group_size-1; mul(a, b) = a*b; identity is
/// the index of e. s_images maps generator labels to element indices.
/// Throws std::domain_error if some left multiplication is odd (the parity
/// condition), std::invalid_argument if a 3-cycle would degenerate.
EncodedMarking encode_alternating(
    int group_size, const std::function<int(int, int)>& mul, int identity,
    const std::vector<std::pair<std::string, int>>& s_images);

enum class BaseKind { Lamplighter, ClassicalAZ };

/// A concrete theta family: base group plus the level parameters.
struct ThetaFamily {
  BaseKind base = BaseKind::ClassicalAZ;
  std::vector<int> d;
  std::vector<int> r;  // lamplighter only

  int levels() const { return static_cast<int>(d.size()); }
};

/// Smallest n0 <= M such that for all n0 <= m <= M and every pair g, h in
/// the radius-`radius` ball of the base group: theta_m(g h) =
/// theta_m(g) theta_m(h), and theta_m is injective on the ball. Exhaustive
/// over ball pairs; std::nullopt ("Unknown") if no such n0 <= M exists.
std::optional<int> multiplicativity_radius(const ThetaFamily& fam, int radius,
                                           int M);

}  // namespace diagprod
