#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "diagprod/characters.hpp"
#include "diagprod/diagonal.hpp"

namespace diagprod {

/// Rule assigning an Alt(d(n)) character to each coordinate.
class CharFamily {
 public:
  enum class Kind { Trivial, Standard, Balanced, Explicit };

  static CharFamily trivial();
  static CharFamily standard();
  /// Near-square partitions: about sqrt(d) rows and columns.
  static CharFamily balanced();
  static CharFamily explicit_list(std::vector<Partition> per_level);

  Kind kind() const { return kind_; }
  Partition partition_for(long d, int level) const;
  bool closed_form() const { return kind_ == Kind::Trivial || kind_ == Kind::Standard; }
  std::string name() const;

 private:
  Kind kind_ = Kind::Standard;
  std::vector<Partition> list_;
};

/// Exact support size of theta_m(g) in Alt(d(m)), computed in sparse residue
/// arithmetic (valid for arbitrarily large d(m)).
long theta_support_size(const DiagSpec& spec, int m, const BaseElement& g);

/// Per-coordinate absolute normalized character values and their running
/// products. For the standard family both normalizations are carried:
/// the Murnaghan-Nakayama value (d-s-1)/(d-1) and the (d-1-s)/d variant
/// quoted in parts of the literature; the dichotomy is insensitive to it.
struct PartialProducts {
  std::vector<double> factor;        // |phi_m(theta_m(g))|, MN normalization
  std::vector<double> product;       // running products p_k
  std::vector<double> product_alt;   // the variant normalization (standard family)
  double log_product = 0;            // log-space accumulation of `factor`
};

PartialProducts partial_products(const DiagSpec& spec, const BaseElement& g,
                                 const CharFamily& fam, int N);

struct NullVerdict {
  enum class Kind { NullCertifiedNumerically, PositiveLimitCertified, Undetermined };
  Kind kind = Kind::Undetermined;
  int horizon = 0;
  double p_N = 1.0;            // MN normalization
  double p_N_variant = 1.0;    // the (d-1-s)/d variant (standard family)
  double lower_bound = 0.0;    // PositiveLimitCertified only
  double tail_majorant = 0.0;  // analytic bound on sum_{m>N} (1 - |phi_m|)
  std::string certificate;

  std::string kind_name() const;
};

/// Null test at horizon N: numerically certified null when p_N < eps_zero
/// (both normalizations, for the standard family); analytically certified
/// positive limit when the family admits the tail majorant
/// 1 - |phi_m| <= (s+1)/(d(m)-1) with a convergent rule bound.
NullVerdict classify_null(const DiagSpec& spec, const BaseElement& g,
                          const CharFamily& fam, int N, double eps_zero = 1e-9);

/// Signed/complex partial products of Thm-1.8 type experiments.
struct LimitProduct {
  std::vector<std::complex<double>> partial;  // p_1 .. p_K
  std::vector<std::string> char_names;
  double last_gap = 0;   // |p_K - p_{K-1}|
  double max_abs = 0;    // max |p_k|
  bool abs_monotone = true;

  /// max_{k > K} |p_k - p_K| over the computed terms (1-based K).
  double cauchy_gap(int K) const;
};

/// sigma given by its cycle type (parts >= 2); levels n_seq (all >= q + 2);
/// chars: one partition per level.
LimitProduct limit_product_signed(const Partition& sigma_cycles,
                                  const std::vector<int>& n_seq,
                                  const std::vector<Partition>& chars,
                                  const std::vector<int>& split_halves = {});

/// Uniformly random nontrivial character assignment (excludes (n) and (1^n);
/// picks a split half at random for self-conjugate partitions).
LimitProduct limit_product_random(const Partition& sigma_cycles,
                                  const std::vector<int>& n_seq,
                                  unsigned long seed);

struct AccumulationEntry {
  int n;
  std::string char_name;
  std::complex<double> value;
  bool near_one;  // |value| > 1 - eps_near
  double dist_to_one;
};

/// Every nontrivial irreducible normalized character value at sigma's class,
/// for n over [n_lo, n_hi]; flags values within eps_near of the unit circle.
std::vector<AccumulationEntry> accumulation_scan(const Partition& sigma_cycles,
                                                 int n_lo, int n_hi,
                                                 double eps_near = 0.05);

struct CompatibilityReport {
  bool compatible = true;
  std::vector<std::string> violations;    // null tau with psi(tau) != 0
  std::vector<std::string> undetermined;  // verdicts that settled nothing
};

/// psi given on base-group ball elements; checks psi(tau) = 0 (within tol)
/// for every tau whose verdict is NullCertifiedNumerically.
CompatibilityReport compatible_at_horizon(
    const DiagSpec& spec,
    const std::vector<std::pair<BaseElement, std::complex<double>>>& psi,
    const CharFamily& fam, int N, double eps_zero = 1e-9, double tol = 1e-12);

/// CSV rows (k, p_k, one_minus_abs_phi_k, cumulative_tail_majorant).
std::string partial_products_csv(const DiagSpec& spec, const BaseElement& g,
                                 const CharFamily& fam, int N);

}  // namespace diagprod
