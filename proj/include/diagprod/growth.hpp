#pragma once

#include <string>
#include <vector>

#include "diagprod/diagonal.hpp"

namespace diagprod {

/// One certified point of a growth curve: the bound `value` holds at ball
/// radius n, with a machine-checkable certificate (JSON).
struct GrowthPoint {
  int n = 0;
  double value = 0;
  double log2_value = 0;
  std::string certificate;
};

struct GrowthCurve {
  std::string kind;  // RF_upper | LEF_upper | MAP_lower | SR_lower
  std::vector<GrowthPoint> points;

  std::string to_csv() const;
  bool monotone() const;
};

double log2_alt_order(long d);  // log2 of |Alt(d)| = d!/2

/// MAP lower bounds from w_n witnesses: a level-n witness at radius R shows
/// any unitary representation injective on B_S(R) restricts nontrivially to
/// Alt(d(n)), forcing dimension >= d(n) - 1.
GrowthCurve map_lower(const DiagSpec& spec, int n_levels, int radius_budget,
                      std::size_t element_budget = 10'000'000);

/// LEF upper bounds: for each n the least level m whose marked ball agrees
/// with the base group to radius n contributes |Alt(d(m))|. Upper bound only
/// (the search is restricted to the canonical quotient family).
GrowthCurve lef_upper(const DiagSpec& spec, int n_max, int level_horizon);

/// Full residual finiteness upper bounds: least m with the projection to the
/// first m coordinates injective on the radius-n ball of Gamma.
GrowthCurve rf_upper(const DiagSpec& spec, int n_max, int level_horizon,
                     std::size_t element_budget = 10'000'000);

/// Stability-radius lower bounds via MAP(n) <= LEF(max{SR(n), n}):
/// if LEF(m) < v for all m < M and M > n then SR(n) >= M.
GrowthCurve sr_lower(const GrowthCurve& map_curve, const GrowthCurve& lef_curve);

/// Independent checker passes: re-verify every point from its certificate.
bool verify_map_lower(const DiagSpec& spec, const GrowthCurve& c);
bool verify_lef_upper(const DiagSpec& spec, const GrowthCurve& c);
bool verify_rf_upper(const DiagSpec& spec, const GrowthCurve& c,
                     std::size_t element_budget = 10'000'000);
bool verify_sr_lower(const GrowthCurve& sr, const GrowthCurve& map_curve,
                     const GrowthCurve& lef_curve);

struct AdmissibleParams {
  std::vector<long> d;
  std::vector<long> r;
};

/// Greedy construction of Bradford-admissible sequences for the growth
/// target f: strictly increasing primes d(n) >= 5 with f(n) <= d(n) - 1 and
///   (a) n <= r(n) <= min(18n, d(n)/3),
///   (b) r(l) distinct from +-r(m) and +-2r(m) modulo d(m) for all l != m.
AdmissibleParams admissible_params(const std::vector<long>& f, int levels);

/// Re-verifies (a), (b), primality and growth-target constraints from
/// scratch; throws std::invalid_argument describing the first violation.
void check_admissible(const std::vector<long>& d, const std::vector<long>& r,
                      const std::vector<long>& f);

}  // namespace diagprod
