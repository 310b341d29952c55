#include "diagprod/growth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "diagprod/marked.hpp"
#include "json.hpp"

namespace diagprod {

using nlohmann::json;

std::string GrowthCurve::to_csv() const {
  std::ostringstream out;
  out << "n,bound,log2_bound,certificate\n";
  for (const auto& p : points)
    out << p.n << ',' << p.value << ',' << p.log2_value << ",\""
        << p.certificate << "\"\n";
  return out.str();
}

bool GrowthCurve::monotone() const {
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i].n < points[i - 1].n || points[i].value < points[i - 1].value)
      return false;
  return true;
}

double log2_alt_order(long d) {
  return std::lgamma(static_cast<double>(d) + 1.0) / std::log(2.0) - 1.0;
}

GrowthCurve map_lower(const DiagSpec& spec, int n_levels, int radius_budget,
                      std::size_t element_budget) {
  GrowthCurve c;
  c.kind = "MAP_lower";
  std::vector<GrowthPoint> raw;
  for (int level = 1; level <= n_levels; ++level) {
    const auto w = find_wn(spec, level, radius_budget, element_budget);
    if (!w) continue;  // explicit gap, reported by absence
    GrowthPoint p;
    p.n = w->length;
    p.value = static_cast<double>(spec.d_at(level) - 1);
    p.log2_value = std::log2(p.value);
    json cert;
    cert["level"] = level;
    cert["word"] = word_to_string(w->word, spec.gen_labels());
    cert["radius"] = w->length;
    cert["dimension"] = spec.d_at(level) - 1;
    cert["verified_through"] = w->verified_through;
    cert["continuation_certified"] = w->continuation_certified;
    p.certificate = cert.dump();
    raw.push_back(std::move(p));
  }
  // keep the monotone staircase of best bounds by radius
  std::sort(raw.begin(), raw.end(),
            [](const GrowthPoint& a, const GrowthPoint& b) { return a.n < b.n; });
  double best = 0;
  for (auto& p : raw) {
    if (p.value <= best) continue;
    best = p.value;
    c.points.push_back(std::move(p));
  }
  return c;
}

namespace {

PermMarking level_marking(const DiagSpec& spec, int m) {
  return PermMarking({spec.gen_image(m, 0), spec.gen_image(m, 1)},
                     spec.gen_labels());
}

int base_embedding_radius(const DiagSpec& spec, int m, int horizon) {
  if (spec.base() == BaseKind::ClassicalAZ)
    return local_embedding_radius(AZMarking{}, level_marking(spec, m), horizon);
  return local_embedding_radius(LampMarking{}, level_marking(spec, m), horizon);
}

}  // namespace

GrowthCurve lef_upper(const DiagSpec& spec, int n_max, int level_horizon) {
  GrowthCurve c;
  c.kind = "LEF_upper";
  {
    GrowthPoint p0;
    p0.n = 0;
    p0.value = 1;
    p0.log2_value = 0;
    p0.certificate = json{{"m", 0}, {"note", "trivial group embeds the empty ball"}}.dump();
    c.points.push_back(std::move(p0));
  }
  std::vector<int> radius(level_horizon + 1, 0);
  for (int m = 1; m <= level_horizon; ++m)
    radius[m] = base_embedding_radius(spec, m, n_max);
  for (int n = 1; n <= n_max; ++n) {
    int m_least = 0;
    for (int m = 1; m <= level_horizon; ++m)
      if (radius[m] >= n) {
        m_least = m;
        break;
      }
    if (m_least == 0) continue;  // no qualifying level, point omitted
    GrowthPoint p;
    p.n = n;
    const long d = spec.d_at(m_least);
    p.log2_value = log2_alt_order(d);
    p.value = std::exp2(std::min(p.log2_value, 1000.0));
    p.certificate =
        json{{"m", m_least}, {"d", d}, {"embedding_radius", radius[m_least]}}.dump();
    c.points.push_back(std::move(p));
  }
  return c;
}

namespace {

// least m <= level_horizon with the first-m-coordinate projection injective
// on the given elements; 0 if none
int least_injective_prefix(const std::vector<DiagElement>& elems,
                           int level_horizon) {
  for (int m = 1; m <= level_horizon; ++m) {
    std::set<std::string> keys;
    bool injective = true;
    for (const auto& e : elems) {
      std::string k;
      for (int i = 0; i < m; ++i) {
        k += e.coords[i].key();
        k += '|';
      }
      if (!keys.insert(std::move(k)).second) {
        injective = false;
        break;
      }
    }
    if (injective) return m;
  }
  return 0;
}

}  // namespace

GrowthCurve rf_upper(const DiagSpec& spec, int n_max, int level_horizon,
                     std::size_t element_budget) {
  if (level_horizon > spec.levels())
    throw std::invalid_argument("rf_upper: horizon beyond materialized levels");
  GrowthCurve c;
  c.kind = "RF_upper";
  {
    GrowthPoint p0;
    p0.n = 0;
    p0.value = 1;
    p0.log2_value = 0;
    p0.certificate = json{{"m", 0}, {"note", "trivial quotient"}}.dump();
    c.points.push_back(std::move(p0));
  }
  DiagMarking marking(spec);
  for (int n = 1; n <= n_max; ++n) {
    const auto b = ball(marking, n, true, element_budget);
    const int m = least_injective_prefix(b.elems, level_horizon);
    if (m == 0) continue;
    GrowthPoint p;
    p.n = n;
    p.log2_value = 0;
    for (int i = 1; i <= m; ++i) p.log2_value += log2_alt_order(spec.d_at(i));
    p.value = std::exp2(std::min(p.log2_value, 1000.0));
    p.certificate = json{{"m", m}, {"ball_size", b.elems.size()}}.dump();
    c.points.push_back(std::move(p));
  }
  return c;
}

GrowthCurve sr_lower(const GrowthCurve& map_curve, const GrowthCurve& lef_curve) {
  GrowthCurve c;
  c.kind = "SR_lower";
  if (map_curve.points.empty() || lef_curve.points.empty()) return c;
  // the LEF curve must cover a contiguous initial range to quantify
  // "LEF(m) < v for all m < M"
  int covered = -1;
  for (const auto& p : lef_curve.points)
    if (p.n == covered + 1) covered = p.n;
  for (const auto& mp : map_curve.points) {
    const double v = mp.value;
    int M = 0;
    while (M <= covered) {
      const auto it =
          std::find_if(lef_curve.points.begin(), lef_curve.points.end(),
                       [&](const GrowthPoint& p) { return p.n == M; });
      if (it->log2_value >= std::log2(v)) break;
      ++M;
    }
    // LEF(m) < v for all m < M
    if (M <= mp.n) continue;  // vacuous, point omitted
    GrowthPoint p;
    p.n = mp.n;
    p.value = M;
    p.log2_value = std::log2(static_cast<double>(M));
    p.certificate = json{{"map_dimension", v},
                         {"M", M},
                         {"lef_checked_below", M},
                         {"map_certificate", json::parse(mp.certificate)}}
                        .dump();
    c.points.push_back(std::move(p));
  }
  return c;
}

bool verify_map_lower(const DiagSpec& spec, const GrowthCurve& c) {
  for (const auto& p : c.points) {
    const auto cert = json::parse(p.certificate);
    WitnessCertificate w;
    w.level = cert["level"];
    w.word = parse_word(cert["word"], spec.gen_labels());
    w.length = cert["radius"];
    w.verified_through = cert["verified_through"];
    if (!verify_witness(spec, w)) return false;
    if (p.n != w.length) return false;
    if (p.value != static_cast<double>(spec.d_at(w.level) - 1)) return false;
  }
  return true;
}

bool verify_lef_upper(const DiagSpec& spec, const GrowthCurve& c) {
  for (const auto& p : c.points) {
    const auto cert = json::parse(p.certificate);
    const int m = cert["m"];
    if (m == 0) {
      if (p.n != 0 || p.value != 1) return false;
      continue;
    }
    // the radius-n balls of base and level marking must agree
    const auto lm = level_marking(spec, m);
    const bool iso = spec.base() == BaseKind::ClassicalAZ
                         ? ball_isomorphic(AZMarking{}, lm, p.n)
                         : ball_isomorphic(LampMarking{}, lm, p.n);
    if (!iso) return false;
    if (std::abs(p.log2_value - log2_alt_order(spec.d_at(m))) > 1e-9) return false;
  }
  return true;
}

bool verify_rf_upper(const DiagSpec& spec, const GrowthCurve& c,
                     std::size_t element_budget) {
  DiagMarking marking(spec);
  for (const auto& p : c.points) {
    const auto cert = json::parse(p.certificate);
    const int m = cert["m"];
    if (m == 0) continue;
    const auto b = ball(marking, p.n, true, element_budget);
    std::set<std::string> keys;
    for (const auto& e : b.elems) {
      std::string k;
      for (int i = 0; i < m; ++i) k += e.coords[i].key() + "|";
      if (!keys.insert(std::move(k)).second) return false;
    }
    double lg = 0;
    for (int i = 1; i <= m; ++i) lg += log2_alt_order(spec.d_at(i));
    if (std::abs(p.log2_value - lg) > 1e-9) return false;
  }
  return true;
}

bool verify_sr_lower(const GrowthCurve& sr, const GrowthCurve& map_curve,
                     const GrowthCurve& lef_curve) {
  for (const auto& p : sr.points) {
    const auto cert = json::parse(p.certificate);
    const double v = cert["map_dimension"];
    const int M = cert["M"];
    if (static_cast<int>(p.value) != M || M <= p.n) return false;
    // the cited MAP point must exist
    bool found = false;
    for (const auto& mp : map_curve.points)
      found = found || (mp.n == p.n && mp.value == v);
    if (!found) return false;
    // LEF upper bounds below M must all lie under v
    for (int m = 0; m < M; ++m) {
      bool ok = false;
      for (const auto& lp : lef_curve.points)
        if (lp.n == m) ok = lp.log2_value < std::log2(v);
      if (!ok) return false;
    }
  }
  return true;
}

namespace {

bool residue_clash(long x, long rm, long dm) {
  const long v = ((x % dm) + dm) % dm;
  const long r1 = ((rm % dm) + dm) % dm;
  const long r2 = ((2 * rm % dm) + dm) % dm;
  return v == r1 || v == dm - r1 || v == r2 || v == dm - r2;
}

}  // namespace

AdmissibleParams admissible_params(const std::vector<long>& f, int levels) {
  if (levels < 1 || static_cast<int>(f.size()) < levels)
    throw std::invalid_argument("admissible_params: need f on every level");
  for (int i = 1; i < levels; ++i)
    if (f[i] < f[i - 1])
      throw std::invalid_argument("admissible_params: f must be non-decreasing");
  AdmissibleParams out;
  for (int n = 1; n <= levels; ++n) {
    bool placed = false;
    for (long r = n; r <= 18L * n && !placed; ++r) {
      // (b) against earlier levels: r distinct from +-r(m), +-2r(m) mod d(m)
      bool ok = true;
      for (size_t m = 0; m < out.d.size() && ok; ++m)
        ok = !residue_clash(r, out.r[m], out.d[m]);
      if (!ok) continue;
      // choose the least prime d satisfying growth and (a), then (b) back
      long d = std::max({3 * r, f[n - 1] + 1, 5L,
                         out.d.empty() ? 5L : out.d.back() + 2});
      for (int tries = 0; tries < 2000; ++tries, ++d) {
        d = next_prime_geq(d);
        bool okd = 3 * r <= d;
        for (size_t m = 0; m < out.r.size() && okd; ++m)
          okd = !residue_clash(out.r[m], r, d);
        if (okd) {
          out.d.push_back(d);
          out.r.push_back(r);
          placed = true;
          break;
        }
      }
    }
    if (!placed)
      throw std::runtime_error("admissible_params: horizon exhausted at level " +
                               std::to_string(n));
  }
  check_admissible(out.d, out.r, {f.begin(), f.begin() + levels});
  return out;
}

void check_admissible(const std::vector<long>& d, const std::vector<long>& r,
                      const std::vector<long>& f) {
  const size_t L = d.size();
  if (r.size() != L || f.size() > L)
    throw std::invalid_argument("check_admissible: length mismatch");
  for (size_t i = 0; i < L; ++i) {
    const long n = static_cast<long>(i) + 1;
    if (!is_prime(d[i]))
      throw std::invalid_argument("check_admissible: d not prime at level " +
                                  std::to_string(n));
    if (d[i] < 5 || (i > 0 && d[i] <= d[i - 1]))
      throw std::invalid_argument("check_admissible: d not increasing from 5");
    if (r[i] < n || r[i] > std::min(18L * n, d[i] / 3))
      throw std::invalid_argument("check_admissible: (a) fails at level " +
                                  std::to_string(n));
    if (i < f.size() && f[i] > d[i] - 1)
      throw std::invalid_argument("check_admissible: f(n) > d(n) - 1 at level " +
                                  std::to_string(n));
  }
  for (size_t l = 0; l < L; ++l)
    for (size_t m = 0; m < L; ++m) {
      if (l == m) continue;
      if (residue_clash(r[l], r[m], d[m]))
        throw std::invalid_argument(
            "check_admissible: (b) fails for l=" + std::to_string(l + 1) +
            ", m=" + std::to_string(m + 1));
    }
}

}  // namespace diagprod
