#include "diagprod/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "diagprod/marked.hpp"
#include "json.hpp"

namespace diagprod {

using nlohmann::json;

CharFamily CharFamily::trivial() {
  CharFamily f;
  f.kind_ = Kind::Trivial;
  return f;
}

CharFamily CharFamily::standard() {
  CharFamily f;
  f.kind_ = Kind::Standard;
  return f;
}

CharFamily CharFamily::balanced() {
  CharFamily f;
  f.kind_ = Kind::Balanced;
  return f;
}

CharFamily CharFamily::explicit_list(std::vector<Partition> per_level) {
  CharFamily f;
  f.kind_ = Kind::Explicit;
  f.list_ = std::move(per_level);
  return f;
}

Partition CharFamily::partition_for(long d, int level) const {
  switch (kind_) {
    case Kind::Trivial:
      return {static_cast<int>(d)};
    case Kind::Standard:
      return {static_cast<int>(d) - 1, 1};
    case Kind::Balanced: {
      const int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
      const int q = static_cast<int>(d / k), rem = static_cast<int>(d % k);
      Partition p;
      p.insert(p.end(), rem, q + 1);
      p.insert(p.end(), k - rem, q);
      while (!p.empty() && p.back() == 0) p.pop_back();
      return p;
    }
    case Kind::Explicit: {
      if (level < 1 || level > static_cast<int>(list_.size()))
        throw std::invalid_argument("CharFamily: no partition for level " +
                                    std::to_string(level));
      const Partition& p = list_[level - 1];
      if (partition_size(p) != d)
        throw std::invalid_argument("CharFamily: partition size mismatch");
      return p;
    }
  }
  throw std::logic_error("CharFamily: unreachable");
}

std::string CharFamily::name() const {
  switch (kind_) {
    case Kind::Trivial:
      return "trivial";
    case Kind::Standard:
      return "standard";
    case Kind::Balanced:
      return "balanced";
    case Kind::Explicit:
      return "explicit";
  }
  return "?";
}

namespace {

struct SparseImage {
  long d = 1;
  long rot = 0;
  std::map<long, long> sigma;  // residues -> residues, fixed points omitted
};

long normr(long x, long d) { return ((x % d) + d) % d; }

void compose_cycle(SparseImage& img, long p0, long p1, long p2, int power) {
  // img.sigma <- img.sigma . cycle^power (cycle: p0 -> p1 -> p2 -> p0)
  for (int rep = 0; rep < power; ++rep) {
    std::map<long, long> cyc{{p0, p1}, {p1, p2}, {p2, p0}};
    std::map<long, long> next;
    auto sig = [&](long x) {
      auto it = img.sigma.find(x);
      return it == img.sigma.end() ? x : it->second;
    };
    for (const auto& [x, y] : img.sigma) {
      (void)y;
      if (!cyc.count(x)) next[x] = sig(x);
    }
    for (const auto& [x, y] : cyc) next[x] = sig(y);
    for (auto it = next.begin(); it != next.end();)
      it = it->second == it->first ? next.erase(it) : std::next(it);
    img.sigma = std::move(next);
  }
}

// theta_m(g) as sigma . C^rot over Z/d(m), exact for large d
SparseImage sparse_theta(const DiagSpec& spec, int m, const BaseElement& g) {
  SparseImage img;
  img.d = spec.d_at(m);
  if (spec.base() == BaseKind::Lamplighter) {
    const auto& e = std::get<LampElement>(g);
    const long r = spec.r_at(m);
    for (const auto& [j, v] : e.lamps)
      compose_cycle(img, normr(j, img.d), normr(j + r, img.d),
                    normr(j + 2 * r, img.d), v);
    img.rot = normr(e.shift, img.d);
  } else {
    const auto& e = std::get<AZElement>(g);
    // residues must be injective on the support
    std::map<long, long> res;
    for (const auto& [j, v] : e.perm.moved()) {
      const long rj = normr(j, img.d);
      if (res.count(rj))
        throw SupportTooWide("sparse_theta: residues collide at level " +
                             std::to_string(m));
      res[rj] = normr(v, img.d);
    }
    img.sigma = std::move(res);
    img.rot = normr(e.shift, img.d);
  }
  return img;
}

long support_size(const SparseImage& img) {
  // full map x -> sigma(x) + rot; support = d - #fixed
  if (img.rot == 0) return static_cast<long>(img.sigma.size());
  long fixed = 0;
  for (const auto& [x, y] : img.sigma)
    if (normr(y + img.rot, img.d) == x) ++fixed;
  return img.d - fixed;
}

// cycle type of the image when the rotation part vanishes
Partition finitary_type(const SparseImage& img, long d) {
  if (img.rot != 0)
    throw std::invalid_argument("finitary_type: nonzero rotation");
  std::map<long, char> seen;
  std::vector<int> cycles;
  for (const auto& [x, y] : img.sigma) {
    (void)y;
    if (seen.count(x)) continue;
    int len = 0;
    long j = x;
    while (!seen.count(j)) {
      seen[j] = 1;
      auto it = img.sigma.find(j);
      j = it == img.sigma.end() ? j : it->second;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end(), std::greater<int>());
  Partition type(cycles.begin(), cycles.end());
  type.insert(type.end(), static_cast<size_t>(d - img.sigma.size()), 1);
  return type;
}

constexpr long kTableDegreeCap = 32;

// normalized |phi| (and the signed complex value) at level m for a table
// family; requires the image cycle type to be materializable
std::complex<double> table_value(const DiagSpec& spec, int m,
                                 const BaseElement& g, const CharFamily& fam) {
  const long d = spec.d_at(m);
  if (d > kTableDegreeCap)
    throw BallBudgetExceeded("table family: degree " + std::to_string(d) +
                             " beyond the exact-arithmetic cap");
  const auto img = sparse_theta(spec, m, g);
  Partition type;
  if (img.rot == 0) {
    type = finitary_type(img, d);
  } else {
    const Perm dense = spec.theta(m, g);
    type = dense.cycle_type().as_partition();
  }
  const Partition lambda = fam.partition_for(d, m);
  const long long chi = shared_engine().mn_value(lambda, type);
  const long long dim = hook_dimension(lambda);
  return {static_cast<double>(chi) / static_cast<double>(dim), 0.0};
}

}  // namespace

long theta_support_size(const DiagSpec& spec, int m, const BaseElement& g) {
  return support_size(sparse_theta(spec, m, g));
}

PartialProducts partial_products(const DiagSpec& spec, const BaseElement& g,
                                 const CharFamily& fam, int N) {
  PartialProducts out;
  out.factor.reserve(N);
  double p = 1.0, p_alt = 1.0, logp = 0.0;
  for (int m = 1; m <= N; ++m) {
    double f = 1.0, f_alt = 1.0;
    if (fam.kind() == CharFamily::Kind::Trivial) {
      // both stay 1
    } else if (fam.kind() == CharFamily::Kind::Standard) {
      try {
        const double d = std::exp(spec.d_rule().log_at(m));
        const double s = static_cast<double>(theta_support_size(spec, m, g));
        f = std::abs(d - s - 1.0) / (d - 1.0);
        f_alt = std::abs(d - 1.0 - s) / d;
      } catch (const std::overflow_error&) {
        // degree beyond 64 bits: the support is either the fixed finitary
        // one (factor indistinguishable from 1 in doubles) or co-finite
        // because of the shift part (factor indistinguishable from 0)
        const long shift = std::visit([](const auto& e) { return e.shift; }, g);
        f = f_alt = (shift == 0) ? 1.0 : 0.0;
      }
    } else {
      f = std::abs(table_value(spec, m, g, fam));
      f_alt = f;
    }
    p *= f;
    p_alt *= f_alt;
    logp += std::log(std::max(f, 1e-300));
    out.factor.push_back(f);
    out.product.push_back(p);
    out.product_alt.push_back(p_alt);
  }
  out.log_product = logp;
  return out;
}

namespace {

// rigorous bound on sum_{m>N} 1/(d(m)-1) when the rule at least doubles
std::optional<double> tail_reciprocal_bound(const SeqRule& d, int N) {
  // tower rules square each step: d(m+1) - 1 >= 2 (d(m) - 1) holds from the
  // start, so the tail is dominated by a geometric series
  if (d.to_string().rfind("tower:", 0) == 0)
    return 4.0 * std::exp(-d.log_at(N + 1));
  return std::nullopt;
}

}  // namespace

std::string NullVerdict::kind_name() const {
  switch (kind) {
    case Kind::NullCertifiedNumerically:
      return "NullCertifiedNumerically";
    case Kind::PositiveLimitCertified:
      return "PositiveLimitCertified";
    case Kind::Undetermined:
      return "Undetermined";
  }
  return "?";
}

NullVerdict classify_null(const DiagSpec& spec, const BaseElement& g,
                          const CharFamily& fam, int N, double eps_zero) {
  NullVerdict v;
  v.horizon = N;
  if (base_is_identity(g) || fam.kind() == CharFamily::Kind::Trivial) {
    v.kind = NullVerdict::Kind::PositiveLimitCertified;
    v.lower_bound = 1.0;
    v.certificate = json{{"reason", base_is_identity(g)
                                        ? "identity element"
                                        : "trivial family"}}.dump();
    return v;
  }
  const auto pp = partial_products(spec, g, fam, N);
  v.p_N = pp.product.back();
  v.p_N_variant = pp.product_alt.back();
  if (std::max(v.p_N, std::exp(pp.log_product)) < eps_zero &&
      (fam.kind() != CharFamily::Kind::Standard || v.p_N_variant < eps_zero)) {
    v.kind = NullVerdict::Kind::NullCertifiedNumerically;
    v.certificate = json{{"p_N", v.p_N},
                         {"p_N_variant", v.p_N_variant},
                         {"eps_zero", eps_zero},
                         {"note", "numerical evidence only"}}.dump();
    return v;
  }
  if (fam.kind() == CharFamily::Kind::Standard) {
    // 1 - |phi_m| <= (s+1)/(d(m)-1) under either normalization; s is bounded
    // by the support size at a level where the tail map already separates
    long s_bound = std::visit(
        [](const auto& e) {
          if constexpr (std::is_same_v<std::decay_t<decltype(e)>, AZElement>)
            return static_cast<long>(e.perm.moved().size());
          else
            return 3L * static_cast<long>(e.lamps.size());
        },
        g);
    for (int m = 1; m <= N; ++m) {
      try {
        s_bound = std::max(s_bound, theta_support_size(spec, m, g));
      } catch (const std::overflow_error&) {
        break;  // beyond 64-bit degrees the finitary bound above applies
      }
    }
    const auto tail = tail_reciprocal_bound(spec.d_rule(), N);
    if (tail) {
      const double majorant = static_cast<double>(s_bound + 1) * *tail;
      if (majorant < 1.0 && v.p_N > 0) {
        v.kind = NullVerdict::Kind::PositiveLimitCertified;
        v.tail_majorant = majorant;
        v.lower_bound = std::min(v.p_N, v.p_N_variant) * (1.0 - majorant);
        v.certificate =
            json{{"support_bound", s_bound},
                 {"tail_majorant", majorant},
                 {"lower_bound", v.lower_bound},
                 {"rule", spec.d_rule().to_string()},
                 {"note", "prod(1-x) >= 1 - sum(x) on the certified tail"}}
                .dump();
        return v;
      }
    }
  }
  v.kind = NullVerdict::Kind::Undetermined;
  v.certificate = json{{"p_N", v.p_N}, {"horizon", N}}.dump();
  return v;
}

double LimitProduct::cauchy_gap(int K) const {
  if (K < 1 || K > static_cast<int>(partial.size()))
    throw std::invalid_argument("cauchy_gap: K out of range");
  double g = 0;
  for (int k = K; k < static_cast<int>(partial.size()); ++k)
    g = std::max(g, std::abs(partial[k] - partial[K - 1]));
  return g;
}

LimitProduct limit_product_signed(const Partition& sigma_cycles,
                                  const std::vector<int>& n_seq,
                                  const std::vector<Partition>& chars,
                                  const std::vector<int>& split_halves) {
  int q = 0;
  for (int c : sigma_cycles) {
    if (c < 2) throw std::invalid_argument("limit_product: parts must be >= 2");
    q += c;
  }
  if ((q - static_cast<int>(sigma_cycles.size())) % 2 != 0)
    throw std::invalid_argument("limit_product: sigma must be even");
  if (chars.size() != n_seq.size())
    throw std::invalid_argument("limit_product: one character per level");
  LimitProduct out;
  std::complex<double> p{1.0, 0.0};
  double prev_abs = 1.0;
  for (size_t i = 0; i < n_seq.size(); ++i) {
    const int n = n_seq[i];
    if (n < q + 2)
      throw std::invalid_argument("limit_product: need n_i >= q + 2");
    Partition type = sigma_cycles;
    type.insert(type.end(), n - q, 1);
    const auto restricted = AltChar::restrict_to_alt(chars[i]);
    const AltChar& ch =
        restricted.size() == 1
            ? restricted[0]
            : restricted[i < split_halves.size() && split_halves[i] ? 1 : 0];
    AltClass c;
    c.type = type;
    c.rep = canonical_of_type(type);
    const std::complex<double> phi = ch.normalized(c).to_complex();
    p *= phi;
    out.char_names.push_back(ch.name());
    out.partial.push_back(p);
    if (std::abs(p) > prev_abs + 1e-12) out.abs_monotone = false;
    prev_abs = std::abs(p);
    out.max_abs = std::max(out.max_abs, std::abs(p));
  }
  if (out.partial.size() >= 2)
    out.last_gap = std::abs(out.partial.back() -
                            out.partial[out.partial.size() - 2]);
  return out;
}

LimitProduct limit_product_random(const Partition& sigma_cycles,
                                  const std::vector<int>& n_seq,
                                  unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<Partition> chars;
  std::vector<int> halves;
  for (int n : n_seq) {
    const auto parts = partitions_of(n);
    Partition pick;
    do {
      pick = parts[rng() % parts.size()];
    } while (pick == Partition{n} || pick == Partition(n, 1));
    chars.push_back(pick);
    halves.push_back(static_cast<int>(rng() % 2));
  }
  return limit_product_signed(sigma_cycles, n_seq, chars, halves);
}

std::vector<AccumulationEntry> accumulation_scan(const Partition& sigma_cycles,
                                                 int n_lo, int n_hi,
                                                 double eps_near) {
  int q = 0;
  for (int c : sigma_cycles) q += c;
  std::vector<AccumulationEntry> out;
  for (int n = std::max(n_lo, q + 2); n <= n_hi; ++n) {
    Partition type = sigma_cycles;
    type.insert(type.end(), n - q, 1);
    AltClass c;
    c.type = type;
    c.rep = canonical_of_type(type);
    for (const auto& ch : AltChar::all_irreducible(n)) {
      if (ch.trivial()) continue;
      AccumulationEntry e;
      e.n = n;
      e.char_name = ch.name();
      e.value = ch.normalized(c).to_complex();
      e.near_one = std::abs(e.value) > 1.0 - eps_near;
      e.dist_to_one = std::abs(e.value - std::complex<double>{1.0, 0.0});
      out.push_back(std::move(e));
    }
  }
  return out;
}

CompatibilityReport compatible_at_horizon(
    const DiagSpec& spec,
    const std::vector<std::pair<BaseElement, std::complex<double>>>& psi,
    const CharFamily& fam, int N, double eps_zero, double tol) {
  CompatibilityReport rep;
  for (const auto& [tau, value] : psi) {
    if (base_is_identity(tau)) continue;
    const auto verdict = classify_null(spec, tau, fam, N, eps_zero);
    if (verdict.kind == NullVerdict::Kind::NullCertifiedNumerically) {
      if (std::abs(value) > tol) {
        rep.compatible = false;
        rep.violations.push_back(base_to_string(tau));
      }
    } else if (verdict.kind == NullVerdict::Kind::Undetermined) {
      rep.undetermined.push_back(base_to_string(tau));
    }
  }
  return rep;
}

std::string partial_products_csv(const DiagSpec& spec, const BaseElement& g,
                                 const CharFamily& fam, int N) {
  const auto pp = partial_products(spec, g, fam, N);
  std::ostringstream out;
  out << "k,p_k,one_minus_abs_phi_k,cumulative_tail_majorant\n";
  double cum = 0;
  for (int k = 1; k <= N; ++k) {
    const long s = theta_support_size(spec, k, g);
    cum += static_cast<double>(s + 1) / (std::exp(spec.d_rule().log_at(k)) - 1.0);
    out << k << ',' << pp.product[k - 1] << ',' << 1.0 - pp.factor[k - 1]
        << ',' << cum << '\n';
  }
  return out.str();
}

}  // namespace diagprod
