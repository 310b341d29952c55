// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <random>
#include <vector>

#include "diagprod/almostrep.hpp"
#include "diagprod/characters.hpp"
#include "diagprod/growth.hpp"
#include "diagprod/limits.hpp"
#include "diagprod/marked.hpp"

using namespace diagprod;

namespace {

int failures = 0;

struct Criterion {
  const char* name;
  std::chrono::steady_clock::time_point start;
  bool ok = true;
  std::string detail;

  explicit Criterion(const char* n)
      : name(n), start(std::chrono::steady_clock::now()) {}
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
  ~Criterion() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    failures += !ok;
  }
};

std::vector<Perm> alt_elements(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  std::vector<Perm> out;
  std::sort(img.begin(), img.end());
  do {
    Perm p = Perm::from_images(img);
    if (p.is_even()) out.push_back(std::move(p));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

void criterion1_sym_tables() {
  Criterion c("1 character-engine exactness: Sym(n<=12) orthogonality, hook dims to n<=14");
  try {
    for (int n = 2; n <= 12; ++n) check_sym_orthogonality(n);
    auto& eng = shared_engine();
    for (int n = 1; n <= 14; ++n)
      for (const auto& lam : partitions_of(n))
        c.require(eng.mn_value(lam, Partition(n, 1)) == hook_dimension(lam),
                  "dimension mismatch at " + partition_key(lam));
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion2_alt_splitting() {
  Criterion c("2 alternating splitting: formulas, sums, exact orthogonality, Alt(5) oracle spot");
  try {
    auto& eng = shared_engine();
    for (int n = 3; n <= 10; ++n) {
      for (const auto& lam : partitions_of(n)) {
        if (!self_conjugate(lam)) continue;
        const auto pair = AltChar::restrict_to_alt(lam);
        const auto hooks = diagonal_hooks(lam);
        const int k = static_cast<int>(hooks.size());
        const int eps = ((n - k) / 2) % 2 == 0 ? 1 : -1;
        long long rad = eps;
        for (int h : hooks) rad *= h;
        const Partition hook_type(hooks.begin(), hooks.end());
        for (const auto& cls : alt_classes(n)) {
          const QuadVal sum = pair[0].value(cls) + pair[1].value(cls);
          c.require(sum.is_rational() &&
                        sum.rational_part() ==
                            Rational(eng.mn_value(lam, cls.type)),
                    "chi+ + chi- != restriction at n=" + std::to_string(n));
          if (cls.type == hook_type) {
            const QuadVal expect_plus(Rational(eps, 2),
                                      Rational(cls.half == 0 ? 1 : -1, 2), rad);
            const QuadVal expect_minus(Rational(eps, 2),
                                       Rational(cls.half == 0 ? -1 : 1, 2), rad);
            c.require(pair[0].value(cls) == expect_plus &&
                          pair[1].value(cls) == expect_minus,
                      "split formula mismatch at n=" + std::to_string(n));
          }
        }
      }
      check_alt_orthogonality(n);
    }
    // golden-ratio spot value against the independent expectation
    const auto pair = AltChar::restrict_to_alt({3, 1, 1});
    int golden = 0;
    for (const auto& cls : alt_classes(5)) {
      if (cls.type != Partition{5}) continue;
      const QuadVal v = pair[0].value(cls);
      golden += (v.surd() == 5 && v.rational_part() == Rational(1, 2) &&
                 (v.surd_coeff() == Rational(1, 2) ||
                  v.surd_coeff() == Rational(-1, 2)));
    }
    c.require(golden == 2, "(1 +- sqrt(5))/2 not found on the 5-cycle classes");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion3_bekka_windows() {
  Criterion c("3 bekka windows: supp([shift, x_k]) = {2k^2..2k^2+2k+2}, disjoint, k<=9");
  try {
    std::vector<std::vector<long>> supports;
    for (int k = 1; k <= 9; k += 2) {
      const auto y = shift_commutator(bekka_witness(k));
      std::vector<long> expect;
      for (long j = 2L * k * k; j <= 2L * k * k + 2 * k + 2; ++j)
        expect.push_back(j);
      c.require(y.support() == expect, "window mismatch at k=" + std::to_string(k));
      supports.push_back(y.support());
    }
    for (size_t a = 0; a < supports.size(); ++a)
      for (size_t b = a + 1; b < supports.size(); ++b)
        for (long x : supports[a])
          c.require(std::find(supports[b].begin(), supports[b].end(), x) ==
                        supports[b].end(),
                    "windows intersect");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion4_null_dichotomy() {
  Criterion c("4 null dichotomy: dense d=2n+3 drives p below 1e-6 by N<=1e4; sparse certified positive");
  try {
    const auto dense = DiagSpec::classical(SeqRule::arith(2, 3), 1);
    const BaseElement t = AZElement::tau();
    const auto vd = classify_null(dense, t, CharFamily::standard(), 10000, 1e-6);
    c.require(vd.kind == NullVerdict::Kind::NullCertifiedNumerically,
              "dense verdict: " + vd.kind_name());
    c.require(vd.p_N < 1e-6 && vd.p_N_variant < 1e-6,
              "dense products not below 1e-6");

    const auto sparse = DiagSpec::classical(SeqRule::tower(625), 1);
    // the instance satisfies sum 3/(d_n - 1) < 0.1
    double sum = 3.0 / 624.0 + 3.0 / 390624.0;
    c.require(sum < 0.1, "sparse instance not sparse enough");
    const auto vs = classify_null(sparse, t, CharFamily::standard(), 10, 1e-9);
    c.require(vs.kind == NullVerdict::Kind::PositiveLimitCertified,
              "sparse verdict: " + vs.kind_name());
    c.require(vs.lower_bound > 0 && vs.tail_majorant < 0.1,
              "missing analytic certificate");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion5_limit_products() {
  Criterion c("5 limit products: 100 random runs over n=7..15 Cauchy at 1e-3 by K=9 or |p_K|<=1e-3");
  try {
    std::vector<int> ns{7, 8, 9, 10, 11, 12, 13, 14, 15};
    std::mt19937_64 master(20260808);
    int bad = 0;
    for (int run = 0; run < 100; ++run) {
      const auto lp = limit_product_random({3}, ns, master());
      const double pK = std::abs(lp.partial.back());
      if (!(lp.last_gap <= 1e-3 || pK <= 1e-3)) ++bad;
    }
    c.require(bad == 0, std::to_string(bad) + " runs failed the Cauchy/vanishing test");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion6_wn_witnesses() {
  Criterion c("6 w_n witnesses: classical d=(5,7,9), r=1, radius <= 8 per level + MAP point");
  try {
    const auto spec = DiagSpec::classical(SeqRule::list({5, 7, 9}), 3);
    for (int level = 1; level <= 3; ++level) {
      const auto w = find_wn(spec, level, 8);
      c.require(w.has_value(),
                "no witness within radius 8 at level " + std::to_string(level));
      if (w) {
        c.require(verify_witness(spec, *w), "witness fails re-verification");
        const auto curve = map_lower(spec, level, 8);
        bool certified = false;
        for (const auto& p : curve.points)
          certified = certified || p.value >= spec.d_at(level) - 1;
        c.require(certified, "MAP point missing");
      }
    }
    // supplementary context, not part of the criterion: the classical
    // level-1 witness exists at radius 16, and on the Bradford-admissible
    // instance d=(5,17,47,...), r=(1,5,15,...) the 4+4r(1) = 8 bound is
    // attained exactly
    const auto w16 = find_wn(spec, 1, 16);
    std::vector<long> f(40);
    for (int i = 0; i < 40; ++i) f[i] = i + 1;
    const auto ap = admissible_params(f, 40);
    const auto bspec = DiagSpec::lamplighter(SeqRule::list(ap.d),
                                             SeqRule::list(ap.r), 3, true);
    const auto w8 = find_wn(bspec, 1, 8);
    std::printf(
        "       (context: classical level-1 witness found at radius %s; "
        "admissible instance level-1 witness at radius %s = 4+4r(1))\n",
        w16 ? std::to_string(w16->length).c_str() : "none",
        w8 ? std::to_string(w8->length).c_str() : "none");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion7_chabauty() {
  Criterion c("7 chabauty: embedding radius non-decreasing over d=5..13 and >= 2 at m=3");
  try {
    AZMarking az;
    int prev = 0;
    std::vector<int> radii;
    for (int d : {5, 7, 9, 11, 13}) {
      const int r = local_embedding_radius(az, classical_level_marking(d), 8);
      radii.push_back(r);
      c.require(r >= prev, "radius decreased at d=" + std::to_string(d));
      prev = r;
    }
    c.require(radii[2] >= 2, "radius at m=3 below 2");
    std::string curve;
    for (int r : radii) curve += std::to_string(r) + " ";
    std::printf("       (embedding radii: %s)\n", curve.c_str());
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion8_stability() {
  Criterion c("8 stability recovery: 100 trials per rep and eps, >=95 converge within 3 eps");
  try {
    PermMarking m({Perm::parse(5, "(1 2 3 4 5)"), Perm::parse(5, "(1 2 3)")},
                  {"a", "b"});
    RepDomain dom(m, 12);
    const std::vector<std::pair<const char*, AlmostRep>> reps{
        {"standard", standard_rep(m)}, {"permutation", permutation_rep(m)}};
    for (const auto& [name, rep] : reps) {
      // exact representations are fixed points to 1e-12
      const auto fx = correct(rep, dom, 1e-10, 2);
      for (double dist : fx.distance_to_input)
        c.require(dist <= 1e-12, std::string(name) + " rep not a fixed point");
      for (double eps : {0.01, 0.05}) {
        std::mt19937_64 master(777);
        int good = 0;
        for (int trial = 0; trial < 100; ++trial) {
          const auto phi = perturb(rep, eps, master());
          const auto rec = correct(phi, dom, 1e-8, 200);
          double dist = 0;
          for (size_t i = 0; i < rep.gens.size(); ++i)
            dist = std::max(dist, d_hs(rec.rep.gens[i], rep.gens[i]));
          good += rec.converged && dist <= 3 * eps;
        }
        c.require(good >= 95, std::string(name) + " eps=" +
                                  std::to_string(eps) + ": only " +
                                  std::to_string(good) + "/100 recovered");
      }
    }
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion9_trace_algebra() {
  Criterion c("9 trace algebra: Gram PSD (>= -1e-10), tensor trace identity to 1e-12");
  try {
    const auto a5 = alt_elements(5);
    for (const auto& ch : AltChar::all_irreducible(5)) {
      double lo = 0;
      c.require(gram_psd_check(
                    a5,
                    [&](const Perm& g) { return ch.normalized(g).to_complex(); },
                    1e-10, &lo),
                ch.name() + " gram min eig " + std::to_string(lo));
    }

    // thoma_tensor of standard characters on U_3 = Alt(5) x Alt(7) x Alt(9):
    // the tensor values on tuples feed a Gram matrix over a tuple sample
    const std::vector<int> degrees{5, 7, 9};
    std::vector<std::function<std::complex<double>(const Perm&)>> stds;
    for (int d : degrees) {
      const auto ch = AltChar::restrict_to_alt({d - 1, 1})[0];
      stds.push_back(
          [ch](const Perm& g) { return ch.normalized(g).to_complex(); });
    }
    std::mt19937_64 rng(99);
    auto random_even = [&rng](int d) {
      std::vector<int> img(d);
      for (int i = 0; i < d; ++i) img[i] = i + 1;
      Perm p(d);
      do {
        std::shuffle(img.begin(), img.end(), rng);
        p = Perm::from_images(img);
      } while (!p.is_even());
      return p;
    };
    std::vector<std::vector<Perm>> tuples;
    for (int i = 0; i < 48; ++i)
      tuples.push_back({random_even(5), random_even(7), random_even(9)});
    // Gram over the product group: f(u^-1 v) = prod f_i(u_i^-1 v_i)
    const int msz = static_cast<int>(tuples.size());
    CMatrix gram(msz, msz);
    for (int i = 0; i < msz; ++i)
      for (int j = 0; j < msz; ++j) {
        std::vector<Perm> quot;
        for (int t = 0; t < 3; ++t)
          quot.push_back(tuples[j][t].inverse() * tuples[i][t]);
        gram(i, j) = thoma_tensor(stds, quot);
      }
    const double lo = min_hermitian_eigenvalue(gram);
    c.require(lo >= -1e-10, "U_3 tensor gram min eig " + std::to_string(lo));

    // trivial extension across Alt(4) in Alt(5)
    const auto ind = trivial_extension(
        [](const Perm& g) { return g(5) == 5; },
        [](const Perm&) { return std::complex<double>{1.0, 0.0}; });
    c.require(gram_psd_check(a5, ind, 1e-10), "Alt(4) indicator not PSD");

    // finite_dim_trace(tensor) = product of the traces, pointwise
    RepDomain dom(PermMarking({Perm::parse(5, "(1 2 3 4 5)"),
                               Perm::parse(5, "(1 2 3)")},
                              {"a", "b"}),
                  12);
    const auto r1 = standard_rep(dom.marking);
    const auto r2 = permutation_rep(dom.marking);
    const auto t1 = finite_dim_trace(r1, dom);
    const auto t2 = finite_dim_trace(r2, dom);
    const auto tt = finite_dim_trace(tensor_rep(r1, r2), dom);
    for (const auto& g : dom.ball.elems)
      c.require(std::abs(tt(g) - t1(g) * t2(g)) <= 1e-12,
                "tensor trace mismatch");
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

void criterion10_growth_certificates() {
  Criterion c("10 growth certificates: all emitted points re-verify; MAP <= RF pointwise");
  try {
    // MAP on the admissible instance
    std::vector<long> f(40);
    for (int i = 0; i < 40; ++i) f[i] = i + 1;
    const auto ap = admissible_params(f, 40);
    check_admissible(ap.d, ap.r, f);
    const auto bspec = DiagSpec::lamplighter(SeqRule::list(ap.d),
                                             SeqRule::list(ap.r), 3, true);
    const auto map_b = map_lower(bspec, 1, 8);
    c.require(!map_b.points.empty(), "no MAP point on the admissible instance");
    c.require(verify_map_lower(bspec, map_b), "MAP certificate fails");

    // LEF and RF on the classical instance
    const auto cspec = DiagSpec::classical(SeqRule::list({5, 7, 9, 11, 13}), 5);
    const auto lef_c = lef_upper(cspec, 6, 5);
    c.require(!lef_c.points.empty() && verify_lef_upper(cspec, lef_c),
              "LEF certificates fail");
    const auto c3 = DiagSpec::classical(SeqRule::list({5, 7, 9}), 3);
    const auto rf_c = rf_upper(c3, 3, 3);
    c.require(!rf_c.points.empty() && verify_rf_upper(c3, rf_c),
              "RF certificates fail");
    c.require(lef_c.monotone() && rf_c.monotone() && map_b.monotone(),
              "curve not monotone");

    // SR chain consumed in contrapositive; on desk instances the emitted set
    // may be empty, which verifies trivially
    const auto lef_b = lef_upper(bspec, 4, 3);
    c.require(verify_lef_upper(bspec, lef_b), "LEF certificates fail (lamp)");
    const auto sr_b = sr_lower(map_b, lef_b);
    c.require(verify_sr_lower(sr_b, map_b, lef_b), "SR certificates fail");

    // MAP_lower <= RF_upper wherever both are defined
    const auto rf_b = rf_upper(bspec, 8, 3);
    c.require(verify_rf_upper(bspec, rf_b), "RF certificates fail (lamp)");
    for (const auto& mp : map_b.points)
      for (const auto& rp : rf_b.points)
        if (mp.n == rp.n)
          c.require(std::log2(mp.value) <= rp.log2_value + 1e-9,
                    "MAP exceeds RF at n=" + std::to_string(mp.n));
  } catch (const std::exception& e) {
    c.require(false, e.what());
  }
}

}  // namespace

int main() {
  std::printf("diagprod acceptance suite\n");
  criterion1_sym_tables();
  criterion2_alt_splitting();
  criterion3_bekka_windows();
  criterion4_null_dichotomy();
  criterion5_limit_products();
  criterion6_wn_witnesses();
  criterion7_chabauty();
  criterion8_stability();
  criterion9_trace_algebra();
  criterion10_growth_certificates();
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
