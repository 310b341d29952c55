#include <random>
#include <stdexcept>

#include "diagprod/diagonal.hpp"
#include "diagprod/growth.hpp"
#include "diagprod/marked.hpp"
#include "doctest.h"

using namespace diagprod;

namespace {

DiagSpec classical579() {
  return DiagSpec::classical(SeqRule::list({5, 7, 9}), 3);
}

DiagSpec bradford_small() {
  // a genuinely admissible family, deep enough that witness verification at
  // continuation levels runs over explicitly checked values
  std::vector<long> f(40);
  for (int i = 0; i < 40; ++i) f[i] = i + 1;
  const auto ap = admissible_params(f, 40);
  return DiagSpec::lamplighter(SeqRule::list(ap.d), SeqRule::list(ap.r), 3, true);
}

Word random_word(std::mt19937& rng, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % 4));
  return w;
}

}  // namespace

TEST_SUITE("diagonal") {
  TEST_CASE("from_word basics") {
    const auto spec = classical579();
    const auto e = from_word(spec, {});
    CHECK(e == diag_identity(spec));
    CHECK(in_kernel(e));

    const auto a = from_word(spec, parse_word("s", spec.gen_labels()));
    CHECK(tail_map(a) == BaseElement(AZElement::shift_gen()));
    for (int m = 1; m <= 3; ++m)
      CHECK(a.coords[m - 1] == neumann_alpha(static_cast<int>(spec.d_at(m))));
    CHECK(!in_kernel(a));

    // commutator word evaluates coordinatewise
    const auto w = parse_word("s t s' t'", spec.gen_labels());
    const auto c = from_word(spec, w);
    for (int m = 1; m <= 3; ++m) {
      const Perm al = spec.gen_image(m, 0), be = spec.gen_image(m, 1);
      CHECK(c.coords[m - 1] == al * be * al.inverse() * be.inverse());
    }
  }

  TEST_CASE("group laws and equality") {
    const auto spec = classical579();
    std::mt19937 rng(21);
    for (int i = 0; i < 30; ++i) {
      const auto u = random_word(rng, 3), v = random_word(rng, 4);
      const auto a = from_word(spec, u), b = from_word(spec, v);
      CHECK(mul(spec, a, inv(spec, a)) == diag_identity(spec));
      // tail map is a homomorphism
      CHECK(base_mul(tail_map(a), tail_map(b)) == tail_map(mul(spec, a, b)));
      // same word built two ways
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      CHECK(from_word(spec, uv) == mul(spec, a, b));
    }
  }

  TEST_CASE("splitting Gamma = U_n x Gamma_{n+1}") {
    const auto spec = classical579();
    std::mt19937 rng(33);
    for (int i = 0; i < 20; ++i) {
      const auto a = from_word(spec, random_word(rng, 5));
      for (int n = 0; n <= 3; ++n) {
        const auto head = embed_Un(spec, project_Un(a, n));
        const auto rest = project_Gamma_n(a, n + 1);
        CHECK(mul(spec, head, rest) == a);
        CHECK(mul(spec, rest, head) == a);  // the factors commute
      }
      CHECK(project_Un(a, 0).empty());
      CHECK(project_Gamma_n(a, 1) == a);
    }
    CHECK(project_Un(diag_identity(spec), 2) ==
          std::vector<Perm>{Perm(5), Perm(7)});
  }

  TEST_CASE("phi_section") {
    const auto spec = classical579();
    // Phi_1 of a generator is the diagonal generator
    const auto s = spec.base_gen(0);
    CHECK(phi_section(spec, s, 1) ==
          from_word(spec, parse_word("s", spec.gen_labels())));
    CHECK(phi_section(spec, spec.base_identity(), 2) == diag_identity(spec));

    // t(Phi_n(g)) = g, coords below n trivial
    const auto g = az_mul(AZElement::tau(), AZElement::shift_gen());
    const auto p = phi_section(spec, g, 2);
    CHECK(tail_map(p) == BaseElement(g));
    CHECK(p.coords[0].is_identity());
    CHECK(p.coords[1] == spec.theta(2, g));

    // support too wide for the first window (|j| > floor(5/2))
    AZElement wide;
    wide.perm = WindowPerm::cycle({-3, 0, 3});
    CHECK_THROWS_AS(phi_section(spec, wide, 1), SupportTooWide);

    // t(Phi_n(g)) = g across the whole radius-3 ball, past the first window
    const auto base_ball = ball(AZMarking{}, 3);
    for (const auto& el : base_ball.elems) {
      const auto sect = phi_section(spec, el, 2);
      CHECK(tail_map(sect) == BaseElement(el));
      CHECK(sect.coords[0].is_identity());
      CHECK(sect.coords[1] == spec.theta(2, el));
      CHECK(sect.coords[2] == spec.theta(3, el));
    }
  }

  TEST_CASE("pi_k endomorphisms") {
    const auto spec = classical579();
    // kernel elements via commutators that vanish in the tail
    const auto w16 = parse_word("s s s t s' s' s' t s s s t' s' s' s' t'",
                                spec.gen_labels());
    const auto a = from_word(spec, w16);
    REQUIRE(in_kernel(a));

    CHECK(pi_k(spec, a, 3) == a);  // nothing beyond the last level
    const auto p1 = pi_k(spec, a, 1);
    CHECK(p1.coords[0] == a.coords[0]);
    CHECK(p1.coords[1] == a.coords[0].extended(7));
    CHECK(p1.coords[2] == a.coords[0].extended(9));

    // pi_k(identity) = identity; U_k elements with trivial k-th coordinate fix
    CHECK(pi_k(spec, diag_identity(spec), 2) == diag_identity(spec));
    auto u = embed_Un(spec, {Perm::parse(5, "(1 2 3)"), Perm(7)});
    CHECK(pi_k(spec, u, 2) == u);

    // multiplicative on kernel pairs
    const auto b = inv(spec, a);
    CHECK(pi_k(spec, mul(spec, a, b), 2) ==
          mul(spec, pi_k(spec, a, 2), pi_k(spec, b, 2)));

    // stabilization: pi_k(x) = x once k passes the largest nontrivial coord
    CHECK(pi_k(spec, u, 2) == u);
    CHECK(pi_k(spec, u, 3) == u);

    // domain violation
    const auto s = from_word(spec, parse_word("s", spec.gen_labels()));
    CHECK_THROWS_AS(pi_k(spec, s, 1), std::domain_error);
    CHECK_THROWS_AS(pi_k(spec, s, 1, true), std::domain_error);

    // widened domain accepts finitary tails
    const auto t = from_word(spec, parse_word("t", spec.gen_labels()));
    const auto pt = pi_k(spec, t, 2, true);
    CHECK(pt.coords[1] == t.coords[1]);
    CHECK(pt.coords[2] == t.coords[1].extended(9));
  }

  TEST_CASE("find_wn on the admissible instance") {
    const auto spec = bradford_small();
    // level 1: the admissible-family bound 4 + 4 r(1) = 8 is attained
    const auto w = find_wn(spec, 1, 8);
    REQUIRE(w.has_value());
    CHECK(w->length == 8);
    CHECK(verify_witness(spec, *w));

    // no witness within radius 6
    CHECK(!find_wn(spec, 1, 6).has_value());
  }

  TEST_CASE("find_wn NotFound on the inadmissible classical instance") {
    // beta coincides across all levels, so the 4+4r(n) guarantee for
    // admissible families does not apply; radius 8 is exhaustively empty
    const auto spec = classical579();
    for (int level = 1; level <= 3; ++level)
      CHECK(!find_wn(spec, level, 8).has_value());
  }

  TEST_CASE("find_wn classical level-1 witness at its true radius") {
    const auto spec = classical579();
    const auto w = find_wn(spec, 1, 16);
    REQUIRE(w.has_value());
    CHECK(w->length == 16);
    CHECK(verify_witness(spec, *w));
    const auto e = from_word(spec, w->word);
    CHECK(in_kernel(e));
    CHECK(!e.coords[0].is_identity());
    CHECK(e.coords[1].is_identity());
    CHECK(e.coords[2].is_identity());

    // single-coordinate support: the witness commutes with everything
    // supported at the other coordinates
    for (const auto& other :
         {embed_Un(spec, {Perm(5), Perm::parse(7, "(1 2 3)")}),
          embed_Un(spec, {Perm(5), Perm(7), Perm::parse(9, "(2 4 6)")})}) {
      CHECK(mul(spec, e, other) == mul(spec, other, e));
    }
  }

  TEST_CASE("horizon certificates") {
    const auto spec = classical579();
    // analytic certificate: level m certified iff d(m) >= 4B + 1
    CHECK(spec.level_certified(1, 0));
    CHECK(spec.level_certified(1, 1));    // d=5 >= 5
    CHECK(!spec.level_certified(1, 2));   // d=5 < 9
    CHECK(spec.certified_from(1) == 1);
    CHECK(spec.certified_from(2) == 3);   // first d >= 9
    CHECK(spec.certified_from(16).has_value());

    // the exhaustive checker agrees within its horizon: at the analytic
    // level everything is multiplicative
    ThetaFamily fam{BaseKind::ClassicalAZ, {5, 7, 9, 11, 13, 15, 17, 19}, {}};
    for (int B = 1; B <= 2; ++B) {
      const auto exhaustive = multiplicativity_radius(fam, B, 8);
      const auto analytic = spec.certified_from(B);
      REQUIRE(exhaustive.has_value());
      REQUIRE(analytic.has_value());
      CHECK(*exhaustive <= *analytic);
    }

    // lamplighter without the admissibility promise cannot certify
    const auto lamp = DiagSpec::lamplighter(SeqRule::list({5, 17, 47}),
                                            SeqRule::list({1, 5, 15}), 3, false);
    CHECK(!lamp.certified_from(1).has_value());
    CHECK_THROWS_AS(from_word(lamp, {0}), HorizonError);

    // with the promise the same data is fine
    CHECK(from_word(bradford_small(), {0}).budget == 1);
    // generated families start at the hand-checked prefix
    const auto spec2 = bradford_small();
    CHECK(spec2.d_at(1) == 5);
    CHECK(spec2.r_at(1) == 1);
    CHECK(spec2.d_at(2) == 17);
    CHECK(spec2.r_at(2) == 5);
  }

  TEST_CASE("diag ball growth matches the base group at small radius") {
    const auto spec = classical579();
    DiagMarking m(spec);
    const auto b = ball(m, 2);
    const auto base = ball(AZMarking{}, 2);
    CHECK(b.table.pattern_equal(base.table));
  }
}
