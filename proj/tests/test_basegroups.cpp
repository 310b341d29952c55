#include <random>
#include <stdexcept>

#include "diagprod/basegroups.hpp"
#include "doctest.h"

using namespace diagprod;

namespace {

LampElement random_lamp(std::mt19937& rng) {
  LampElement e;
  e.shift = static_cast<long>(rng() % 7) - 3;
  for (int i = 0; i < 3; ++i) {
    const long j = static_cast<long>(rng() % 9) - 4;
    const int v = static_cast<int>(rng() % 3);
    if (v) e.lamps[j] = v;
  }
  return e;
}

AZElement random_az(std::mt19937& rng) {
  AZElement e;
  e.shift = static_cast<long>(rng() % 7) - 3;
  // random even permutation of a small window: product of two 3-cycles
  for (int rep = 0; rep < 2; ++rep) {
    long a = static_cast<long>(rng() % 9) - 4;
    long b = static_cast<long>(rng() % 9) - 4;
    long c = static_cast<long>(rng() % 9) - 4;
    if (a == b || b == c || a == c) continue;
    e.perm = e.perm * WindowPerm::cycle({a, b, c});
  }
  return e;
}

}  // namespace

TEST_SUITE("basegroups") {
  TEST_CASE("lamplighter group axioms") {
    const auto a = LampElement::alpha();
    const auto b = LampElement::beta();
    CHECK(lamp_mul(b, lamp_mul(b, b)).is_identity());
    CHECK(lamp_mul(a, lamp_inv(a)).is_identity());

    // lamps at distinct positions commute: [a b a^-1, b] = e
    const auto conj = lamp_mul(lamp_mul(a, b), lamp_inv(a));
    const auto comm = lamp_mul(lamp_mul(lamp_inv(conj), lamp_inv(b)),
                               lamp_mul(conj, b));
    CHECK(comm.is_identity());

    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_lamp(rng), y = random_lamp(rng), z = random_lamp(rng);
      CHECK(lamp_mul(lamp_mul(x, y), z) == lamp_mul(x, lamp_mul(y, z)));
      CHECK(lamp_mul(x, lamp_inv(x)).is_identity());
      CHECK(lamp_mul(lamp_inv(x), x).is_identity());
    }
  }

  TEST_CASE("A(Z) group axioms and realization") {
    const auto s = AZElement::shift_gen();
    const auto t = AZElement::tau();
    CHECK(az_mul(t, az_mul(t, t)).is_identity());
    CHECK(az_mul(s, az_inv(s)).is_identity());

    // conjugating the 3-cycle (-1,0,1) by the shift gives (0,1,2)
    const auto conj = az_mul(az_mul(s, t), az_inv(s));
    CHECK(conj.shift == 0);
    CHECK(conj.perm == WindowPerm::cycle({0, 1, 2}));

    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_az(rng), y = random_az(rng), z = random_az(rng);
      CHECK(az_mul(az_mul(x, y), z) == az_mul(x, az_mul(y, z)));
      CHECK(az_mul(x, az_inv(x)).is_identity());
      // the realized permutations compose
      for (long j = -6; j <= 6; ++j)
        CHECK(az_mul(x, y).act(j) == x.act(y.act(j)));
    }
  }

  TEST_CASE("theta_lamp generator images") {
    for (int d : {5, 7, 11}) {
      for (int r = 1; 2 * r <= d - 1; ++r) {
        CHECK(theta_lamp(LampElement::alpha(), d, r) == neumann_alpha(d));
        CHECK(theta_lamp(LampElement::beta(), d, r) == neumann_beta(d, r));
      }
      CHECK(theta_lamp(LampElement{}, d, 1).is_identity());
    }
    // images are even
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
      const auto g = random_lamp(rng);
      CHECK(theta_lamp(g, 11, 3).is_even());
    }
  }

  TEST_CASE("theta_az generator images and window") {
    for (int d : {5, 7, 9}) {
      CHECK(theta_az(AZElement::shift_gen(), d) == neumann_alpha(d));
      // the 3-cycle on residues of (-1, 0, 1): d -> 1 -> 2 -> d
      const Perm img = theta_az(AZElement::tau(), d);
      CHECK(img(d) == 1);
      CHECK(img(1) == 2);
      CHECK(img(2) == d);
      CHECK(img.support().size() == 3);
      CHECK(theta_az(AZElement{}, d).is_identity());
    }
    // support outside the open window (-floor(d/2), floor(d/2)) is rejected
    AZElement wide;
    wide.perm = WindowPerm::cycle({-3, 0, 3});
    CHECK(theta_az(wide, 7).is_even());
    AZElement wider;
    wider.perm = WindowPerm::cycle({0, 1, 4});
    CHECK_THROWS_AS(theta_az(wider, 7), SupportTooWide);

    std::mt19937 rng(5);
    for (int i = 0; i < 30; ++i) {
      const auto g = random_az(rng);
      CHECK(theta_az(g, 31).is_even());
    }
  }

  TEST_CASE("encode_alternating on cyclic groups") {
    // Z/5Z with theta(1) = 1: full 5-cycle and the 3-cycle (4, 0, 1)
    auto mul5 = [](int a, int b) { return (a + b) % 5; };
    const auto m5 = encode_alternating(5, mul5, 0, {{"s", 1}});
    REQUIRE(m5.labels.size() == 2);
    CHECK(m5.perms[0] == neumann_alpha(5));
    // 3-cycle (theta(s^-1), theta(e), theta(s)) = (4, 0, 1) as points (5,1,2)
    CHECK(m5.perms[1] == Perm::from_cycles(5, {{5, 1, 2}}));

    // Z/7Z analog via the left-multiplication table
    auto mul7 = [](int a, int b) { return (a + b) % 7; };
    const auto m7 = encode_alternating(7, mul7, 0, {{"s", 1}});
    CHECK(m7.perms[0] == neumann_alpha(7));
    CHECK(m7.perms[1] == Perm::from_cycles(7, {{7, 1, 2}}));

    // parity violation: left multiplication by the generator of Z/4Z is a
    // 4-cycle, an odd permutation
    auto mul4 = [](int a, int b) { return (a + b) % 4; };
    CHECK_THROWS_AS(encode_alternating(4, mul4, 0, {{"s", 1}}),
                    std::domain_error);

    // trivial generator image: both permutations collapse to the identity
    const auto mtriv = encode_alternating(5, mul5, 0, {{"s", 0}});
    CHECK(mtriv.perms[0].is_identity());
    CHECK(mtriv.perms[1].is_identity());
  }

  TEST_CASE("multiplicativity radius") {
    ThetaFamily classical{BaseKind::ClassicalAZ, {5, 7, 9, 11, 13}, {}};
    // radius 0: only the identity, multiplicative everywhere
    CHECK(multiplicativity_radius(classical, 0, 5) == 1);
    // generator pairs already multiply correctly at d = 5
    CHECK(multiplicativity_radius(classical, 1, 5) == 1);
    // larger radius: small levels wrap, large ones are fine
    const auto n2 = multiplicativity_radius(classical, 2, 5);
    REQUIRE(n2.has_value());
    CHECK(*n2 > 1);

    // radius far beyond what the configured levels support
    ThetaFamily tiny{BaseKind::ClassicalAZ, {5}, {}};
    CHECK(!multiplicativity_radius(tiny, 4, 1).has_value());

    // lamplighter family with growing r
    ThetaFamily lamp{BaseKind::Lamplighter, {5, 17, 47}, {1, 5, 15}};
    CHECK(multiplicativity_radius(lamp, 1, 3) == 1);
    const auto ln2 = multiplicativity_radius(lamp, 2, 3);
    REQUIRE(ln2.has_value());

    // n0 is non-decreasing in the radius
    std::optional<int> prev = 1;
    for (int rad = 0; rad <= 2; ++rad) {
      const auto n0 = multiplicativity_radius(classical, rad, 5);
      REQUIRE(n0.has_value());
      CHECK(*n0 >= *prev);
      prev = n0;
    }
  }
}
