#include <stdexcept>

#include "diagprod/marked.hpp"
#include "doctest.h"

using namespace diagprod;

TEST_SUITE("marked") {
  TEST_CASE("ball basics") {
    PermMarking alt5({Perm::parse(5, "(1 2 3 4 5)"), Perm::parse(5, "(1 2 3)")},
                     {"a", "b"});
    const auto b0 = ball(alt5, 0);
    CHECK(b0.elems.size() == 1);
    CHECK(b0.table.word_length[0] == 0);

    // Alt(5) closes at 60 elements
    const auto b = ball(alt5, 12);
    CHECK(b.elems.size() == 60);
    CHECK(b.table.level_sizes.back() == 0);

    // |ball| non-decreasing in the radius
    std::size_t prev = 0;
    std::size_t total = 0;
    for (std::size_t s : b.table.level_sizes) {
      total += s;
      CHECK(total >= prev);
      prev = total;
    }

    // lamplighter radius-1 symmetrized ball: {e, a, a^-1, b, b^-1}
    const auto lb = ball(LampMarking{}, 1);
    CHECK(lb.elems.size() == 5);

    // budget cap raises
    CHECK_THROWS_AS(ball(LampMarking{}, 12, true, 100), BallBudgetExceeded);
  }

  TEST_CASE("BFS determinism") {
    PermMarking alt5({Perm::parse(5, "(1 2 3 4 5)"), Perm::parse(5, "(1 2 3)")},
                     {"a", "b"});
    const auto b1 = ball(alt5, 6);
    const auto b2 = ball(alt5, 6);
    CHECK(b1.table.pattern_equal(b2.table));
    CHECK(b1.table.first_word == b2.table.first_word);
    for (std::size_t i = 0; i < b1.elems.size(); ++i)
      CHECK(b1.elems[i] == b2.elems[i]);
  }

  TEST_CASE("ball isomorphism") {
    AZMarking az;
    // reflexivity
    CHECK(ball_isomorphic(az, az, 4));
    // any two markings with matching alphabet agree at radius 0
    CHECK(ball_isomorphic(az, classical_level_marking(5), 0));

    // Alt(5) classical marking vs A(Z): the relation a^5 = e separates at
    // radius 5, in particular at radius 10 the balls differ
    CHECK(!ball_isomorphic(az, classical_level_marking(5), 10));
    CHECK(!ball_isomorphic(az, classical_level_marking(5), 5));

    // mismatched marking sizes are rejected
    PermMarking one_gen({Perm::parse(5, "(1 2 3 4 5)")}, {"a"});
    CHECK_THROWS_AS(ball_isomorphic(az, one_gen, 2), std::invalid_argument);
  }

  TEST_CASE("isomorphism is monotone in the radius") {
    AZMarking az;
    const auto lm = classical_level_marking(9);
    const int r = local_embedding_radius(az, lm, 8);
    for (int n = 1; n <= r; ++n) CHECK(ball_isomorphic(az, lm, n));
    CHECK(!ball_isomorphic(az, lm, r + 1));
    // symmetry of the relation
    CHECK(ball_isomorphic(lm, az, r));
    CHECK(!ball_isomorphic(lm, az, r + 1));
  }

  TEST_CASE("local embedding radius is monotone in the level") {
    AZMarking az;
    int prev = 0;
    for (int d : {5, 7, 9, 11, 13}) {
      const int r = local_embedding_radius(az, classical_level_marking(d), 8);
      CHECK(r >= prev);
      CHECK(r == (d - 1) / 2);  // first wrap relation: a^((d+1)/2) = a^-((d-1)/2)
      prev = r;
    }
    // identical markings agree up to the horizon
    CHECK(local_embedding_radius(az, az, 5) == 5);
  }

  TEST_CASE("ball growth csv") {
    const auto b = ball(LampMarking{}, 3);
    const auto csv = ball_growth_csv(b.table);
    CHECK(csv.find("radius,size,new_elements\n0,1,1\n") == 0);
  }
}
