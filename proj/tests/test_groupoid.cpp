#include <doctest.h>

#include "ggd/core.hpp"
#include "ggd/presets.hpp"
#include "helpers.hpp"

using namespace ggd;
using namespace ggd::testing;

TEST_CASE("unit groupoid validates and has identity structure") {
  auto g = unit_groupoid({"a", "b"});
  CHECK(validate_groupoid(g).ok());
  CHECK(g.n_objects() == 2);
  CHECK(g.n_arrows() == 2);
  CHECK(g.comp_at(0, 0) == 0);
  CHECK(g.comp_at(0, 1) == -1);

  auto empty = unit_groupoid({});
  CHECK(validate_groupoid(empty).ok());
  CHECK(empty.n_objects() == 0);

  auto one = unit_groupoid({"a"});
  CHECK(one.n_arrows() == 1);
}

TEST_CASE("action groupoid of the swap action validates") {
  auto g = shift_action_groupoid(2, 2);
  CHECK(validate_groupoid(g).ok());
  CHECK(g.n_objects() == 2);
  CHECK(g.n_arrows() == 4);  // |G| * |X|
  CHECK(is_transitive(g));

  SUBCASE("trivial action splits into orbits") {
    auto t = action_groupoid(cyclic_group(2), {"0", "1"}, {0, 1, 0, 1});
    CHECK(validate_groupoid(t).ok());
    CHECK(orbits(t).size() == 2);
    CHECK_FALSE(is_transitive(t));
  }

  SUBCASE("trivial group gives the unit groupoid shape") {
    auto t = action_groupoid(cyclic_group(1), {"x"}, {0});
    CHECK(t.n_arrows() == 1);
    CHECK(validate_groupoid(t).ok());
  }

  SUBCASE("a non-action is rejected with a witness") {
    // act(r1, .) not an involution: breaks act(r1+r1, x) = act(r1, act(r1, x))
    CHECK_THROWS_WITH_AS(action_groupoid(cyclic_group(2), {"0", "1"}, {0, 1, 1, 1}),
                         doctest::Contains("NotAnAction"), Error);
  }
}

TEST_CASE("deleting a composite is reported as missing") {
  auto g = shift_action_groupoid(2, 2);
  g.comp[0] = -1;  // comp((e|0), (e|0))
  auto report = validate_groupoid(g);
  CHECK_FALSE(report.ok());
  CHECK(report.has("missing-composite"));
}

TEST_CASE("isotropy groups") {
  SUBCASE("unit groupoid has trivial isotropy") {
    auto g = unit_groupoid({"a", "b"});
    CHECK(isotropy_group(g, 0).n() == 1);
  }
  SUBCASE("one-object groupoid recovers its group") {
    auto g = one_object_groupoid(cyclic_group(4));
    auto k = isotropy_group(g, 0);
    CHECK(k.n() == 4);
    CHECK(validate_group(k).ok());
    CHECK(k.mul_at(1, 1) == 2);
  }
  SUBCASE("swap action groupoid has trivial isotropy at 0") {
    auto g = shift_action_groupoid(2, 2);
    auto k = isotropy_group(g, g.object_index("0"));
    CHECK(k.n() == 1);
  }
  SUBCASE("unknown object throws") {
    auto g = unit_groupoid({"a"});
    CHECK_THROWS_AS(isotropy_group(g, 7), Error);
  }
}

TEST_CASE("orbits and transitivity") {
  auto u2 = unit_groupoid({"a", "b"});
  auto blocks = orbits(u2);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == std::vector<int>{0});
  CHECK_FALSE(is_transitive(u2));

  CHECK(is_transitive(one_object_groupoid(cyclic_group(3))));
  CHECK(is_transitive(unit_groupoid({})));  // by convention

  // transitivity agrees with the orbit count on a random corpus
  std::mt19937 rng(7);
  for (int i = 0; i < 20; ++i) {
    auto g = random_groupoid(rng);
    CHECK(is_transitive(g) == (orbits(g).size() <= 1));
  }
}

TEST_CASE("every isotropy group of a valid groupoid passes group validation") {
  std::mt19937 rng(11);
  for (int i = 0; i < 15; ++i) {
    auto g = random_groupoid(rng);
    REQUIRE(validate_groupoid(g).ok());
    for (int x = 0; x < g.n_objects(); ++x)
      CHECK(validate_group(isotropy_group(g, x)).ok());
  }
}

TEST_CASE("action groupoid arrow count identity") {
  std::mt19937 rng(3);
  for (int n : {1, 2, 3, 4}) {
    auto k = cyclic_group(n);
    for (int m : {1, 2}) {
      if (n % m != 0) continue;
      auto g = shift_action_groupoid(n, m);
      CHECK(g.n_arrows() == n * m);
      CHECK(validate_groupoid(g).ok());
    }
  }
  (void)rng;
}

TEST_CASE("opposite groupoid is a valid groupoid") {
  auto g = shift_action_groupoid(4, 2);
  auto op = opposite_groupoid(g);
  CHECK(validate_groupoid(op).ok());
  CHECK(op.src == g.tgt);
}
