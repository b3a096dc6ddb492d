#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pform/bounds.hpp"

using namespace pform;

TEST_CASE("beta table values") {
  Prime p3(3), p11(11), p13(13), p2(2), p5(5);
  CHECK(beta_upper(1, p3) == 4);
  CHECK(beta_upper(2, p3) == 8);
  CHECK(beta_upper(7, p2) == 84);
  CHECK(beta_upper(8, p3) == 112);   // 2*64 - 16
  CHECK(beta_upper(8, p11) == 104);  // 2*64 - 2*8 - 8
  CHECK(beta_upper(546, p13) == 595132);
  CHECK(beta_upper(544, p5) == 591856);
  CHECK(beta_upper(480, p2) == 460784);
  CHECK(beta_upper(12, p5) == 272);
  CHECK(beta_upper(3, p11) == 12);
  CHECK(beta_upper(5, p11) == 32);
  CHECK(beta_upper(5, p5) == 40);
  SUBCASE("subspace penalty") {
    CHECK(beta_upper(6, p2, 4) == 56 + 7 * 4);  // the r=7 derivation
    CHECK(beta_upper(1, p2, 0) == 4);
  }
}

TEST_CASE("beta table regenerates from the rewrite rules") {
  for (bool large : {false, true}) {
    auto table = regenerate_beta_table(large, 600);
    Prime p(large ? 11 : 2);
    for (std::int64_t r = 1; r <= 600; ++r) {
      CAPTURE(large);
      CAPTURE(r);
      CHECK(table[r] == beta_upper(r, p));
    }
  }
}

TEST_CASE("large-p beta never exceeds small-p except at the documented r") {
  Prime small(2), large(11);
  for (std::int64_t r = 3; r <= 600; ++r) {
    if (r == 5) {
      CHECK(beta_upper(r, large) == 32);
      CHECK(beta_upper(r, small) == 40);
      continue;
    }
    if (r == 4 || r == 6) {
      CHECK(beta_upper(r, large) == beta_upper(r, small));
      continue;
    }
    CHECK(beta_upper(r, large) <= beta_upper(r, small));
  }
}

TEST_CASE("phi table") {
  CHECK(phi(4, Prime(2)) == 15);
  CHECK(phi(4, Prime(5)) == 16);
  CHECK(phi(4, Prime(13)) == 12);
  CHECK(phi(4, Prime(29)) == 12);
  CHECK(phi(4, Prime(3)) == 8);
  CHECK(phi(4, Prime(7)) == 8);
  CHECK(phi(3, Prime(7)) == 6);   // 7 = 1 mod 3
  CHECK(phi(3, Prime(2)) == 3);   // 2 = 2 mod 3
  CHECK(phi(3, Prime(5)) == 3);
  CHECK(phi(3, Prime(3)) == 4);
}

TEST_CASE("degree-lowering step") {
  SUBCASE("quartic profile at p = 13") {
    SystemProfile s{Prime(13), 4, {0, 0, 0, 1}};
    WooleyStep step = wooley_step(s);
    CHECK(step.additive_constant == 12);
    CHECK(step.profile.count(4) == 0);
    CHECK(step.profile.count(3) == 12);
    CHECK(step.profile.count(2) == 78);
    CHECK(step.profile.count(1) == 364);
  }
  SUBCASE("cubic profile at p = 2") {
    SystemProfile s{Prime(2), 3, {0, 0, 1}};
    WooleyStep step = wooley_step(s);
    CHECK(step.additive_constant == 3);
    CHECK(step.profile.count(3) == 0);
    CHECK(step.profile.count(2) == 3);
    CHECK(step.profile.count(1) == 6);
  }
  SUBCASE("improved variant drops only the constant") {
    SystemProfile s{Prime(13), 4, {5, 4, 3, 2}};
    CHECK(wooley_step_improved(s).counts == wooley_step(s).profile.counts);
  }
  SUBCASE("no top-degree form") {
    SystemProfile s{Prime(5), 4, {1, 1, 1, 0}};
    CHECK_THROWS_AS(wooley_step(s), std::invalid_argument);
  }
}

TEST_CASE("strip_linear") {
  SystemProfile s{Prime(7), 3, {3, 2, 1}};
  auto [rest, r1] = strip_linear(s);
  CHECK(r1 == 3);
  CHECK(rest.count(1) == 0);
  CHECK(rest.count(2) == 2);
  auto [again, zero] = strip_linear(rest);
  CHECK(zero == 0);
  CHECK(again.counts == rest.counts);
}

TEST_CASE("cubic-system bounds") {
  SUBCASE("published improved-chain values") {
    CHECK(v3_bound(5, 21, 56, Prime(2), V3Variant::chain_subspace_start).value == 9126);
    CHECK(v3_bound(12, 78, 364, Prime(13), V3Variant::chain_subspace_start).value == 611930);
  }
  SUBCASE("degenerate head a=1, b=c=0") {
    auto r = v3_bound(1, 0, 0, Prime(7), V3Variant::chain_subspace_start);
    CHECK(r.value == 9);  // matches the cubic theorem v_3 = 9
  }
  SUBCASE("traces replay") {
    for (auto variant : {V3Variant::chain_with_linear_head, V3Variant::chain,
                         V3Variant::chain_subspace_start}) {
      auto r = v3_bound(4, 7, 11, Prime(5), variant);
      CHECK(replay_trace(r.trace));
      CHECK(r.trace.final_value() == r.value);
    }
  }
}

TEST_CASE("quartic bounds reproduce every published number") {
  SUBCASE("full chain") {
    auto r2 = v4_bound(Prime(2), V4Method::full_chain);
    CHECK(r2.value == 477724);
    auto r5 = v4_bound(Prime(5), V4Method::full_chain);
    CHECK(r5.value == 612320);
    auto r13 = v4_bound(Prime(13), V4Method::full_chain);
    CHECK(r13.value == 623426);
    CHECK(replay_trace(r2.trace));
    CHECK(replay_trace(r5.trace));
    CHECK(replay_trace(r13.trace));

    // Intermediates pinned from the chains.
    auto has_step = [](const BoundResult& r, const std::string& rule,
                       std::int64_t value) {
      for (const auto& s : r.trace.steps) {
        if (s.rule == rule && s.output == value) return true;
      }
      return false;
    };
    CHECK(has_step(r2, "quartic-chain-quadratic-count", 480));
    CHECK(has_step(r2, "beta-bound", 460784));
    CHECK(has_step(r2, "quartic-chain-constant", 16940));
    CHECK(has_step(r5, "quartic-chain-quadratic-count", 544));
    CHECK(has_step(r5, "beta-bound", 591856));
    CHECK(has_step(r5, "quartic-chain-constant", 20464));
    CHECK(has_step(r13, "quartic-chain-quadratic-count", 546));
    CHECK(has_step(r13, "beta-bound", 595132));
    CHECK(has_step(r13, "quartic-chain-constant", 28294));
  }
  SUBCASE("hybrid") {
    CHECK(v4_bound(Prime(3), V4Method::hybrid).value == 128);
    CHECK(v4_bound(Prime(7), V4Method::hybrid).value == 128);
    CHECK(v4_bound(Prime(11), V4Method::hybrid).value == 120);
    CHECK(v4_bound(Prime(5), V4Method::hybrid).value == 312);
    CHECK_THROWS_AS(v4_bound(Prime(2), V4Method::hybrid), std::invalid_argument);
  }
  SUBCASE("improved chain") {
    CHECK(v4_bound(Prime(2), V4Method::improved_chain).value == 9126);
    CHECK(v4_bound(Prime(13), V4Method::improved_chain).value == 611930);
  }
  SUBCASE("full chain equals one explicit step plus the cubic chain") {
    for (std::uint32_t pv : {2u, 3u, 5u, 7u, 11u, 13u}) {
      Prime p(pv);
      SystemProfile quartic{p, 4, {0, 0, 0, 1}};
      WooleyStep step = wooley_step(quartic);
      auto [profile, r1] = strip_linear(step.profile);
      auto tail = v3_bound(profile.count(3), profile.count(2), 0, p,
                           V3Variant::chain_with_linear_head);
      std::int64_t composed = step.additive_constant + tail.value + r1;
      CHECK(composed == v4_bound(p, V4Method::full_chain).value);
    }
  }
}

TEST_CASE("bound monotonicity in each count") {
  Prime p(5);
  for (std::int64_t a = 1; a <= 6; ++a) {
    for (std::int64_t b = 0; b <= 30; b += 10) {
      for (std::int64_t c = 0; c <= 30; c += 15) {
        auto base = v3_bound(a, b, c, p, V3Variant::chain_subspace_start).value;
        CHECK(v3_bound(a + 1, b, c, p, V3Variant::chain_subspace_start).value >= base);
        CHECK(v3_bound(a, b + 1, c, p, V3Variant::chain_subspace_start).value >= base);
        CHECK(v3_bound(a, b, c + 1, p, V3Variant::chain_subspace_start).value >= base);
      }
    }
  }
}

TEST_CASE("checked arithmetic") {
  CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), std::overflow_error);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
  CHECK(binomial_i64(14, 3) == 364);
  CHECK_THROWS_AS(exact_div(7, 2), std::logic_error);
}

TEST_CASE("bounds table matches the golden file") {
  std::ifstream golden(std::string(PFORM_GOLDEN_DIR) + "/bounds_table.golden");
  REQUIRE(golden.good());
  std::stringstream buf;
  buf << golden.rdbuf();
  CHECK(bounds_table() == buf.str());
}
