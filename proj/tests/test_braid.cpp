#include <map>
#include <random>

#include "doctest.h"
#include "torel/braid.hpp"
#include "torel/errors.hpp"

using namespace torel;

namespace {

BraidWord random_braid(std::mt19937& rng, int d, int len) {
  std::vector<int> g;
  for (int i = 0; i < len; ++i) {
    int x = 1 + static_cast<int>(rng() % (d - 1));
    g.push_back(rng() % 2 ? x : -x);
  }
  return make_braid(d, g);
}

ArcRef random_arc(std::mt19937& rng, int d) {
  return make_arc(random_braid(rng, d, 1 + static_cast<int>(rng() % 5)), 1 + static_cast<int>(rng() % (d - 1)));
}

}  // namespace

TEST_CASE("braid and far commutation relations") {
  for (int d = 3; d <= 7; ++d) {
    for (int i = 1; i + 1 < d; ++i)
      CHECK(braid_equals(make_braid(d, {i, i + 1, i}), make_braid(d, {i + 1, i, i + 1})));
    for (int i = 1; i < d; ++i)
      for (int j = i + 2; j < d; ++j) CHECK(braid_equals(make_braid(d, {i, j}), make_braid(d, {j, i})));
  }
  CHECK_FALSE(braid_equals(make_braid(3, {1}), make_braid(3, {-1})));
  CHECK_FALSE(braid_equals(make_braid(3, {1, 2}), make_braid(3, {2, 1})));
  CHECK(braid_equals(make_braid(3, {1, -1}), identity_braid(3)));
}

TEST_CASE("the action is a homomorphism") {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto a = random_braid(rng, 5, 6), b = random_braid(rng, 5, 6);
    auto ab = artin_action(a * b);
    auto ia = artin_action(a), ib = artin_action(b);
    for (int j = 1; j <= 5; ++j) CHECK(ab[j - 1] == apply_action(ia, ib[j - 1]));
    CHECK(braid_equals(a * inverse(a), identity_braid(5)));
  }
}

TEST_CASE("the product of the generators is fixed by the action") {
  std::mt19937 rng(9);
  FreeWord top{1, 2, 3, 4};
  for (int t = 0; t < 100; ++t) CHECK(apply_action(artin_action(random_braid(rng, 4, 10)), top) == top);
}

TEST_CASE("artin action is injective on sampled braids") {
  // Oracle: the Burau matrix at a random point mod p.  It is a homomorphism,
  // so braids identified by the action must share it.
  constexpr std::uint64_t P = 1000000007ull;
  const std::uint64_t t = 123456789ull;
  using Mat = std::vector<std::vector<std::uint64_t>>;
  auto burau = [&](const BraidWord& b) {
    const int d = b.strands;
    Mat m(d, std::vector<std::uint64_t>(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    const std::uint64_t tinv = [&] {
      std::uint64_t r = 1, base = t, e = P - 2;
      for (; e; e >>= 1, base = base * base % P)
        if (e & 1) r = r * base % P;
      return r;
    }();
    for (int g : b.gens) {
      const int i = std::abs(g) - 1;
      // right multiplication by the block on rows/columns i, i+1
      std::uint64_t a, bb, c, dd;
      if (g > 0) a = (1 + P - t) % P, bb = t, c = 1, dd = 0;
      else a = 0, bb = 1, c = tinv, dd = (1 + P - tinv) % P;
      for (int r = 0; r < d; ++r) {
        std::uint64_t x = m[r][i], y = m[r][i + 1];
        m[r][i] = (x * a + y * c) % P;
        m[r][i + 1] = (x * bb + y * dd) % P;
      }
    }
    return m;
  };
  CHECK(burau(make_braid(3, {1, 2, 1})) == burau(make_braid(3, {2, 1, 2})));
  CHECK(burau(make_braid(3, {1, -1})) == burau(identity_braid(3)));

  std::mt19937 rng(13);
  std::map<std::vector<FreeWord>, Mat> seen;
  std::size_t classes = 0;
  for (int t2 = 0; t2 < 10000; ++t2) {
    auto b = random_braid(rng, 3 + t2 % 2, 1 + static_cast<int>(rng() % 12));
    auto key = artin_action(b);
    key.push_back({b.strands * 1000});
    auto m = burau(b);
    auto [it, fresh] = seen.emplace(key, m);
    if (fresh) ++classes;
    else CHECK(it->second == m);
  }
  CHECK(classes > 1000);
}

TEST_CASE("strand mismatch") {
  try {
    braid_equals(make_braid(3, {1}), make_braid(4, {1}));
    FAIL("expected StrandMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StrandMismatch);
  }
  CHECK_THROWS_AS(make_braid(3, {3}), Error);
}

TEST_CASE("half twist conjugation law") {
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    auto g = random_braid(rng, 5, 6);
    auto arc = random_arc(rng, 5);
    CHECK(braid_equals(half_twist(act(g, arc)), g * half_twist(arc) * inverse(g)));
  }
}

TEST_CASE("arc endpoints follow the carrier") {
  CHECK(arc_endpoints(make_arc(identity_braid(4), 2)) == std::pair{2, 3});
  CHECK(arc_endpoints(make_arc(make_braid(4, {2}), 1)) == std::pair{1, 3});
  // sigma_1 carries the standard arc (1,2) to itself
  CHECK(arc_equals(make_arc(make_braid(4, {1}), 1), make_arc(identity_braid(4), 1)));
  CHECK_FALSE(arc_equals(make_arc(make_braid(4, {2}), 1), make_arc(make_braid(4, {-2}), 1)));
}

TEST_CASE("six point regeneration") {
  std::mt19937 rng(21);
  for (int t = 0; t < 100; ++t) {
    SixPointInput in{random_arc(rng, 6),
                     {random_arc(rng, 6), random_arc(rng, 6), random_arc(rng, 6), random_arc(rng, 6)},
                     random_arc(rng, 6),
                     random_arc(rng, 6)};
    auto out = regenerate_six_point(in);
    const auto& g = in.gamma;
    CHECK(arc_equals(out[0], in.beta1));
    CHECK(arc_equals(out[1], in.beta));
    CHECK(arc_equals(out[5], in.beta6));
    // beta_4 from beta via gamma_1, gamma_2; beta_5 from beta_4 via gamma_3, gamma_4
    CHECK(arc_equals(out[3], inverse_half_twist(g[0], inverse_half_twist(g[1], in.beta))));
    BraidWord all = inverse(half_twist(g[0])) * inverse(half_twist(g[1])) * inverse(half_twist(g[2])) *
                    inverse(half_twist(g[3]));
    CHECK(arc_equals(out[4], act(all, in.beta)));
    CHECK(arc_equals(out[4], inverse_half_twist(g[0], inverse_half_twist(g[1], out[2]))));
  }
  // gamma_3, gamma_4 away from beta leave it alone
  SixPointInput in{make_arc(identity_braid(6), 1),
                   {make_arc(identity_braid(6), 2), make_arc(identity_braid(6), 2), make_arc(identity_braid(6), 4),
                    make_arc(identity_braid(6), 5)},
                   make_arc(identity_braid(6), 3),
                   make_arc(identity_braid(6), 5)};
  auto out = regenerate_six_point(in);
  CHECK(arc_equals(out[2], in.beta));
  CHECK_FALSE(arc_equals(out[3], in.beta));
}

TEST_CASE("two point regeneration") {
  TwoPointModel m = standard_two_point_model();
  ArcRef beta = make_arc(identity_braid(4), m.base);
  ArcRef out = regenerate_two_point(beta, m);
  // joins 1' and 2
  CHECK(arc_endpoints(out) == std::pair{2, 3});
  std::mt19937 rng(25);
  for (int t = 0; t < 50; ++t) {
    // pure braids keep the clusters where they are
    auto h = random_braid(rng, 4, 4);
    int i = 1 + static_cast<int>(rng() % 3);
    auto g = h * make_braid(4, {i, i}) * inverse(h);
    REQUIRE(braid_permutation(g) == std::vector<int>{1, 2, 3, 4});
    CHECK(arc_equals(regenerate_two_point(act(g, beta), m), act(g, out)));
  }
  TwoPointModel bad = m;
  bad.after = make_arc(identity_braid(4), 1);
  try {
    regenerate_two_point(beta, bad);
    FAIL("expected InvalidArc");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArc);
  }
  CHECK_THROWS_AS(regenerate_two_point(make_arc(identity_braid(4), 1), m), Error);
}

TEST_CASE("the f_n monodromy") {
  MonodromyRep r = fn_monodromy();
  CHECK(r.transpositions.size() == 18);
  auto c = cover_invariants(r);
  CHECK(c.connected);
  CHECK(c.euler == 0);
  CHECK(c.genus == 1);
  CHECK(c.boundary == 9);
  CHECK(total_product(r) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("small covers") {
  auto c = cover_invariants(make_monodromy(2, {{1, 2}, {1, 2}}));
  CHECK(c.connected);
  CHECK(c.euler == 2);
  CHECK(c.genus == 0);
  auto d = cover_invariants(make_monodromy(4, {{1, 2}, {1, 2}, {3, 4}, {3, 4}}));
  CHECK_FALSE(d.connected);
  CHECK(d.components == 2);
  CHECK_THROWS_AS(make_monodromy(3, {{1, 2, 3}}), Error);
  CHECK_THROWS_AS(make_monodromy(3, {{1, 4}}), Error);
  CHECK(total_product(make_monodromy(3, {{1, 2}, {2, 3}})) != std::vector<int>{1, 2, 3});
}

TEST_CASE("serialization round-trips") {
  std::mt19937 rng(29);
  for (int t = 0; t < 50; ++t) {
    auto b = random_braid(rng, 5, 7);
    CHECK(parse_braid(format_braid(b)) == b);
    auto a = random_arc(rng, 5);
    auto a2 = parse_arc(format_arc(a));
    CHECK(a2.carrier == a.carrier);
    CHECK(a2.index == a.index);
  }
  MonodromyRep r = fn_monodromy();
  auto r2 = parse_monodromy(format_monodromy(r));
  CHECK(r2.transpositions == r.transpositions);
  CHECK(parse_monodromy("n 9\n(12)\n(79)\n").transpositions[1] == std::pair{7, 9});
  CHECK_THROWS_AS(parse_monodromy("n 3\n(1 2 3)\n"), Error);
  CHECK_THROWS_AS(parse_braid("1 2"), Error);
}
