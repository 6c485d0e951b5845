#include <random>

#include "doctest.h"
#include "torel/atlas.hpp"
#include "torel/mcg.hpp"

using namespace torel;

namespace {

AtlasPtr std_atlas(int k) { return std::make_shared<Atlas>(standard_atlas(k)); }

const CheckResult* find_check(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs)
    if (r.name == name) return &r;
  return nullptr;
}

bool all_pass(const std::vector<CheckResult>& rs, const std::string& prefix) {
  bool ok = true;
  for (const auto& r : rs)
    if (r.name.rfind(prefix, 0) == 0) ok = ok && r.pass;
  return ok;
}

// Flips the sign of the first transverse crossing recorded for `name`.
Atlas flip_sign(const Atlas& a, const std::string& name) {
  std::vector<AtlasCurve> es = a.entries();
  for (auto& e : es) {
    if (e.name != name) continue;
    for (auto& pc : e.crossings) {
      auto* side = !pc.pre.empty() ? &pc.pre : !pc.post.empty() ? &pc.post : nullptr;
      if (!side) continue;
      (*side)[0].second = -(*side)[0].second;
      return Atlas(a.surface(), es);
    }
  }
  FAIL("no crossing to flip");
  return a;
}

Atlas replace_entry(const Atlas& a, const std::string& name, const std::string& with) {
  std::vector<AtlasCurve> es = a.entries();
  for (auto& e : es)
    if (e.name == name) {
      e = a.get(with);
      e.name = name;
    }
  return Atlas(a.surface(), es);
}

}  // namespace

TEST_CASE("twists are automorphisms fixing their curve") {
  for (int k = 1; k <= 5; ++k) {
    Realizer r(std_atlas(k));
    for (const auto& n : r.atlas().names()) {
      CAPTURE(n);
      MappingClass t = r.twist(n);
      CHECK(t.inverse_consistent());
      CHECK(compose(t, r.twist(n, -1)).is_identity());
      CHECK(t.apply(r.curve(n)) == r.curve(n));
      CHECK(determinant(homology_matrix(t)) == 1);
    }
  }
}

TEST_CASE("standard atlases pass model validation") {
  for (int k = 1; k <= 9; ++k) {
    CAPTURE(k);
    auto rs = validate_model(*std_atlas(k));
    for (const auto& c : rs) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
    CHECK(find_check(rs, "braid(a1,b)") != nullptr);
  }
}

TEST_CASE("chain relation on the one-holed torus") {
  Realizer r(std_atlas(1));
  MappingClass ab = compose(r.twist("a1"), r.twist("b"));
  CHECK(power(ab, 6) == r.twist("delta1"));
  CHECK_FALSE(power(ab, 3) == r.twist("delta1"));
}

TEST_CASE("conjugation law agrees with the embedded image curve") {
  // t_{f(c)} computed from the embedding of f(c) must equal f t_c f^-1.
  SurfaceSig s{1, 4};
  Realizer r(std_atlas(4));
  std::mt19937 rng(3);
  auto names = r.atlas().names();
  for (int t = 0; t < 40; ++t) {
    GeneratorWord g;
    for (int i = 0; i < 3; ++i)
      g.gens.push_back({names[rng() % names.size()], (rng() % 2) ? 1 : -1});
    MappingClass f = r.realize(g);
    const std::string& c = names[rng() % names.size()];
    Curve img = f.apply(r.curve(c));
    AtlasCurve ac = make_atlas_curve(s, "x", embed_word(s, img.letters));
    CHECK(twist_from_data(s, ac, 1) == conjugate(f, r.twist(c)));
  }
}

TEST_CASE("homology action is the transvection") {
  Realizer r(std_atlas(3));
  const SurfaceSig& s = r.surface();
  for (const auto& n : r.atlas().names()) {
    auto h = homology_class(s, r.atlas().get(n).word);
    CHECK(homology_matrix(r.twist(n)) == transvection(h, 1));
    CHECK(homology_matrix(r.twist(n, -2)) == transvection(h, -2));
  }
}

TEST_CASE("mutation: sign flip on b1 breaks braid(a1,b1) and the homology oracle") {
  Atlas bad = flip_sign(standard_atlas(8), "b1");
  auto rs = validate_model(bad);
  const CheckResult* br = find_check(rs, "braid(a1,b1)");
  REQUIRE(br != nullptr);
  CHECK_FALSE(br->pass);
  CHECK_FALSE(all_pass(rs, "homology(b1)"));
  CHECK_THROWS_AS(check_homology(bad), Error);
}

TEST_CASE("mutation: replacing delta1 breaks centrality") {
  Atlas bad = replace_entry(standard_atlas(3), "delta1", "b");
  auto rs = validate_model(bad);
  CHECK_FALSE(all_pass(rs, "central("));
}

TEST_CASE("mutation: disjointness violated breaks commutation") {
  Atlas bad = flip_sign(standard_atlas(4), "b");
  CHECK_FALSE(all_pass(validate_model(bad), "commute("));
}

TEST_CASE("mutation: chain check on the one-holed torus") {
  Atlas bad = flip_sign(standard_atlas(1), "b");
  const CheckResult* c = find_check(validate_model(bad), "chain((a1 b)^6 = delta1)");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->pass);
}

TEST_CASE("mutation: a repeated boundary twist is caught by the free abelian sample") {
  Atlas bad = replace_entry(standard_atlas(3), "delta2", "delta1");
  bool caught = false;
  for (const auto& r : validate_model(bad))
    if (r.name.rfind("free-abelian", 0) == 0) caught = !r.pass;
  CHECK(caught);
}
