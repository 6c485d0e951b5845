// One PASS/FAIL line per acceptance criterion.  Exit status 1 if any fails.
#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "torel/braid.hpp"
#include "torel/catalog.hpp"

using namespace torel;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

RealizerPtr std_realizer(int k) {
  return std::make_shared<const Realizer>(std::make_shared<Atlas>(standard_atlas(k)));
}

Factorization sub(const RealizerPtr& r, const std::vector<std::string>& names) {
  std::vector<TwistFactor> fs;
  for (const auto& n : names) fs.push_back({n, {}});
  return Factorization(r, fs, {});
}

bool certified(const Factorization& f, const Factorization& g, std::size_t max_steps) {
  BuiltinResolver res;
  SearchOptions opt;
  opt.rotations = false;
  opt.max_depth = static_cast<int>(max_steps);
  auto r = search_equivalence(f, g, 100000, opt, res);
  if (!r.found || r.script.steps.size() > max_steps) return false;
  Factorization x = f;
  for (const auto& st : r.script.steps)
    x = hurwitz_move(x, st.index, st.kind == Step::Kind::L ? Side::Left : Side::Right);
  return factorwise_equal(x, g);
}

Verdict table_rows(Catalog& cat) {
  Verdict v;
  const std::vector<std::pair<std::string, std::string>> printed = {
      {"N9", "a1 b1 b2 b3 a4 b4 b5 b6 a7 b7 b8 b9"}, {"S8", "a1 b1 b2 a3 b3 b4 a5 b5 b6 a7 b7 b8"},
      {"N8", "a1 b1 a2 b2 b3 a4 b4 b5 b6 a7 b7 b8"}, {"N7", "a1 b1 a2 b2 a3 b3 b4 a5 b5 b6 a7 b7"},
      {"N6", "a1 b1 a2 b2 a3 b3 a4 b4 a5 b5 a6 b6"}, {"N5", "a1 a1 b1 a2 a2 b2 a3 b3 a4 b4 a5 b5"},
      {"N4", "a1 a1 b1 a2 a2 b2 a3 a3 b3 a4 a4 b4"}, {"N3", "a1 a1 a1 b1 a2 a2 a2 b2 a3 a3 a3 b3"},
      {"N2", "a1 b a2 a1 b a2 a1 b a2 a1 b a2"},     {"N1", "a1 b a1 b a1 b a1 b a1 b a1 b"}};
  auto t0 = Clock::now();
  for (const auto& [name, row] : printed) {
    Factorization f = cat.relation(name);
    if (format_factors(f) != row) v.fail(name + " differs from the printed row");
    if (!is_relation(f)) v.fail(name + " is not a relation");
  }
  double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s >= 5.0) v.fail("took " + std::to_string(s) + " s");
  std::ostringstream os;
  os.precision(3);
  os << "10 rows in " << s << " s";
  if (v.ok) v.note = os.str();
  return v;
}

Verdict lemma() {
  Verdict v;
  int checked = 0;
  for (int k = 3; k <= 9; ++k) {
    auto r = std_realizer(k);
    auto a = [&](int i) { return "a" + std::to_string((i - 1) % k + 1); };
    for (int i = 1; i <= k; ++i) {
      std::string bi = "b" + std::to_string(i), tag = " k=" + std::to_string(k) + " i=" + std::to_string(i);
      auto tb = r->twist("b"), tbi = r->twist(bi), ta = r->twist(a(i));
      if (!(compose(tb, tbi) == compose(tbi, tb)) || !certified(sub(r, {"b", bi}), sub(r, {bi, "b"}), 3))
        v.fail("item 1 (b b_i)" + tag);
      for (int j = i + 1; j <= k; ++j)
        if (!(compose(ta, r->twist(a(j))) == compose(r->twist(a(j)), ta)) ||
            !certified(sub(r, {a(i), a(j)}), sub(r, {a(j), a(i)}), 3))
          v.fail("item 1 (a_i a_j)" + tag);
      if (!(compose(ta, compose(tb, ta)) == compose(tb, compose(ta, tb))) ||
          !certified(sub(r, {a(i), "b", a(i)}), sub(r, {"b", a(i), "b"}), 3))
        v.fail("item 2" + tag);
      std::vector<std::vector<std::string>> forms{
          {"b", a(i), bi}, {a(i), bi, a(i + 1)}, {bi, a(i + 1), "b"}, {a(i + 1), "b", a(i)}};
      for (std::size_t x = 0; x < 4; ++x) {
        ++checked;
        if (!certified(sub(r, forms[x]), sub(r, forms[(x + 1) % 4]), 3)) v.fail("item 3 form " + std::to_string(x + 1) + tag);
      }
    }
  }
  if (v.ok) v.note = std::to_string(checked) + " item-3 certificates, k = 3..9";
  return v;
}

Verdict entries_of(Catalog& cat, const std::vector<std::string>& kinds, std::size_t* count) {
  Verdict v;
  *count = 0;
  for (const auto& e : cat.entries()) {
    if (std::find(kinds.begin(), kinds.end(), e.kind) == kinds.end()) continue;
    ++*count;
    VerifyLine l = cat.verify(e.name);
    if (l.status != Status::Pass) v.fail(e.name + " " + status_name(l.status) + ": " + l.detail);
  }
  return v;
}

Atlas flip_sign(const Atlas& a, const std::string& name) {
  std::vector<AtlasCurve> es = a.entries();
  for (auto& e : es)
    if (e.name == name)
      for (auto& pc : e.crossings)
        if (!pc.pre.empty()) {
          pc.pre[0].second = -pc.pre[0].second;
          return Atlas(a.surface(), es);
        }
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

bool any_fails(const std::vector<CheckResult>& rs, const std::string& prefix) {
  for (const auto& r : rs)
    if (r.name.rfind(prefix, 0) == 0 && !r.pass) return true;
  return false;
}

Verdict model(Catalog& cat) {
  Verdict v;
  std::size_t checks = 0;
  std::vector<std::string> names{"ko9", "tanaka8"};
  for (int k = 1; k <= 9; ++k) names.push_back("std" + std::to_string(k));
  bool chain_seen = false;
  for (const auto& n : names) {
    for (const auto& c : validate_model(cat.atlas(n)->atlas())) {
      ++checks;
      chain_seen |= c.name.rfind("chain(", 0) == 0;
      if (!c.pass) v.fail(n + ": " + c.name + " " + c.witness);
    }
  }
  if (!chain_seen) v.fail("chain check did not run");
  // each family must catch a corrupted datum
  if (!any_fails(validate_model(flip_sign(standard_atlas(8), "b1")), "braid(a1,b1)")) v.fail("braid mutation passed");
  if (!any_fails(validate_model(flip_sign(standard_atlas(4), "b")), "commute(")) v.fail("commutation mutation passed");
  if (!any_fails(validate_model(replace_entry(standard_atlas(3), "delta1", "b")), "central("))
    v.fail("centrality mutation passed");
  if (!any_fails(validate_model(flip_sign(standard_atlas(8), "b1")), "homology(b1)")) v.fail("homology mutation passed");
  if (!any_fails(validate_model(flip_sign(standard_atlas(1), "b")), "chain(")) v.fail("chain mutation passed");
  if (!any_fails(validate_model(replace_entry(standard_atlas(3), "delta2", "delta1")), "free-abelian"))
    v.fail("free abelian mutation passed");
  if (v.ok) v.note = std::to_string(checks) + " checks over 11 atlases, 6 mutations caught";
  return v;
}

Verdict properties(Catalog& cat) {
  Verdict v;
  std::mt19937 rng(2024);
  std::vector<Factorization> rows;
  for (const char* n : {"N9", "S8", "N8", "N7", "N6", "N5", "N4", "N3", "N2", "N1"}) rows.push_back(cat.relation(n));
  auto side = [&] { return rng() % 2 ? Side::Left : Side::Right; };
  int trips = 0;
  while (trips < 10000) {
    Factorization f = rows[rng() % rows.size()];
    for (int s = 0; s < 6 && trips < 10000; ++s, ++trips) {
      int i = 1 + static_cast<int>(rng() % 11);
      Side d = side();
      Factorization g = hurwitz_move(f, i, d);
      if (!factorwise_equal(hurwitz_move(g, i, d == Side::Left ? Side::Right : Side::Left), f))
        v.fail("round trip failed");
      f = g;
    }
  }
  for (int t = 0; t < 1000; ++t) {
    const Factorization& f = rows[4 + t % 6];
    auto names = f.realizer()->atlas().names();
    GeneratorWord g;
    for (int i = 0; i < 2; ++i) g.gens.push_back({names[rng() % names.size()], rng() % 2 ? 1 : -1});
    if (!is_relation(global_conjugate(f, g))) v.fail("conjugation by " + format_generator_word(g) + " broke a relation");
  }
  int certs = 0;
  for (int t = 0; t < 30; ++t) {
    Factorization f = rows[2 + t % 8], g = f;
    for (int d = 0; d < 2; ++d) g = hurwitz_move(g, 1 + static_cast<int>(rng() % 11), side());
    g = cyclic_rotate(g, static_cast<int>(rng() % 12));
    auto r = search_equivalence(f, g, 20000, SearchOptions{}, cat);
    if (!r.found) continue;
    ++certs;
    try {
      if (!factorwise_equal(replay(f, r.script, cat), g)) v.fail("certificate ends elsewhere");
    } catch (const Error& e) {
      v.fail(std::string("certificate does not replay: ") + e.what());
    }
  }
  if (certs == 0) v.fail("no certificates found");
  if (v.ok) v.note = "10000 round trips, 1000 conjugations, " + std::to_string(certs) + " certificates";
  return v;
}

Verdict braid() {
  Verdict v;
  for (int d = 3; d <= 8; ++d) {
    for (int i = 1; i + 1 < d; ++i)
      if (!braid_equals(make_braid(d, {i, i + 1, i}), make_braid(d, {i + 1, i, i + 1}))) v.fail("braid relation");
    for (int i = 1; i < d; ++i)
      for (int j = i + 2; j < d; ++j)
        if (!braid_equals(make_braid(d, {i, j}), make_braid(d, {j, i}))) v.fail("far commutation");
  }
  if (braid_equals(make_braid(3, {1}), make_braid(3, {-1}))) v.fail("sigma_1 = sigma_1^-1");
  auto c = cover_invariants(fn_monodromy());
  if (!c.connected || c.euler != 0 || c.genus != 1) v.fail("f_n cover invariants");
  if (total_product(fn_monodromy()) != std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}) v.fail("f_n product");
  std::mt19937 rng(7);
  auto arc = [&] {
    std::vector<int> g;
    for (int i = 0; i < 4; ++i) g.push_back((rng() % 2 ? 1 : -1) * (1 + static_cast<int>(rng() % 5)));
    return make_arc(make_braid(6, g), 1 + static_cast<int>(rng() % 5));
  };
  for (int t = 0; t < 50; ++t) {
    SixPointInput in{arc(), {arc(), arc(), arc(), arc()}, arc(), arc()};
    auto out = regenerate_six_point(in);
    const auto& g = in.gamma;
    BraidWord all = inverse(half_twist(g[0])) * inverse(half_twist(g[1])) * inverse(half_twist(g[2])) *
                    inverse(half_twist(g[3]));
    if (!arc_equals(out[1], in.beta)) v.fail("beta_2");
    if (!arc_equals(out[3], inverse_half_twist(g[0], inverse_half_twist(g[1], in.beta)))) v.fail("beta_4");
    if (!arc_equals(out[4], act(all, in.beta)) ||
        !arc_equals(out[4], inverse_half_twist(g[0], inverse_half_twist(g[1], out[2]))))
      v.fail("beta_5 composition");
  }
  if (v.ok) v.note = "f_n: connected, chi 0, genus 1";
  return v;
}

Verdict optional_sets(Catalog& cat) {
  Verdict v;
  int skipped = 0, present = 0;
  for (const auto& e : cat.entries()) {
    if (e.kind != "optional") continue;
    VerifyLine l = cat.verify(e.name);
    bool have = cat.entries().end() != std::find_if(cat.entries().begin(), cat.entries().end(), [&](const auto& x) {
                  return x.name == e.field("source");
                });
    if (have) {
      ++present;
      if (l.status != Status::Pass) v.fail(e.name + " present but " + status_name(l.status));
    } else {
      ++skipped;
      if (l.status != Status::Skipped) v.fail(e.name + " absent but reported " + status_name(l.status));
    }
  }
  if (skipped + present == 0) v.fail("no optional entries in the manifest");
  if (v.ok) v.note = std::to_string(skipped) + " absent and SKIPPED, " + std::to_string(present) + " present";
  return v;
}

}  // namespace

int main() {
  Catalog cat(TOREL_TEST_CATALOG);
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"classification rows are relations", [&] { return table_rows(cat); }},
      {"lemma suite", [] { return lemma(); }},
      {"capping cases",
       [&] {
         std::size_t n = 0;
         Verdict v = entries_of(cat, {"case"}, &n);
         if (v.ok) v.note = std::to_string(n) + " cases replay to the expected relation";
         return v;
       }},
      {"theorem and alternate certificates",
       [&] {
         std::size_t n = 0;
         Verdict v = entries_of(cat, {"theorem", "alternate"}, &n);
         if (v.ok) v.note = std::to_string(n) + " certificates";
         return v;
       }},
      {"model validation with mutations", [&] { return model(cat); }},
      {"property checks", [&] { return properties(cat); }},
      {"braid module", [] { return braid(); }},
      {"optional datasets", [&] { return optional_sets(cat); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("threw ") + e.what());
    }
    all = all && v.ok;
    std::cout << (v.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << "  (" << v.note
              << ")\n";
  }
  return all ? 0 : 1;
}
