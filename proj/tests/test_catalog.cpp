#include <filesystem>

#include "doctest.h"
#include "torel/catalog.hpp"

using namespace torel;
namespace fs = std::filesystem;

namespace {

const std::string kData = TOREL_TEST_CATALOG;

// Copy of the shipped catalog in a scratch directory.
std::string scratch_catalog(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("torel-catalog-" + tag);
  fs::remove_all(dir);
  fs::copy(kData, dir, fs::copy_options::recursive);
  return dir.string();
}

const VerifyLine* line_for(const VerifySummary& s, const std::string& name) {
  for (const auto& l : s.lines)
    if (l.name == name) return &l;
  return nullptr;
}

Atlas flip_first_sign(const Atlas& a, const std::string& name) {
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

}  // namespace

TEST_CASE("manifest parsing") {
  auto es = parse_manifest("# comment\nrelation X file=relations/X.fact holes=2\n\ncase Y source=X hole=1\n");
  REQUIRE(es.size() == 2);
  CHECK(es[0].kind == "relation");
  CHECK(es[0].field("holes") == "2");
  CHECK(es[1].field("missing").empty());
  CHECK_THROWS_AS(parse_manifest("widget Z\n"), Error);
  CHECK_THROWS_AS(parse_manifest("relation Z file\n"), Error);
}

TEST_CASE("the shipped catalog verifies") {
  Catalog cat(kData);
  VerifySummary s = cat.verify_all();
  for (const auto& l : s.lines) {
    CAPTURE(l.name);
    CAPTURE(l.detail);
    if (l.kind == "optional")
      CHECK(l.status == Status::Skipped);
    else
      CHECK(l.status == Status::Pass);
  }
  CHECK(s.ok());
  CHECK(s.count(Status::Skipped) == 2);
  CHECK(s.count(Status::Pass) == s.lines.size() - 2);
}

TEST_CASE("case coverage") {
  Catalog cat(kData);
  std::map<std::string, int> per_source;
  for (const auto& e : cat.entries())
    if (e.kind == "case") ++per_source[e.field("source")];
  // one case per hole of every source
  CHECK(per_source["N9"] == 9);
  CHECK(per_source["N8"] == 8);
  CHECK(per_source["S8"] == 8);
  CHECK(per_source["N7"] == 7);
  CHECK(per_source["N6"] == 6);
  CHECK(per_source["N5"] == 5);
  CHECK(per_source["N4"] == 4);
  CHECK(per_source["N3"] == 3);
  CHECK(per_source["N2"] == 2);
}

TEST_CASE("unknown entries") {
  Catalog cat(kData);
  CHECK_THROWS_AS(cat.verify("N10"), Error);
  CHECK_THROWS_AS(cat.relation("N8.cap9"), Error);
}

TEST_CASE("a corrupted atlas is named by the relations that use it") {
  Catalog cat(kData);
  auto bad = std::make_shared<Atlas>(flip_first_sign(*cat.standard(8)->atlas_ptr(), "b1"));
  cat.override_atlas("std8", bad);
  auto s = cat.verify_all();
  const VerifyLine* n8 = line_for(s, "N8");
  REQUIRE(n8 != nullptr);
  CHECK(n8->status == Status::Fail);
  CHECK_FALSE(s.ok());
  // entries on other surfaces are untouched
  CHECK(line_for(s, "N9")->status == Status::Pass);
}

TEST_CASE("absent atlases and sources are skipped, not failed") {
  std::string dir = scratch_catalog("noko");
  fs::remove(fs::path(dir) / "atlas" / "ko9.atlas");
  Catalog cat(dir);
  CHECK(cat.verify("KO9").status == Status::Skipped);
  CHECK(cat.verify("KO9-N9").status == Status::Skipped);
  CHECK(cat.verify("T8-S8").status == Status::Pass);
  CHECK(cat.verify("fn-N9").status == Status::Skipped);
  fs::remove_all(dir);
}

TEST_CASE("a tampered script fails verification") {
  std::string dir = scratch_catalog("tamper");
  write_file(dir + "/scripts/N8.cap9.script", "CAP 9 std\nROT 11\nR 1\n");
  Catalog cat(dir);
  VerifyLine l = cat.verify("N8.cap9");
  CHECK(l.status == Status::Fail);
  CHECK_FALSE(l.detail.empty());
  fs::remove_all(dir);
}

TEST_CASE("a written line the script never visits fails the witness check") {
  Catalog cat(kData);
  std::string text = read_file(cat.path("derivations/N8.cap8.drv"));
  MoveScript s = cat.script(cat.get("N8.cap8"));
  CHECK(lines_witnessed(cat, parse_derivation(text), s));
  // a rotation the shipped script jumps over
  std::string extra = "= b8 b a1 b1 b2 b3 a4 b4 b5 b6 a7 b7\n";
  auto at = text.find("= b a1 b1");
  REQUIRE(at != std::string::npos);
  text.insert(at, extra);
  std::string missing;
  CHECK_FALSE(lines_witnessed(cat, parse_derivation(text), s, &missing));
  CHECK_FALSE(missing.empty());
}

TEST_CASE("derivation sources") {
  Derivation d = parse_derivation("source N9\ncap 9 std\n= a1 b1 | b2\n= @N8\nrot 3\nexpect N8\n");
  CHECK(d.source == "N9");
  CHECK(d.expect == "N8");
  REQUIRE(d.items.size() == 4);
  const auto& l = std::get<DerivationLine>(d.items[1]);
  CHECK(l.factors.size() == 3);
  CHECK(l.cuts == std::vector<int>{2});
  CHECK(std::get<DerivationLine>(d.items[2]).ref == "N8");
  CHECK_THROWS_AS(parse_derivation("= a1\n"), Error);
}

TEST_CASE("derive_script rebuilds shipped scripts that replay") {
  Catalog cat(kData);
  for (const char* name : {"N8.cap1", "N7.S8.cap4", "N4-KO4", "KO9-N9"}) {
    CAPTURE(name);
    const auto& e = cat.get(name);
    Derivation d = parse_derivation(read_file(cat.path(e.field("drv"))));
    DerivedScript ds = derive_script(cat, d);
    CHECK(ds.line_steps.size() >= 1);
    Factorization end = replay(cat.relation(d.source), ds.script, cat);
    CHECK(factorwise_equal(end, cat.relation(d.expect)));
    CHECK(lines_witnessed(cat, d, ds.script));
  }
}
