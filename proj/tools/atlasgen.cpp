// Writes the shipped atlases: std1..std9 from the cut-system geometry, and
// the curve systems of the two 9- and 8-holed comparison relations, built as
// twist images of standard curves and re-embedded.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "torel/atlas.hpp"
#include "torel/mcg.hpp"

using namespace torel;

namespace {

struct Derived {
  std::string name;
  std::string from;  // standard curve
  std::string by;    // generator word over standard names, "1" for none
};

AtlasCurve image_curve(const Realizer& r, const Derived& d) {
  const SurfaceSig& s = r.surface();
  Curve c = r.curve(d.from);
  if (d.by != "1") c = r.realize(parse_generator_word(d.by)).apply(c);
  return make_atlas_curve(s, d.name, embed_word(s, c.letters));
}

Atlas derived_atlas(int k, const std::string& label, const std::vector<Derived>& defs) {
  Atlas base = standard_atlas(k);
  Realizer r(std::make_shared<Atlas>(base));
  std::vector<AtlasCurve> out;
  for (const auto& d : defs) out.push_back(image_curve(r, d));
  for (int i = 1; i <= k; ++i) {
    AtlasCurve e = base.get("delta" + std::to_string(i));
    out.push_back(e);
  }
  Atlas a(base.surface(), out);
  a.label = label;
  return a;
}

std::string a_name(int i) { return "a" + std::to_string(i); }

// alpha_i is a_{6-i} with indices mod k
int alpha_index(int i, int k) { return ((6 - i) % k + k - 1) % k + 1; }

Atlas ko9() {
  const int k = 9;
  std::vector<Derived> d;
  for (int i = 1; i <= k; ++i) d.push_back({"alpha" + std::to_string(i), a_name(alpha_index(i, k)), "1"});
  d.push_back({"beta", "b", "1"});
  for (int j = 1; j <= k; ++j) d.push_back({"beta" + std::to_string(j), "b", a_name(alpha_index(j, k))});
  // sigma = t_{beta_j}^{-1}(b_m); t_{beta_j} = t_{alpha_j} t_b t_{alpha_j}^{-1}
  auto sigma = [&](int n, int j, int m) {
    std::string a = a_name(alpha_index(j, k));
    d.push_back({"sigma" + std::to_string(n), "b" + std::to_string(m), a + ",~b,~" + a});
  };
  sigma(3, 4, 8);
  sigma(4, 1, 2);
  sigma(5, 7, 5);
  sigma(6, 4, 9);
  sigma(7, 1, 3);
  sigma(8, 7, 6);
  return derived_atlas(k, "ko9", d);
}

Atlas tanaka8() {
  const int k = 8;
  std::vector<Derived> d;
  for (int i = 1; i <= k; ++i) d.push_back({"alpha" + std::to_string(i), a_name(alpha_index(i, k)), "1"});
  d.push_back({"beta", "b", "1"});
  for (int j = 1; j <= k; ++j) {
    std::string a = a_name(alpha_index(j, k));
    d.push_back({"beta" + std::to_string(j), "b", a});
    d.push_back({"betabar" + std::to_string(j), "b", "~" + a});
  }
  auto sigma = [&](int n, int j, int m) {
    std::string a = a_name(alpha_index(j, k));
    d.push_back({"sigma" + std::to_string(n), "b" + std::to_string(m), a + ",~b,~" + a});
  };
  sigma(1, 2, 2);
  sigma(2, 2, 1);
  sigma(4, 6, 5);
  sigma(7, 6, 6);
  return derived_atlas(k, "tanaka8", d);
}

int report(const Atlas& a) {
  int fails = 0;
  for (const auto& c : validate_model(a))
    if (!c.pass) {
      std::cerr << a.label << ": " << c.name << " FAIL " << c.witness << "\n";
      ++fails;
    }
  return fails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the shipped curve atlases"};
  std::string out = "data/atlas";
  app.add_option("outdir", out, "output directory");
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out);
  std::vector<Atlas> all;
  for (int k = 1; k <= 9; ++k) {
    Atlas a = standard_atlas(k);
    a.label = "std" + std::to_string(k);
    all.push_back(a);
  }
  all.push_back(ko9());
  all.push_back(tanaka8());
  int fails = 0;
  for (const auto& a : all) {
    check_structure(a);
    check_homology(a);
    fails += report(a);
    std::string text = save_atlas(a);
    if (!(save_atlas(load_atlas(text)) == text)) {
      std::cerr << a.label << ": round trip differs\n";
      ++fails;
    }
    write_file(out + "/" + a.label + ".atlas", text);
    std::cout << a.label << ": " << a.entries().size() << " curves\n";
  }
  return fails ? 1 : 0;
}
