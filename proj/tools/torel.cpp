// torel: verify catalog entries, replay and search move scripts, cap holes.
//
// Exit codes: 0 success, 1 failed check, 2 input error, 3 search budget
// exhausted.
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "torel/catalog.hpp"

using namespace torel;
using nlohmann::json;

namespace {

struct Options {
  std::string catalog = Catalog::default_dir();
  std::string format = "text";
  bool json() const { return format == "json"; }
};

// "N_9" and "N9" name the same entry.
std::string canonical_name(std::string name) {
  name.erase(std::remove(name.begin(), name.end(), '_'), name.end());
  return name;
}

std::string entry_name(const Catalog& cat, const std::string& name) {
  for (const auto& e : cat.entries())
    if (e.name == name) return name;
  return canonical_name(name);
}

int input_error(const std::exception& ex) {
  std::cerr << "error: " << ex.what() << "\n";
  return 2;
}

bool input_kind(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::IoError || k == ErrorKind::UnknownName ||
         k == ErrorKind::UnknownCurve || k == ErrorKind::InvariantViolation || k == ErrorKind::SurfaceMismatch;
}

int run_verify(const Options& o, const std::string& entry, bool all, const std::string& atlas_path) {
  Catalog cat(o.catalog);
  json report = json::object();
  if (!atlas_path.empty()) {
    auto a = std::make_shared<Atlas>(load_atlas_file(atlas_path));
    auto checks = validate_model(*a);
    json jc = json::array();
    bool ok = true;
    for (const auto& c : checks) {
      ok = ok && c.pass;
      jc.push_back({{"check", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"witness", c.witness}});
      if (!o.json()) std::cout << (c.pass ? "PASS" : "FAIL") << "  atlas " << a->label << ": " << c.name
                               << (c.pass ? "" : "  " + c.witness) << "\n";
    }
    report["atlas"] = jc;
    if (!ok) {
      if (o.json()) std::cout << report.dump(2) << "\n";
      std::cerr << "error: atlas " << atlas_path << " fails model validation\n";
      return 2;
    }
    cat.override_atlas(a->label, a);
  }
  std::vector<VerifyLine> lines;
  if (all) {
    lines = cat.verify_all().lines;
  } else if (!entry.empty()) {
    lines.push_back(cat.verify(entry_name(cat, entry)));
  } else if (atlas_path.empty()) {
    std::cerr << "error: verify needs --entry, --all or --atlas\n";
    return 2;
  }
  VerifySummary s{lines};
  json jl = json::array();
  for (const auto& l : lines) {
    jl.push_back({{"name", l.name}, {"kind", l.kind}, {"status", status_name(l.status)}, {"detail", l.detail}});
    if (!o.json())
      std::cout << status_name(l.status) << "  " << l.kind << " " << l.name << (l.detail.empty() ? "" : "  " + l.detail)
                << "\n";
  }
  if (o.json()) {
    report["entries"] = jl;
    report["summary"] = {{"pass", s.count(Status::Pass)},
                         {"fail", s.count(Status::Fail)},
                         {"skipped", s.count(Status::Skipped)}};
    std::cout << report.dump(2) << "\n";
  } else if (all) {
    std::cout << "summary: " << s.count(Status::Pass) << " pass, " << s.count(Status::Fail) << " fail, "
              << s.count(Status::Skipped) << " skipped\n";
  }
  return s.ok() ? 0 : 1;
}

int run_replay(const Options& o, const std::string& input, const std::string& script_path, const std::string& expect) {
  Catalog cat(o.catalog);
  Factorization f = cat.load_factorization(input);
  MoveScript s = parse_script(read_file(script_path));
  std::optional<Factorization> want;
  if (!expect.empty()) want = cat.load_factorization(expect);

  json steps = json::array();
  auto show = [&](std::size_t i, const Factorization& x) {
    std::string label = i == 0 ? "start" : format_step(s.steps[i - 1]);
    if (o.json())
      steps.push_back({{"step", i}, {"move", label}, {"factors", format_factors(x)}});
    else
      std::cout << i << "  " << label << "  " << format_factors(x) << "\n";
  };
  show(0, f);
  Factorization end;
  try {
    end = replay(f, s, cat, [&](std::size_t i, const Factorization& x) { show(i, x); });
  } catch (const Error& ex) {
    if (o.json()) std::cout << json{{"steps", steps}, {"error", ex.what()}}.dump(2) << "\n";
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  bool ok = !want || factorwise_equal(end, *want);
  if (o.json()) {
    json r{{"steps", steps}};
    if (want) r["expect"] = ok ? "match" : "mismatch";
    std::cout << r.dump(2) << "\n";
  } else if (want) {
    std::cout << (ok ? "endpoint matches " : "endpoint differs from ") << expect << "\n";
  }
  return ok ? 0 : 1;
}

int run_search(const Options& o, const std::string& a, const std::string& b, std::size_t budget) {
  Catalog cat(o.catalog);
  Factorization fa = cat.load_factorization(a), fb = cat.load_factorization(b);
  if (fa.size() != fb.size() || !(fa.surface() == fb.surface()) || fa.target() != fb.target())
    throw Error(ErrorKind::ParseError, "inputs differ in surface, length or target");
  SearchOptions opt;
  opt.rotations = is_relation(fa) && is_relation(fb);
  SearchResult r = search_equivalence(fa, fb, budget, opt, cat);
  if (o.json()) {
    json j{{"found", r.found}, {"budget_exhausted", r.budget_exhausted}, {"expanded", r.expanded}};
    if (r.found) {
      json st = json::array();
      for (const auto& x : r.script.steps) st.push_back(format_step(x));
      j["script"] = st;
    }
    std::cout << j.dump(2) << "\n";
  } else if (r.found) {
    std::cout << "# certificate: " << r.script.steps.size() << " steps, " << r.expanded << " states expanded\n"
              << format_script(r.script);
  } else {
    std::cout << "# no certificate (" << (r.budget_exhausted ? "budget exhausted" : "orbit exhausted") << ", "
              << r.expanded << " states expanded)\n";
  }
  if (r.found) return 0;
  return r.budget_exhausted ? 3 : 1;
}

int run_cap(const Options& o, const std::string& input, int hole, const std::string& dict, const std::string& output) {
  Catalog cat(o.catalog);
  Factorization f = cat.load_factorization(input);
  Factorization out;
  try {
    Step st{Step::Kind::Cap, hole, {}, dict};
    out = apply_step(f, st, cat);
  } catch (const Error& ex) {
    if (ex.kind() == ErrorKind::InvalidDictionary || ex.kind() == ErrorKind::IndexOutOfRange) {
      std::cerr << "error: " << ex.what() << "\n";
      return 1;
    }
    throw;
  }
  std::string text = format_factorization(out);
  if (!output.empty()) write_file(output, text);
  if (o.json())
    std::cout << json{{"factors", format_factors(out)}, {"count", out.size()}, {"relation", is_relation(out)}}.dump(2)
              << "\n";
  else if (output.empty())
    std::cout << text;
  else
    std::cout << out.size() << " factors written to " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz equivalence of holed torus relations"};
  Options o;
  app.add_option("--catalog", o.catalog, "catalog directory (default: TOREL_CATALOG_DIR or the bundled data)");
  app.add_option("--format", o.format, "report encoding")->check(CLI::IsMember({"text", "json"}));
  app.require_subcommand(1);

  std::string entry, atlas;
  bool all = false;
  auto* verify = app.add_subcommand("verify", "check catalog entries");
  verify->add_option("--entry", entry, "entry name, e.g. N9 or N_9");
  verify->add_flag("--all", all, "every manifest entry");
  verify->add_option("--atlas", atlas, "validate an atlas file and use it in place of the atlas of the same name");

  std::string input, script, expect;
  auto* rep = app.add_subcommand("replay", "apply a move script");
  rep->add_option("--input", input, "factorization file")->required();
  rep->add_option("--script", script, "move script")->required();
  rep->add_option("--expect", expect, "factorization the endpoint must equal");

  std::string fa, fb;
  std::size_t budget = 10000;
  auto* search = app.add_subcommand("search", "look for a Hurwitz certificate");
  search->add_option("--a", fa, "factorization file")->required();
  search->add_option("--b", fb, "factorization file")->required();
  search->add_option("--budget", budget, "states to expand");

  int hole = 0;
  std::string dict = "std", output;
  auto* capc = app.add_subcommand("cap", "cap a boundary component");
  capc->add_option("--input", input, "factorization file")->required();
  capc->add_option("--hole", hole, "hole index")->required();
  capc->add_option("--dict", dict, "capping dictionary");
  capc->add_option("--output", output, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return run_verify(o, entry, all, atlas);
    if (*rep) return run_replay(o, input, script, expect);
    if (*search) return run_search(o, fa, fb, budget);
    return run_cap(o, input, hole, dict, output);
  } catch (const Error& ex) {
    if (input_kind(ex.kind())) return input_error(ex);
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    return input_error(ex);
  }
}
