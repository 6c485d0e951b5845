#include "torel/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <set>
#include <unordered_set>

#include "torel/text.hpp"

#ifndef TOREL_DEFAULT_CATALOG
#define TOREL_DEFAULT_CATALOG "data"
#endif

namespace torel {

namespace fs = std::filesystem;

std::string ManifestEntry::field(const std::string& key) const {
  auto it = fields.find(key);
  return it == fields.end() ? std::string() : it->second;
}

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  static const std::set<std::string> kinds = {"relation", "case", "theorem", "alternate", "optional"};
  std::vector<ManifestEntry> out;
  std::set<std::string> names;
  int lineno = 0;
  for (const auto& raw : split_lines(text)) {
    ++lineno;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "manifest line " + std::to_string(lineno) + ": " + why);
    };
    if (!kinds.count(toks[0])) fail("unknown entry kind '" + toks[0] + "'");
    if (toks.size() < 2) fail("entry without a name");
    ManifestEntry e{toks[0], toks[1], {}};
    if (!names.insert(e.name).second) fail("duplicate entry " + e.name);
    for (std::size_t i = 2; i < toks.size(); ++i) {
      auto eq = toks[i].find('=');
      if (eq == std::string::npos || eq == 0) fail("expected key=value, got '" + toks[i] + "'");
      e.fields[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

std::size_t VerifySummary::count(Status s) const {
  std::size_t n = 0;
  for (const auto& l : lines) n += l.status == s;
  return n;
}

Catalog::Catalog(std::string dir) : dir_(std::move(dir)) { entries_ = parse_manifest(read_file(path("manifest"))); }

std::string Catalog::default_dir() {
  if (const char* env = std::getenv("TOREL_CATALOG_DIR"); env && *env) return env;
  return TOREL_DEFAULT_CATALOG;
}

std::string Catalog::path(const std::string& rel) const { return (fs::path(dir_) / rel).string(); }

const ManifestEntry& Catalog::get(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e;
  throw Error(ErrorKind::UnknownName, name);
}

bool Catalog::has_atlas(const std::string& name) const {
  return atlases_.count(name) || fs::exists(path("atlas/" + name + ".atlas"));
}

RealizerPtr Catalog::atlas(const std::string& name) {
  auto it = atlases_.find(name);
  if (it != atlases_.end()) return it->second;
  std::string p = path("atlas/" + name + ".atlas");
  auto a = std::make_shared<Atlas>(load_atlas(read_file(p)));
  a->label = name;
  auto r = std::make_shared<const Realizer>(a);
  atlases_[name] = r;
  return r;
}

void Catalog::override_atlas(const std::string& name, AtlasPtr a) {
  atlases_[name] = std::make_shared<const Realizer>(std::move(a));
}

AtlasLookup Catalog::lookup() {
  return [this](const std::string& name, const SurfaceSig&) { return atlas(name); };
}

Factorization Catalog::parse_factorization(const std::string& text) {
  return torel::parse_factorization(text, lookup());
}

Factorization Catalog::load_factorization(const std::string& p) { return parse_factorization(read_file(p)); }

Factorization Catalog::relation(const std::string& name) {
  const auto& e = get(name);
  if (e.kind != "relation") throw Error(ErrorKind::UnknownName, name + " is not a relation");
  return load_factorization(path(e.field("file")));
}

MoveScript Catalog::script(const ManifestEntry& e) { return parse_script(read_file(path(e.field("script")))); }

RelabelMap Catalog::relabel_map(const std::string& name, const Factorization& f) {
  BuiltinResolver b;
  return b.relabel_map(name, f);
}

RelabelMap Catalog::cap_dict(const std::string& name, const Factorization& f, int hole) {
  BuiltinResolver b;
  return b.cap_dict(name, f, hole);
}

RealizerPtr Catalog::capped_atlas(const Factorization& f, int) { return standard(f.surface().holes - 1); }

namespace {

struct Missing {
  std::string what;
};

// Files an entry depends on, in load order.
void require_file(const Catalog& c, const std::string& rel) {
  if (rel.empty()) throw Error(ErrorKind::ParseError, "manifest entry lacks a file field");
  if (!fs::exists(c.path(rel))) throw Missing{rel};
}

void require_atlases(Catalog& c, const std::string& fact_rel) {
  for (const auto& raw : split_lines(read_file(c.path(fact_rel)))) {
    auto toks = split_ws(strip_comment(raw));
    if (toks.size() == 2 && toks[0] == "atlas" && !c.has_atlas(toks[1])) throw Missing{"atlas/" + toks[1] + ".atlas"};
  }
}

// The hole of the source that the first CAP step removes, after following
// the relabelings that precede it.
int traced_hole(Catalog& c, Factorization f, const MoveScript& s, int hole) {
  for (const auto& st : s.steps) {
    if (st.kind == Step::Kind::Cap) return st.index == hole ? hole : -st.index;
    if (st.kind == Step::Kind::Relabel) {
      RelabelMap m = c.relabel_map(st.name, f);
      std::string img = m.dict.at("delta" + std::to_string(hole));
      hole = parse_int(img.substr(5));
    }
    f = apply_step(f, st, c);
  }
  return 0;
}

}  // namespace

VerifyLine Catalog::verify(const std::string& name) { return verify_entry(get(name)); }

VerifyLine Catalog::verify_entry(const ManifestEntry& e) {
  VerifyLine out{e.name, e.kind, Status::Pass, ""};
  auto fail = [&](const std::string& why) {
    out.status = Status::Fail;
    out.detail = why;
    return out;
  };
  try {
    if (e.kind == "relation") {
      require_file(*this, e.field("file"));
      require_atlases(*this, e.field("file"));
      Factorization f = relation(e.name);
      if (!is_relation(f)) return fail("product differs from the boundary multi-twist");
      if (!e.field("holes").empty() && parse_int(e.field("holes")) != f.surface().holes)
        return fail("surface has " + std::to_string(f.surface().holes) + " holes");
      if (!e.field("factors").empty() && parse_int(e.field("factors")) != static_cast<int>(f.size()))
        return fail(std::to_string(f.size()) + " factors");
      out.detail = std::to_string(f.size()) + " factors on " + f.surface().describe().substr(8);
      return out;
    }

    const std::string source = e.field("source"), expect = e.field("expect");
    for (const auto& rel : {source, expect}) {
      auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ManifestEntry& x) { return x.name == rel; });
      if (it == entries_.end()) throw Missing{"relation " + rel};
      require_file(*this, it->field("file"));
      require_atlases(*this, it->field("file"));
    }
    require_file(*this, e.field("script"));
    Factorization f = relation(source);
    Factorization want = relation(expect);
    MoveScript s = script(e);
    if (!e.field("hole").empty()) {
      int hole = parse_int(e.field("hole"));
      int t = traced_hole(*this, f, s, hole);
      if (t <= 0) return fail("script does not cap the image of hole " + std::to_string(hole));
    }
    Factorization end = replay(f, s, *this);
    if (end.size() != f.size()) return fail("factor count changed to " + std::to_string(end.size()));
    if (!factorwise_equal(end, want)) return fail("endpoint " + format_factors(end) + " differs from " + expect);
    if (!e.field("drv").empty()) {
      require_file(*this, e.field("drv"));
      std::string missing;
      if (!lines_witnessed(*this, parse_derivation(read_file(path(e.field("drv")))), s, &missing))
        return fail("written line not reached: " + missing);
    }
    out.detail = std::to_string(s.steps.size()) + " steps, ends at " + expect;
    return out;
  } catch (const Missing& m) {
    out.status = Status::Skipped;
    out.detail = "missing " + m.what;
    return out;
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
}

VerifySummary Catalog::verify_all() {
  VerifySummary s;
  for (const auto& e : entries_) s.lines.push_back(verify_entry(e));
  return s;
}

Derivation parse_derivation(const std::string& text) {
  Derivation d;
  int lineno = 0;
  for (const auto& raw : split_lines(text)) {
    ++lineno;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "derivation line " + std::to_string(lineno) + ": " + why);
    };
    const std::string& kw = toks[0];
    auto arg = [&](std::size_t n) {
      if (toks.size() != n + 1) fail(kw + " takes " + std::to_string(n) + " argument(s)");
    };
    if (kw == "source") {
      arg(1);
      d.source = toks[1];
    } else if (kw == "expect") {
      arg(1);
      d.expect = toks[1];
    } else if (kw == "=") {
      DerivationLine l;
      l.source_line = lineno;
      if (toks.size() == 2 && toks[1][0] == '@') {
        l.ref = toks[1].substr(1);
      } else {
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (toks[i] == "|")
            l.cuts.push_back(static_cast<int>(l.factors.size()));
          else
            l.factors.push_back(parse_factor_token(toks[i]));
        }
      }
      if (l.ref.empty() && l.factors.empty()) fail("empty line");
      d.items.emplace_back(l);
    } else {
      std::string step_text;
      if (kw == "cap") {
        arg(2);
        step_text = "CAP " + toks[1] + " " + toks[2];
      } else if (kw == "relabel") {
        arg(1);
        step_text = "RELABEL " + toks[1];
      } else if (kw == "rot") {
        arg(1);
        step_text = "ROT " + toks[1];
      } else if (kw == "conj") {
        arg(1);
        step_text = "CONJ " + toks[1];
      } else {
        fail("unknown directive '" + kw + "'");
      }
      d.items.emplace_back(parse_script(step_text).steps.at(0));
    }
  }
  if (d.source.empty()) throw Error(ErrorKind::ParseError, "derivation has no source");
  return d;
}

static Factorization line_factorization(Catalog& cat, const DerivationLine& line, const Factorization& like) {
  if (!line.ref.empty()) return cat.relation(line.ref);
  return Factorization(like.realizer(), line.factors, like.target());
}

std::vector<Curve> line_curves(Catalog& cat, const DerivationLine& line, const Factorization& like) {
  Factorization f = line_factorization(cat, line, like);
  std::vector<Curve> out;
  for (const auto& e : f.entries()) out.push_back(e->curve);
  return out;
}

namespace {

std::vector<Curve> curves_of(const Factorization& f) {
  std::vector<Curve> out;
  for (const auto& e : f.entries()) out.push_back(e->curve);
  return out;
}

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ v) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

// BFS with moves confined to [lo, hi] (0-based factor positions).
std::optional<std::vector<Step>> local_search(const Factorization& f, const std::vector<Curve>& goal, int lo, int hi,
                                              std::size_t budget) {
  auto window_key = [&](const Factorization& x) {
    std::vector<std::uint64_t> k;
    for (int i = lo; i <= hi; ++i) k.push_back(x.at(i).curve.hash());
    return k;
  };
  auto done = [&](const Factorization& x) {
    for (int i = lo; i <= hi; ++i)
      if (!(x.at(i).curve == goal[i])) return false;
    return true;
  };
  if (done(f)) return std::vector<Step>{};
  struct Node {
    Factorization f;
    std::vector<Step> path;
  };
  std::deque<Node> queue{{f, {}}};
  std::unordered_set<std::vector<std::uint64_t>, VecHash> seen{window_key(f)};
  std::size_t expanded = 0;
  while (!queue.empty() && expanded < budget) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    ++expanded;
    for (int p = lo + 1; p <= hi; ++p) {
      for (Side sd : {Side::Left, Side::Right}) {
        Factorization next = hurwitz_move(cur.f, p, sd);
        auto k = window_key(next);
        if (!seen.insert(k).second) continue;
        std::vector<Step> path = cur.path;
        path.push_back({sd == Side::Left ? Step::Kind::L : Step::Kind::R, p, {}, {}});
        if (done(next)) return path;
        queue.push_back({std::move(next), std::move(path)});
      }
    }
  }
  return std::nullopt;
}

// Windows around the mismatches, padded but never crossing a block start.
std::vector<std::pair<int, int>> windows(const std::vector<int>& mism, int pad, int n, const std::vector<int>& cuts) {
  auto block_of = [&](int i) {
    int lo = 0, hi = n - 1;
    for (int c : cuts) {
      if (c <= i) lo = std::max(lo, c);
      if (c > i) hi = std::min(hi, c - 1);
    }
    return std::make_pair(lo, hi);
  };
  std::vector<std::pair<int, int>> out;
  for (int m : mism) {
    auto [blo, bhi] = block_of(m);
    int lo = std::max(blo, m - pad), hi = std::min(bhi, m + pad);
    if (!out.empty() && lo <= out.back().second + 1 && block_of(out.back().first).first == blo)
      out.back().second = std::max(out.back().second, hi);
    else
      out.push_back({lo, hi});
  }
  // a lone mismatch cannot be repaired inside a window of one
  for (auto& w : out)
    if (w.first == w.second) {
      auto [blo, bhi] = block_of(w.first);
      if (w.second < bhi) ++w.second;
      else if (w.first > blo) --w.first;
    }
  return out;
}

// Window repair of `cur` towards `goal` with both read from offset `shift`,
// so that a block wrapping around the end becomes contiguous.
std::optional<std::vector<Step>> repair(const Factorization& cur, const std::vector<Curve>& goal, int pad, int shift,
                                        const std::vector<int>& cuts, std::size_t budget) {
  const int n = static_cast<int>(cur.size());
  Factorization x = cyclic_rotate(cur, shift);
  std::vector<Curve> g(goal.begin() + shift, goal.end());
  g.insert(g.end(), goal.begin(), goal.begin() + shift);
  std::vector<int> c;
  for (int v : cuts) c.push_back(((v - shift) % n + n) % n);
  std::vector<Step> steps;
  if (shift) steps.push_back({Step::Kind::Rot, shift, {}, {}});
  std::vector<int> mism;
  for (int i = 0; i < n; ++i)
    if (!(x.at(i).curve == g[i])) mism.push_back(i);
  for (auto [lo, hi] : windows(mism, pad, n, c)) {
    auto path = local_search(x, g, lo, hi, budget);
    if (!path) return std::nullopt;
    for (const auto& st : *path) {
      x = hurwitz_move(x, st.index, st.kind == Step::Kind::L ? Side::Left : Side::Right);
      steps.push_back(st);
    }
  }
  if (curves_of(x) != g) return std::nullopt;
  if (shift) steps.push_back({Step::Kind::Rot, n - shift, {}, {}});
  return steps;
}

std::optional<std::vector<Step>> connect(const Factorization& cur, const Factorization& goal_f,
                                         const std::vector<int>& cuts, std::size_t budget) {
  const int n = static_cast<int>(cur.size());
  const auto goal = curves_of(goal_f);
  std::vector<std::pair<int, int>> order;  // (mismatches, rotation)
  for (int r = 0; r < n; ++r) {
    Factorization x = cyclic_rotate(cur, r);
    int mm = 0;
    for (int i = 0; i < n; ++i) mm += !(x.at(i).curve == goal[i]);
    order.push_back({mm, r});
  }
  std::sort(order.begin(), order.end());
  // with marked blocks, only frames starting at a block boundary
  std::vector<int> shifts;
  for (int s = 0; s < n; ++s)
    if (cuts.empty() || s == 0 || std::find(cuts.begin(), cuts.end(), s) != cuts.end()) shifts.push_back(s);
  for (int pad = 0; pad <= 2; ++pad) {
    for (const auto& [mm, r] : order) {
      if (cuts.empty() && mm > order.front().first + 3) break;
      Factorization x = cyclic_rotate(cur, r);
      for (int shift : shifts) {
        auto steps = repair(x, goal, pad, shift, cuts, budget / 8);
        if (!steps) continue;
        if (r) steps->insert(steps->begin(), {Step::Kind::Rot, r, {}, {}});
        return steps;
      }
    }
  }
  BuiltinResolver res;
  SearchOptions opt;
  auto found = search_equivalence(cur, goal_f, std::min<std::size_t>(budget, 20000), opt, res);
  if (found.found) return found.script.steps;
  return std::nullopt;
}

}  // namespace

DerivedScript derive_script(Catalog& cat, const Derivation& d, std::size_t budget) {
  DerivedScript out;
  Factorization cur = cat.relation(d.source);
  auto reach = [&](const Factorization& goal, const std::vector<int>& cuts, const std::string& where) {
    if (goal.size() != cur.size() || !(goal.surface() == cur.surface()))
      throw Error(ErrorKind::StepFailure, where + ": line does not match the current surface or length");
    auto steps = connect(cur, goal, cuts, budget);
    if (!steps) throw Error(ErrorKind::StepFailure, where + ": no move sequence found");
    for (const auto& st : *steps) {
      cur = apply_step(cur, st, cat);
      out.script.steps.push_back(st);
    }
    out.line_steps.push_back(out.script.steps.size());
  };
  for (const auto& item : d.items) {
    if (const auto* st = std::get_if<Step>(&item)) {
      cur = apply_step(cur, *st, cat);
      if (!is_relation(cur)) throw Error(ErrorKind::StepFailure, format_step(*st) + " breaks the relation");
      out.script.steps.push_back(*st);
    } else {
      const auto& line = std::get<DerivationLine>(item);
      reach(line_factorization(cat, line, cur), line.cuts, "line " + std::to_string(line.source_line));
    }
  }
  if (!d.expect.empty()) {
    Factorization want = cat.relation(d.expect);
    reach(want, {}, "expect " + d.expect);
    if (!factorwise_equal(cur, want)) throw Error(ErrorKind::StepFailure, "endpoint differs from " + d.expect);
  }
  return out;
}

bool lines_witnessed(Catalog& cat, const Derivation& d, const MoveScript& s, std::string* missing) {
  std::vector<Factorization> states{cat.relation(d.source)};
  replay(states.front(), s, cat, [&](std::size_t, const Factorization& f) { states.push_back(f); });
  std::size_t at = 0;
  for (const auto& item : d.items) {
    const auto* line = std::get_if<DerivationLine>(&item);
    if (!line) continue;
    bool hit = false;
    for (std::size_t i = at; i < states.size() && !hit; ++i) {
      const auto& st = states[i];
      if (line->ref.empty() && line->factors.size() != st.size()) continue;
      std::vector<Curve> want;
      try {
        want = line_curves(cat, *line, st);
      } catch (const Error&) {
        continue;  // names from another surface
      }
      if (st.surface() == line_factorization(cat, *line, st).surface() && curves_of(st) == want) {
        at = i;
        hit = true;
      }
    }
    if (!hit) {
      if (missing) *missing = "derivation line " + std::to_string(line->source_line);
      return false;
    }
  }
  return true;
}

}  // namespace torel
