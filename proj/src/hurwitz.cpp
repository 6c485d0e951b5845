#include "torel/hurwitz.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "torel/text.hpp"

namespace torel {

namespace {

std::string delta_name(int i) { return "delta" + std::to_string(i); }

GeneratorWord single(const std::string& name, int p) { return make_generator_word({{name, p}}); }

// Drops trailing conjugator letters whose twist fixes the base curve.
GeneratorWord prune(const Realizer& r, const std::string& base, GeneratorWord conj) {
  Curve c = r.curve(base);
  while (!conj.gens.empty()) {
    const auto& last = conj.gens.back();
    if (r.twist(last.name, 1).apply(c) != c) break;
    conj.gens.pop_back();
  }
  return conj;
}

Factorization::EntryPtr make_entry(TwistFactor f, MappingClass twist, Curve curve) {
  return std::make_shared<const Factorization::Entry>(
      Factorization::Entry{std::move(f), std::move(twist), std::move(curve)});
}

std::string step_label(const Step& s) { return format_step(s); }

}  // namespace

Factorization::Factorization(RealizerPtr r, const std::vector<TwistFactor>& factors, std::vector<int> target)
    : r_(std::move(r)), target_(std::move(target)) {
  for (const auto& f : factors) entries_.push_back(realize_factor(*r_, f));
  for (int t : target_)
    if (t < 1 || t > r_->surface().holes) throw Error(ErrorKind::IndexOutOfRange, "target boundary " + std::to_string(t));
}

Factorization::Factorization(RealizerPtr r, std::vector<EntryPtr> entries, std::vector<int> target)
    : r_(std::move(r)), entries_(std::move(entries)), target_(std::move(target)) {}

std::vector<std::string> Factorization::bases() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e->factor.base);
  return out;
}

std::vector<int> full_target(int holes) {
  std::vector<int> t;
  for (int i = 1; i <= holes; ++i) t.push_back(i);
  return t;
}

Factorization::EntryPtr realize_factor(const Realizer& r, const TwistFactor& f) {
  MappingClass t = r.twist(f.base, 1);
  Curve c = r.curve(f.base);
  if (f.conj.empty()) return make_entry(f, std::move(t), std::move(c));
  MappingClass g = r.realize(f.conj);
  return make_entry(f, conjugate(g, t), g.apply(c));
}

MappingClass product(const Factorization& f) {
  MappingClass p(f.surface());
  for (std::size_t i = f.size(); i-- > 0;) p = compose(f.at(i).twist, p);
  return p;
}

MappingClass target_twist(const Factorization& f) {
  MappingClass p(f.surface());
  for (int t : f.target()) p = compose(f.realizer()->twist(delta_name(t), 1), p);
  return p;
}

bool is_relation(const Factorization& f) { return product(f) == target_twist(f); }

bool factorwise_equal(const Factorization& f, const Factorization& g) {
  if (!(f.surface() == g.surface()) || f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f.at(i).curve == g.at(i).curve) || !(f.at(i).twist == g.at(i).twist)) return false;
  return true;
}

Factorization hurwitz_move(const Factorization& f, int i, Side side) {
  int n = static_cast<int>(f.size());
  if (i < 1 || i >= n)
    throw Error(ErrorKind::IndexOutOfRange, "move position " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
  const Realizer& r = *f.realizer();
  auto entries = f.entries();
  const auto& x = *entries[i - 1];
  const auto& y = *entries[i];
  Factorization::EntryPtr nx, ny;
  if (side == Side::Left) {
    GeneratorWord g = x.factor.conj * single(x.factor.base, 1) * inverse(x.factor.conj);
    TwistFactor tf{y.factor.base, prune(r, y.factor.base, g * y.factor.conj)};
    nx = make_entry(tf, conjugate(x.twist, y.twist), x.twist.apply(y.curve));
    ny = entries[i - 1];
  } else {
    GeneratorWord g = y.factor.conj * single(y.factor.base, -1) * inverse(y.factor.conj);
    TwistFactor tf{x.factor.base, prune(r, x.factor.base, g * x.factor.conj)};
    MappingClass yi = y.twist.inverse();
    nx = entries[i];
    ny = make_entry(tf, conjugate(yi, x.twist), yi.apply(x.curve));
  }
  entries[i - 1] = nx;
  entries[i] = ny;
  return Factorization(f.realizer(), std::move(entries), f.target());
}

Factorization global_conjugate(const Factorization& f, const GeneratorWord& g) {
  const Realizer& r = *f.realizer();
  MappingClass m = r.realize(g);
  std::vector<Factorization::EntryPtr> out;
  for (const auto& e : f.entries()) {
    TwistFactor tf{e->factor.base, prune(r, e->factor.base, g * e->factor.conj)};
    out.push_back(make_entry(tf, conjugate(m, e->twist), m.apply(e->curve)));
  }
  return Factorization(f.realizer(), std::move(out), f.target());
}

Factorization cyclic_rotate(const Factorization& f, int j) {
  int n = static_cast<int>(f.size());
  if (j < 0 || j > n) throw Error(ErrorKind::IndexOutOfRange, "rotation " + std::to_string(j));
  auto e = f.entries();
  std::rotate(e.begin(), e.begin() + (n ? j % n : 0), e.end());
  return Factorization(f.realizer(), std::move(e), f.target());
}

RelabelMap rotation_map(const SurfaceSig& s, int shift) {
  int k = s.holes;
  auto idx = [&](int i) { return ((i - 1 + shift) % k + k) % k + 1; };
  RelabelMap m;
  m.name = (shift >= 0 ? "rot+" : "rot-") + std::to_string(std::abs(shift));
  m.dict["b"] = "b";
  for (int i = 1; i <= k; ++i) {
    for (const char* stem : {"a", "b", "delta"}) m.dict[stem + std::to_string(i)] = stem + std::to_string(idx(i));
  }
  return m;
}

RelabelMap standard_cap_dict(const SurfaceSig& s, int hole) {
  int k = s.holes;
  if (hole < 1 || hole > k) throw Error(ErrorKind::IndexOutOfRange, "cap hole " + std::to_string(hole));
  if (k < 2) throw Error(ErrorKind::InvalidDictionary, "cannot cap the last boundary component");
  RelabelMap m;
  m.name = "std";
  auto down = [&](int i) { return i > hole ? i - 1 : i; };
  m.dict["b"] = "b";
  for (int i = 1; i <= k; ++i) {
    std::string si = std::to_string(i);
    m.dict["delta" + si] = i == hole ? kIdentity : "delta" + std::to_string(down(i));
    m.dict["b" + si] = i == hole ? std::string("b") : "b" + std::to_string(down(i));
    int a = i;
    if (hole < k && i == hole + 1) a = hole;
    if (hole == k && i == k) a = 1;
    m.dict["a" + si] = "a" + std::to_string(down(a));
  }
  return m;
}

static std::string map_name(const RelabelMap& m, const std::string& name) {
  auto it = m.dict.find(name);
  if (it == m.dict.end()) throw Error(ErrorKind::InvalidDictionary, m.name + " has no image for " + name);
  return it->second;
}

static GeneratorWord map_word(const RelabelMap& m, const GeneratorWord& w) {
  std::vector<TwistGen> raw;
  for (const auto& t : w.gens) {
    std::string img = map_name(m, t.name);
    if (img != kIdentity) raw.push_back({img, t.power});
  }
  return make_generator_word(raw);
}

static std::vector<int> map_target(const RelabelMap& m, const std::vector<int>& target) {
  std::vector<int> out;
  for (int t : target) {
    auto it = m.dict.find(delta_name(t));
    if (it == m.dict.end()) {
      out.push_back(t);
      continue;
    }
    if (it->second == kIdentity) continue;
    if (it->second.rfind("delta", 0) != 0)
      throw Error(ErrorKind::InvalidDictionary, m.name + " sends " + delta_name(t) + " to " + it->second);
    out.push_back(parse_int(it->second.substr(5)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Factorization relabel(const Factorization& f, const RelabelMap& m) {
  std::vector<TwistFactor> out;
  for (const auto& e : f.entries()) {
    std::string b = map_name(m, e->factor.base);
    if (b == kIdentity) throw Error(ErrorKind::InvalidDictionary, m.name + " kills " + e->factor.base);
    out.push_back({b, map_word(m, e->factor.conj)});
  }
  return Factorization(f.realizer(), out, map_target(m, f.target()));
}

void check_cap_dict(const Realizer& from, const Realizer& to, int hole, const RelabelMap& m) {
  const SurfaceSig& s = from.surface();
  if (!(to.surface() == SurfaceSig{s.genus, s.holes - 1}))
    throw Error(ErrorKind::InvalidDictionary, "capped atlas has surface " + to.surface().describe());
  auto bad = [&](const std::string& why) { throw Error(ErrorKind::InvalidDictionary, m.name + ": " + why); };
  for (const auto& name : from.atlas().names()) {
    std::string img = map_name(m, name);
    if (img != kIdentity && !to.atlas().contains(img)) bad(name + " -> unknown curve " + img);
  }
  if (map_name(m, delta_name(hole)) != kIdentity) bad(delta_name(hole) + " must map to " + kIdentity);

  std::vector<std::string> names;
  for (const auto& n : from.atlas().names())
    if (n.rfind("delta", 0) != 0 && map_name(m, n) != kIdentity) names.push_back(n);
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      std::string x = map_name(m, names[i]), y = map_name(m, names[j]);
      if (x == y || to.curve(x) == to.curve(y)) continue;
      const auto& cx = from.atlas().get(names[i]).curve;
      const auto& cy = from.atlas().get(names[j]).curve;
      if (cx == cy) continue;
      int jc = joint_crossings(s, cx.letters, cy.letters);
      MappingClass tx = to.twist(x), ty = to.twist(y);
      if (jc == 0) {
        if (!(compose(tx, ty) == compose(ty, tx)))
          bad(names[i] + " and " + names[j] + " commute but " + x + " and " + y + " do not");
      } else if (jc == 1) {
        if (!(compose(tx, compose(ty, tx)) == compose(ty, compose(tx, ty))))
          bad(names[i] + " and " + names[j] + " braid but " + x + " and " + y + " do not");
      }
    }
  }
}

Factorization cap(const Factorization& f, int hole, const RelabelMap& m, RealizerPtr target_atlas) {
  if (hole < 1 || hole > f.surface().holes) throw Error(ErrorKind::IndexOutOfRange, "cap hole " + std::to_string(hole));
  check_cap_dict(*f.realizer(), *target_atlas, hole, m);
  std::vector<TwistFactor> out;
  for (const auto& e : f.entries()) {
    std::string b = map_name(m, e->factor.base);
    if (b == kIdentity) continue;
    out.push_back({b, map_word(m, e->factor.conj)});
  }
  std::vector<int> target;
  for (int t : f.target())
    if (t != hole) target.push_back(t > hole ? t - 1 : t);
  return Factorization(std::move(target_atlas), out, target);
}

std::string format_step(const Step& s) {
  switch (s.kind) {
    case Step::Kind::L: return "L " + std::to_string(s.index);
    case Step::Kind::R: return "R " + std::to_string(s.index);
    case Step::Kind::Conj: return "CONJ " + format_generator_word(s.word);
    case Step::Kind::Rot: return "ROT " + std::to_string(s.index);
    case Step::Kind::Relabel: return "RELABEL " + s.name;
    case Step::Kind::Cap: return "CAP " + std::to_string(s.index) + " " + s.name;
  }
  return "";
}

std::string format_script(const MoveScript& s) {
  std::string out;
  for (const auto& st : s.steps) out += format_step(st) + "\n";
  return out;
}

MoveScript parse_script(const std::string& text) {
  MoveScript out;
  int lineno = 0;
  for (const auto& raw : split_lines(text)) {
    ++lineno;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "script line " + std::to_string(lineno) + ": " + why);
    };
    Step st;
    const std::string& op = toks[0];
    try {
      if (op == "L" || op == "R" || op == "ROT") {
        if (toks.size() != 2) fail(op + " takes one index");
        st.kind = op == "L" ? Step::Kind::L : op == "R" ? Step::Kind::R : Step::Kind::Rot;
        st.index = parse_int(toks[1]);
      } else if (op == "CONJ") {
        if (toks.size() != 2) fail("CONJ takes one generator word");
        st.kind = Step::Kind::Conj;
        st.word = parse_generator_word(toks[1]);
      } else if (op == "RELABEL") {
        if (toks.size() != 2) fail("RELABEL takes one name");
        st.kind = Step::Kind::Relabel;
        st.name = toks[1];
      } else if (op == "CAP") {
        if (toks.size() != 3) fail("CAP takes a hole index and a dictionary name");
        st.kind = Step::Kind::Cap;
        st.index = parse_int(toks[1]);
        st.name = toks[2];
      } else {
        fail("unknown step '" + op + "'");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError && std::string(e.what()).find("script line") != std::string::npos) throw;
      fail(e.what());
    }
    out.steps.push_back(st);
  }
  return out;
}

RelabelMap BuiltinResolver::relabel_map(const std::string& name, const Factorization& f) {
  if (name.size() > 4 && name.rfind("rot", 0) == 0 && (name[3] == '+' || name[3] == '-')) {
    int n = 0;
    try {
      n = parse_int(name.substr(4));
    } catch (const Error&) {
      throw Error(ErrorKind::UnknownSymmetry, name);
    }
    return rotation_map(f.surface(), name[3] == '+' ? n : -n);
  }
  throw Error(ErrorKind::UnknownSymmetry, name);
}

RelabelMap BuiltinResolver::cap_dict(const std::string& name, const Factorization& f, int hole) {
  if (name != "std") throw Error(ErrorKind::InvalidDictionary, "unknown capping dictionary " + name);
  return standard_cap_dict(f.surface(), hole);
}

RealizerPtr BuiltinResolver::capped_atlas(const Factorization& f, int) {
  int k = f.surface().holes - 1;
  auto it = atlases_.find(k);
  if (it != atlases_.end()) return it->second;
  auto a = std::make_shared<Atlas>(standard_atlas(k));
  auto r = std::make_shared<const Realizer>(a);
  atlases_[k] = r;
  return r;
}

Factorization apply_step(const Factorization& f, const Step& step, StepResolver& res) {
  switch (step.kind) {
    case Step::Kind::L: return hurwitz_move(f, step.index, Side::Left);
    case Step::Kind::R: return hurwitz_move(f, step.index, Side::Right);
    case Step::Kind::Conj: return global_conjugate(f, step.word);
    case Step::Kind::Rot: return cyclic_rotate(f, step.index);
    case Step::Kind::Relabel: return relabel(f, res.relabel_map(step.name, f));
    case Step::Kind::Cap:
      return cap(f, step.index, res.cap_dict(step.name, f, step.index), res.capped_atlas(f, step.index));
  }
  return f;
}

Factorization replay(const Factorization& f, const MoveScript& s, StepResolver& res, const StepObserver& observe) {
  Factorization cur = f;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    std::string where = "step " + std::to_string(i + 1) + " (" + step_label(s.steps[i]) + ")";
    try {
      cur = apply_step(cur, s.steps[i], res);
    } catch (const Error& e) {
      throw Error(ErrorKind::StepFailure, where + ": " + e.what());
    }
    if (!is_relation(cur)) throw Error(ErrorKind::StepFailure, where + ": result is not a relation");
    if (observe) observe(i + 1, cur);
  }
  return cur;
}

namespace {

using Key = std::vector<std::uint64_t>;

Key raw_key(const Factorization& f) {
  Key k;
  for (const auto& e : f.entries()) k.push_back(e->curve.hash());
  return k;
}

Key min_rotation(Key k) {
  Key best = k;
  for (std::size_t r = 1; r < k.size(); ++r) {
    std::rotate(k.begin(), k.begin() + 1, k.end());
    if (k < best) best = k;
  }
  return best;
}

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ v) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

struct Node {
  std::shared_ptr<Factorization> state;
  std::size_t parent;
  std::vector<Step> steps;
  int depth;
};

// Rotation r with cyclic_rotate(f, r) factorwise equal to g, or -1.
int aligning_rotation(const Factorization& f, const Factorization& g, bool rotations) {
  int n = static_cast<int>(f.size());
  for (int r = 0; r < (rotations ? std::max(n, 1) : 1); ++r)
    if (factorwise_equal(cyclic_rotate(f, r), g)) return r;
  return -1;
}

}  // namespace

SearchResult search_equivalence(const Factorization& f, const Factorization& g, std::size_t budget,
                                const SearchOptions& opt, StepResolver& res) {
  SearchResult out;
  if (!(f.surface() == g.surface())) throw Error(ErrorKind::SurfaceMismatch, "search endpoints live on different surfaces");
  if (f.size() != g.size()) return out;
  auto key_of = [&](const Factorization& x) { return opt.rotations ? min_rotation(raw_key(x)) : raw_key(x); };
  const Key goal = key_of(g);

  std::vector<Node> nodes;
  std::unordered_map<Key, std::size_t, KeyHash> seen;
  std::deque<std::size_t> queue;
  nodes.push_back({std::make_shared<Factorization>(f), 0, {}, 0});
  seen.emplace(key_of(f), 0);
  queue.push_back(0);

  auto finish = [&](std::size_t id, int rot) {
    std::vector<std::size_t> path;
    for (std::size_t c = id; c != 0; c = nodes[c].parent) path.push_back(c);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      for (const auto& st : nodes[*it].steps) out.script.steps.push_back(st);
    if (rot > 0) out.script.steps.push_back({Step::Kind::Rot, rot, {}, {}});
    out.found = true;
  };

  auto try_goal = [&](std::size_t id) {
    const Factorization& x = *nodes[id].state;
    if (key_of(x) != goal) return false;
    int r = aligning_rotation(x, g, opt.rotations);
    if (r < 0) return false;
    finish(id, r);
    return true;
  };
  if (try_goal(0)) return out;

  const int n = static_cast<int>(f.size());
  while (!queue.empty()) {
    if (out.expanded >= budget) {
      out.budget_exhausted = true;
      return out;
    }
    std::size_t id = queue.front();
    queue.pop_front();
    ++out.expanded;
    std::shared_ptr<Factorization> cur = nodes[id].state;
    nodes[id].state.reset();
    if (opt.max_depth >= 0 && nodes[id].depth >= opt.max_depth) continue;

    std::vector<std::pair<std::vector<Step>, Factorization>> children;
    for (int i = 1; i < n; ++i) {
      children.push_back({{{Step::Kind::L, i, {}, {}}}, hurwitz_move(*cur, i, Side::Left)});
      children.push_back({{{Step::Kind::R, i, {}, {}}}, hurwitz_move(*cur, i, Side::Right)});
    }
    if (opt.rotations && n > 2) {
      Factorization rot = cyclic_rotate(*cur, 1);
      for (Side sd : {Side::Left, Side::Right}) {
        Step mv{sd == Side::Left ? Step::Kind::L : Step::Kind::R, n - 1, {}, {}};
        children.push_back({{{Step::Kind::Rot, 1, {}, {}}, mv}, hurwitz_move(rot, n - 1, sd)});
      }
    }
    for (const auto& name : opt.relabels) {
      Step st{Step::Kind::Relabel, 0, {}, name};
      children.push_back({{st}, apply_step(*cur, st, res)});
    }
    for (auto& [steps, child] : children) {
      Key k = key_of(child);
      if (seen.count(k)) continue;
      std::size_t cid = nodes.size();
      seen.emplace(std::move(k), cid);
      nodes.push_back({std::make_shared<Factorization>(std::move(child)), id, steps, nodes[id].depth + 1});
      if (try_goal(cid)) return out;
      queue.push_back(cid);
    }
  }
  return out;
}

TwistFactor parse_factor_token(const std::string& tok) {
  auto at = tok.find('@');
  if (at == 0 || tok.empty()) throw Error(ErrorKind::ParseError, "bad factor '" + tok + "'");
  if (at == std::string::npos) return {tok, {}};
  return {tok.substr(0, at), parse_generator_word(tok.substr(at + 1))};
}

std::string format_factor_token(const TwistFactor& f) {
  if (f.conj.empty()) return f.base;
  return f.base + "@" + format_generator_word(f.conj);
}

std::string format_factors(const Factorization& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ' ';
    out += format_factor_token(f.at(i).factor);
  }
  return out;
}

static const std::string kPartial = "\xe2\x88\x82";  // U+2202

Factorization parse_factorization(const std::string& text, const AtlasLookup& lookup) {
  std::optional<SurfaceSig> s;
  std::string atlas_name;
  std::optional<std::vector<int>> target;
  std::vector<TwistFactor> factors;
  int lineno = 0;
  for (const auto& raw : split_lines(text)) {
    ++lineno;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::ParseError, "factorization line " + std::to_string(lineno) + ": " + why);
    };
    const std::string& kw = toks[0];
    if (kw == "surface") {
      s = parse_surface_header(toks);
    } else if (kw == "name") {
      // informational
    } else if (kw == "atlas") {
      if (toks.size() != 2) fail("atlas takes one name");
      atlas_name = toks[1];
    } else if (kw == "target") {
      if (!s) fail("target before surface header");
      std::vector<int> t;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string& v = toks[i];
        if (v == "none") continue;
        if (v.rfind(kPartial, 0) == 0 || (v.rfind("d", 0) == 0 && v.rfind("delta", 0) != 0)) {
          std::string num = v.substr(v[0] == 'd' ? 1 : kPartial.size());
          if (parse_int(num) != s->holes) fail("target " + v + " does not match holes=" + std::to_string(s->holes));
          auto full = full_target(s->holes);
          t.insert(t.end(), full.begin(), full.end());
        } else if (v.rfind("delta", 0) == 0) {
          t.push_back(parse_int(v.substr(5)));
        } else {
          fail("bad target item '" + v + "'");
        }
      }
      target = t;
    } else if (kw == "factor") {
      auto base = kv(toks, "base");
      if (!base) fail("factor needs base=");
      auto conj = kv(toks, "conj");
      factors.push_back({*base, conj ? parse_generator_word(*conj) : GeneratorWord{}});
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!s) throw Error(ErrorKind::ParseError, "factorization has no surface header");
  if (!target) target = full_target(s->holes);
  if (atlas_name.empty()) atlas_name = "std" + std::to_string(s->holes);
  RealizerPtr r = lookup(atlas_name, *s);
  if (!(r->surface() == *s)) throw Error(ErrorKind::SurfaceMismatch, "atlas " + atlas_name + " is on " + r->surface().describe());
  try {
    return Factorization(r, factors, *target);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownCurve) throw;
    throw Error(ErrorKind::ParseError, e.what());
  }
}

std::string format_factorization(const Factorization& f) {
  std::string out = f.surface().describe() + "\n";
  if (!f.realizer()->atlas().label.empty()) out += "atlas " + f.realizer()->atlas().label + "\n";
  out += "target";
  if (f.target() == full_target(f.surface().holes)) {
    out += " " + kPartial + std::to_string(f.surface().holes);
  } else if (f.target().empty()) {
    out += " none";
  } else {
    for (int t : f.target()) out += " delta" + std::to_string(t);
  }
  out += "\n";
  for (const auto& e : f.entries())
    out += "factor base=" + e->factor.base + " conj=" + format_generator_word(e->factor.conj) + "\n";
  return out;
}

}  // namespace torel
