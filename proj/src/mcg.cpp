#include "torel/mcg.hpp"

#include <cstdlib>
#include <random>

#include "torel/text.hpp"

namespace torel {

GeneratorWord make_generator_word(const std::vector<TwistGen>& raw) {
  GeneratorWord w;
  for (const auto& t : raw) {
    if (t.power == 0) continue;
    if (!w.gens.empty() && w.gens.back().name == t.name) {
      w.gens.back().power += t.power;
      if (w.gens.back().power == 0) w.gens.pop_back();
    } else {
      w.gens.push_back(t);
    }
  }
  return w;
}

GeneratorWord operator*(const GeneratorWord& u, const GeneratorWord& v) {
  std::vector<TwistGen> raw = u.gens;
  raw.insert(raw.end(), v.gens.begin(), v.gens.end());
  return make_generator_word(raw);
}

GeneratorWord inverse(const GeneratorWord& w) {
  std::vector<TwistGen> raw;
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) raw.push_back({it->name, -it->power});
  return make_generator_word(raw);
}

std::string format_generator_word(const GeneratorWord& w) {
  if (w.gens.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.gens.size(); ++i) {
    const auto& t = w.gens[i];
    if (i) out += ',';
    int p = t.power;
    if (p < 0) out += '~';
    out += t.name;
    if (std::abs(p) != 1) out += '^' + std::to_string(std::abs(p));
  }
  return out;
}

GeneratorWord parse_generator_word(const std::string& text) {
  std::vector<TwistGen> raw;
  if (trim(text).empty() || trim(text) == "1") return {};
  for (std::string tok : split(text, ',')) {
    int sign = 1;
    if (tok[0] == '~') {
      sign = -1;
      tok = tok.substr(1);
    }
    int p = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      p = parse_int(tok.substr(caret + 1));
      tok = tok.substr(0, caret);
    }
    if (tok.empty()) throw Error(ErrorKind::ParseError, "empty twist name");
    raw.push_back({tok, sign * p});
  }
  return make_generator_word(raw);
}

MappingClass::MappingClass(const SurfaceSig& s) : s_(s) {
  for (int g = 0; g < s.gen_count(); ++g) {
    fwd_.push_back(generator_word(s, g));
    bwd_.push_back(generator_word(s, g));
  }
}

MappingClass::MappingClass(const SurfaceSig& s, std::vector<Word> fwd, std::vector<Word> bwd)
    : s_(s), fwd_(std::move(fwd)), bwd_(std::move(bwd)) {
  if (static_cast<int>(fwd_.size()) != s.gen_count() || static_cast<int>(bwd_.size()) != s.gen_count())
    throw Error(ErrorKind::InvariantViolation, "image table has the wrong size");
  for (int g = 0; g < s.gen_count(); ++g) {
    for (const Word* w : {&fwd_[g], &bwd_[g]})
      if (w->src != s.gen_source(g) || w->tgt != s.gen_target(g))
        throw Error(ErrorKind::InvariantViolation, "image of " + s.gen_name(g) + " moves a basepoint");
  }
}

static void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l)
    out.pop_back();
  else
    out.push_back(l);
}

static std::vector<Letter> substitute(const std::vector<Word>& table, const std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (Letter l : w) {
    const auto& img = table[gen_of(l)].letters;
    if (l > 0)
      for (Letter x : img) push_reduced(out, x);
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) push_reduced(out, -*it);
  }
  return out;
}

std::vector<Letter> MappingClass::apply_letters(const std::vector<Letter>& w) const { return substitute(fwd_, w); }

Word MappingClass::apply(const Word& w) const {
  if (w.empty()) return w;
  return Word{w.src, w.tgt, substitute(fwd_, w.letters)};
}

Curve MappingClass::apply(const Curve& c) const {
  // images of closed paths are closed paths since basepoints are fixed
  return canonical_cyclic(substitute(fwd_, c.letters));
}

MappingClass MappingClass::inverse() const {
  MappingClass r = *this;
  std::swap(r.fwd_, r.bwd_);
  return r;
}

bool MappingClass::is_identity() const {
  for (int g = 0; g < s_.gen_count(); ++g)
    if (fwd_[g].letters.size() != 1 || fwd_[g].letters[0] != letter(g, 1)) return false;
  return true;
}

bool MappingClass::inverse_consistent() const {
  for (int g = 0; g < s_.gen_count(); ++g) {
    auto a = substitute(fwd_, bwd_[g].letters);
    auto b = substitute(bwd_, fwd_[g].letters);
    if (a != std::vector<Letter>{letter(g, 1)} || b != std::vector<Letter>{letter(g, 1)}) return false;
  }
  return true;
}

std::size_t MappingClass::total_length() const {
  std::size_t n = 0;
  for (const auto& w : fwd_) n += w.size();
  return n;
}

std::uint64_t MappingClass::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& w : fwd_) h = (h ^ hash_letters(w.letters)) * 0x100000001b3ull;
  return h;
}

MappingClass compose(const MappingClass& f, const MappingClass& g) {
  if (!(f.surface() == g.surface())) throw Error(ErrorKind::SurfaceMismatch, "compose");
  const SurfaceSig& s = f.surface();
  std::vector<Word> fwd, bwd;
  MappingClass fi = f.inverse(), gi = g.inverse();
  for (int x = 0; x < s.gen_count(); ++x) {
    fwd.push_back(f.apply(g.image(x)));
    bwd.push_back(gi.apply(fi.image(x)));
  }
  return MappingClass(s, std::move(fwd), std::move(bwd));
}

MappingClass power(const MappingClass& f, int p) {
  MappingClass base = p >= 0 ? f : f.inverse();
  MappingClass r(f.surface());
  for (int i = 0; i < std::abs(p); ++i) r = compose(base, r);
  return r;
}

bool equals(const MappingClass& f, const MappingClass& g) {
  if (!(f.surface() == g.surface())) throw Error(ErrorKind::SurfaceMismatch, "equals");
  return f == g;
}

MappingClass conjugate(const MappingClass& f, const MappingClass& t) { return compose(f, compose(t, f.inverse())); }

static std::vector<Word> twist_images(const SurfaceSig& s, const AtlasCurve& c, int p) {
  const auto& w = c.word;
  std::size_t n = w.size();
  std::vector<Word> out;
  auto insert_loop = [&](std::vector<Letter>& raw, int rot, int e) {
    std::vector<Letter> loop(w.begin() + rot, w.end());
    loop.insert(loop.end(), w.begin(), w.begin() + rot);
    int q = e * p;
    if (q < 0) {
      std::reverse(loop.begin(), loop.end());
      for (Letter& l : loop) l = -l;
      q = -q;
    }
    for (int i = 0; i < q; ++i) raw.insert(raw.end(), loop.begin(), loop.end());
  };
  for (int g = 0; g < s.gen_count(); ++g) {
    std::vector<Letter> raw;
    const auto& pc = c.crossings[g];
    for (auto [rot, e] : pc.pre) insert_loop(raw, rot, e);
    raw.push_back(letter(g, 1));
    for (auto [rot, e] : pc.post) insert_loop(raw, rot, e);
    (void)n;
    out.push_back(reduce(s, raw));
  }
  return out;
}

MappingClass twist_from_data(const SurfaceSig& s, const AtlasCurve& c, int power) {
  if (power == 0) return MappingClass(s);
  return MappingClass(s, twist_images(s, c, power), twist_images(s, c, -power));
}

static std::vector<std::vector<Letter>> homology_basis(const SurfaceSig& s) {
  std::vector<std::vector<Letter>> basis;
  basis.push_back({letter(SurfaceSig::m(1), 1)});
  std::vector<Letter> lon;
  for (int i = 1; i <= s.holes; ++i) lon.push_back(letter(SurfaceSig::s(i), 1));
  basis.push_back(lon);
  for (int i = 1; i <= s.holes - 1; ++i) basis.push_back(boundary_loop(s, i).letters);
  return basis;
}

IntMatrix homology_matrix(const MappingClass& f) {
  const SurfaceSig& s = f.surface();
  auto basis = homology_basis(s);
  std::size_t n = basis.size();
  IntMatrix m(n, std::vector<long>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    auto col = cycle_coordinates(s, edge_vector(s, f.apply_letters(basis[j])));
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<long>(p, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t t = 0; t < k; ++t) c[i][j] += a[i][t] * b[t][j];
  return c;
}

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

long determinant(IntMatrix m) {
  // fraction-free Bareiss elimination
  std::size_t n = m.size();
  long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

IntMatrix transvection(const std::vector<long>& c, int p) {
  std::size_t n = c.size();
  IntMatrix m = identity_matrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long> x(n, 0);
    x[j] = 1;
    long a = intersection(x, c);
    for (std::size_t i = 0; i < n; ++i) m[i][j] += p * a * c[i];
  }
  return m;
}

void check_homology(const Atlas& a) {
  const SurfaceSig& s = a.surface();
  for (const auto& e : a.entries()) {
    MappingClass t = twist_from_data(s, e, 1);
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::InvariantViolation, "curve " + e.name + ": " + what);
    };
    if (!t.inverse_consistent()) fail("twist is not invertible on generators");
    for (int i = 1; i <= s.holes; ++i) {
      Word bl = boundary_loop(s, i);
      if (!(t.apply(bl) == bl)) fail("twist moves boundary loop e" + std::to_string(i));
    }
    if (homology_matrix(t) != transvection(homology_class(s, e.word), 1))
      fail("homology action is not the transvection by the curve class");
  }
}

Realizer::Realizer(AtlasPtr atlas) : atlas_(std::move(atlas)) {}

MappingClass Realizer::twist(const std::string& name, int power) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(name, power);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  MappingClass t = twist_from_data(atlas_->surface(), atlas_->get(name), power);
  cache_.emplace(key, t);
  return t;
}

MappingClass Realizer::realize(const GeneratorWord& w) const {
  MappingClass f(atlas_->surface());
  for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) f = compose(twist(it->name, it->power), f);
  return f;
}

Curve Realizer::apply_to_curve(const MappingClass& f, const Curve& c) const {
  if (!(f.surface() == atlas_->surface())) throw Error(ErrorKind::SurfaceMismatch, "apply_to_curve");
  return f.apply(c);
}

static bool is_boundary_name(const std::string& n) { return n.rfind("delta", 0) == 0; }

std::vector<CheckResult> validate_model(const Atlas& a) {
  const SurfaceSig& s = a.surface();
  std::vector<CheckResult> out;
  auto names = a.names();
  std::vector<MappingClass> tw;
  std::vector<std::vector<long>> hom;
  for (const auto& n : names) {
    const auto& e = a.get(n);
    tw.push_back(twist_from_data(s, e, 1));
    hom.push_back(homology_class(s, e.word));
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (a.get(names[i]).curve == a.get(names[j]).curve) continue;
      const MappingClass& x = tw[i];
      const MappingClass& y = tw[j];
      std::string pair = names[i] + "," + names[j];
      bool boundary = is_boundary_name(names[i]) || is_boundary_name(names[j]);
      if (boundary) {
        bool ok = compose(x, y) == compose(y, x);
        out.push_back({"central(" + pair + ")", ok, ok ? "" : names[i] + " " + names[j] + " != " + names[j] + " " + names[i]});
        continue;
      }
      int meets = joint_crossings(s, a.get(names[i]).curve.letters, a.get(names[j]).curve.letters);
      if (meets == 1) {
        bool ok = compose(x, compose(y, x)) == compose(y, compose(x, y));
        out.push_back({"braid(" + pair + ")", ok, ok ? "" : pair + "," + names[i] + " != " + names[j] + "," + pair});
      } else if (meets == 0) {
        bool ok = compose(x, y) == compose(y, x);
        out.push_back({"commute(" + pair + ")", ok, ok ? "" : names[i] + " " + names[j] + " != " + names[j] + " " + names[i]});
      }
    }

  // bounded sample of the boundary twist group: no nonzero exponent vector
  // of l1-norm <= 8 may give the identity
  {
    std::vector<std::string> deltas;
    for (int i = 1; i <= s.holes; ++i)
      if (a.contains("delta" + std::to_string(i))) deltas.push_back("delta" + std::to_string(i));
    const int L = 8;
    std::vector<std::vector<MappingClass>> pw(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i)
      for (int p = -L; p <= L; ++p) pw[i].push_back(twist_from_data(s, a.get(deltas[i]), p));
    std::mt19937 rng(12345);
    std::string witness;
    std::size_t tried = 0;
    auto test = [&](const std::vector<int>& v) {
      ++tried;
      MappingClass f(s);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) f = compose(pw[i][v[i] + L], f);
      if (f.is_identity() && witness.empty()) {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (v[i]) witness += deltas[i] + "^" + std::to_string(v[i]) + " ";
        witness += "= 1";
      }
    };
    std::size_t d = deltas.size();
    if (d <= 3) {
      std::vector<int> v(d, -L);
      while (true) {
        int norm = 0;
        bool nonzero = false;
        for (int x : v) {
          norm += std::abs(x);
          nonzero |= x != 0;
        }
        if (nonzero && norm <= L) test(v);
        std::size_t i = 0;
        while (i < d && v[i] == L) v[i++] = -L;
        if (i == d) break;
        ++v[i];
      }
    } else {
      // all single and pairwise combinations, then random vectors
      for (std::size_t i = 0; i < d; ++i)
        for (int p = -L; p <= L; ++p) {
          if (!p) continue;
          std::vector<int> v(d, 0);
          v[i] = p;
          test(v);
          for (std::size_t j = i + 1; j < d; ++j)
            for (int q = -(L - std::abs(p)); q <= L - std::abs(p); ++q) {
              if (!q) continue;
              v[j] = q;
              test(v);
              v[j] = 0;
            }
        }
      for (int it = 0; it < 2000; ++it) {
        std::vector<int> v(d, 0);
        int budget = 1 + static_cast<int>(rng() % L);
        for (int b = 0; b < budget; ++b) v[rng() % d] += (rng() % 2) ? 1 : -1;
        bool nonzero = false;
        for (int x : v) nonzero |= x != 0;
        if (nonzero) test(v);
      }
    }
    out.push_back({"free-abelian(boundary twists, l1<=8, " + std::to_string(tried) + " vectors, sampled)",
                   witness.empty(), witness});
  }

  for (std::size_t i = 0; i < names.size(); ++i) {
    bool ok = homology_matrix(tw[i]) == transvection(hom[i], 1);
    out.push_back({"homology(" + names[i] + ")", ok, ok ? "" : "matrix differs from transvection"});
  }

  if (s.holes == 1 && a.contains("a1") && a.contains("b") && a.contains("delta1")) {
    MappingClass ab = compose(twist_from_data(s, a.get("a1"), 1), twist_from_data(s, a.get("b"), 1));
    bool ok = power(ab, 6) == twist_from_data(s, a.get("delta1"), 1);
    out.push_back({"chain((a1 b)^6 = delta1)", ok, ok ? "" : "(a1 b)^6 != delta1"});
  }
  return out;
}

}  // namespace torel
