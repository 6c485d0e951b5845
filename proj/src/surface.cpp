#include "torel/surface.hpp"

#include <algorithm>
#include <sstream>

namespace torel {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UnknownCurve: return "UnknownCurve";
    case ErrorKind::SurfaceMismatch: return "SurfaceMismatch";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::UnknownSymmetry: return "UnknownSymmetry";
    case ErrorKind::InvalidDictionary: return "InvalidDictionary";
    case ErrorKind::StrandMismatch: return "StrandMismatch";
    case ErrorKind::InvalidArc: return "InvalidArc";
    case ErrorKind::NotTransposition: return "NotTransposition";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

void check_surface(const SurfaceSig& s) {
  if (s.genus != 1) throw Error(ErrorKind::InvariantViolation, "only genus 1 is modelled");
  if (s.holes < 1) throw Error(ErrorKind::InvariantViolation, "holes must be >= 1");
}

std::string SurfaceSig::gen_name(int g) const {
  return (is_m(g) ? "m" : "s") + std::to_string(index_of(g));
}

std::string SurfaceSig::letter_name(Letter l) const {
  return (l < 0 ? "~" : "") + gen_name(gen_of(l));
}

Letter SurfaceSig::parse_letter(std::string_view tok) const {
  int sign = 1;
  if (!tok.empty() && tok.front() == '~') {
    sign = -1;
    tok.remove_prefix(1);
  }
  if (tok.size() < 2 || (tok[0] != 'm' && tok[0] != 's'))
    throw Error(ErrorKind::ParseError, "bad generator '" + std::string(tok) + "'");
  int idx = 0;
  for (char c : tok.substr(1)) {
    if (c < '0' || c > '9') throw Error(ErrorKind::ParseError, "bad generator '" + std::string(tok) + "'");
    idx = idx * 10 + (c - '0');
  }
  if (idx < 1 || idx > holes)
    throw Error(ErrorKind::ParseError, "generator index out of range in '" + std::string(tok) + "'");
  int g = tok[0] == 'm' ? m(idx) : s(idx);
  return letter(g, sign);
}

std::string SurfaceSig::describe() const {
  return "surface genus=" + std::to_string(genus) + " holes=" + std::to_string(holes);
}

Word empty_word(int basepoint) { return Word{basepoint, basepoint, {}}; }

Word reduce(const SurfaceSig& s, const std::vector<Letter>& raw, int basepoint_if_empty) {
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    if (s.target(raw[i]) != s.source(raw[i + 1]))
      throw Error(ErrorKind::CompositionMismatch,
                  s.letter_name(raw[i]) + " then " + s.letter_name(raw[i + 1]));
  }
  Word w;
  w.src = raw.empty() ? basepoint_if_empty : s.source(raw.front());
  w.letters.reserve(raw.size());
  for (Letter l : raw) {
    if (!w.letters.empty() && w.letters.back() == -l)
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  w.tgt = raw.empty() ? basepoint_if_empty : s.target(raw.back());
  return w;
}

Word compose(const SurfaceSig& s, const Word& u, const Word& v) {
  if (v.tgt != u.src)
    throw Error(ErrorKind::CompositionMismatch,
                "target " + std::to_string(v.tgt) + " != source " + std::to_string(u.src));
  std::vector<Letter> raw = v.letters;
  raw.insert(raw.end(), u.letters.begin(), u.letters.end());
  return reduce(s, raw, v.src);
}

Word inverse(const Word& w) {
  Word r{w.tgt, w.src, {}};
  r.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
  return r;
}

Word power(const SurfaceSig& s, const Word& loop, int p) {
  if (!loop.is_loop()) throw Error(ErrorKind::NotALoop, "power of a non-loop");
  Word base = p >= 0 ? loop : inverse(loop);
  std::vector<Letter> raw;
  for (int i = 0; i < (p >= 0 ? p : -p); ++i) raw.insert(raw.end(), base.letters.begin(), base.letters.end());
  return reduce(s, raw, loop.src);
}

Word generator_word(const SurfaceSig& s, int g) {
  return Word{s.gen_source(g), s.gen_target(g), {letter(g, 1)}};
}

Word boundary_loop(const SurfaceSig& s, int i) {
  if (i < 1 || i > s.holes) throw Error(ErrorKind::IndexOutOfRange, "hole " + std::to_string(i));
  int si = SurfaceSig::s(i);
  return reduce(s, {letter(si, -1), letter(SurfaceSig::m(s.prev(i)), -1), letter(si, 1),
                    letter(SurfaceSig::m(i), 1)});
}

Word connector(const SurfaceSig& s, int i) {
  if (i < 1 || i > s.holes) throw Error(ErrorKind::IndexOutOfRange, "hole " + std::to_string(i));
  std::vector<Letter> raw;
  for (int j = 2; j <= i; ++j) raw.push_back(letter(SurfaceSig::s(j), 1));
  return reduce(s, raw, 1);
}

Word boundary_word(const SurfaceSig& s, int i) {
  Word h = connector(s, i);
  return compose(s, inverse(h), compose(s, boundary_loop(s, i), h));
}

std::string format_letters(const SurfaceSig& s, const std::vector<Letter>& letters) {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += s.letter_name(letters[i]);
  }
  return out;
}

std::vector<Letter> parse_letters(const SurfaceSig& s, std::string_view text) {
  std::vector<Letter> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    if (tok != "1") out.push_back(s.parse_letter(tok));
    tok.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '.') {
      flush();
    } else {
      tok += c;
    }
  }
  flush();
  return out;
}

Word parse_word(const SurfaceSig& s, std::string_view text, int basepoint_if_empty) {
  return reduce(s, parse_letters(s, text), basepoint_if_empty);
}

std::vector<Letter> cyclic_reduce(std::vector<Letter> w) {
  std::vector<Letter> st;
  for (Letter l : w) {
    if (!st.empty() && st.back() == -l)
      st.pop_back();
    else
      st.push_back(l);
  }
  std::size_t a = 0, b = st.size();
  while (b - a >= 2 && st[a] == -st[b - 1]) {
    ++a;
    --b;
  }
  return std::vector<Letter>(st.begin() + a, st.begin() + b);
}

static std::size_t least_rotation(const std::vector<Letter>& w) {
  // Booth's algorithm on the doubled sequence.
  std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    Letter sj = w[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != w[(k + i + 1) % n]) {
      if (sj < w[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && sj != w[(k + i + 1) % n]) {
      if (sj < w[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

static std::vector<Letter> rotated(const std::vector<Letter>& w, std::size_t r) {
  std::vector<Letter> out(w.begin() + r, w.end());
  out.insert(out.end(), w.begin(), w.begin() + r);
  return out;
}

Curve canonical_cyclic(const std::vector<Letter>& closed) {
  std::vector<Letter> w = cyclic_reduce(closed);
  if (w.empty()) return Curve{};
  std::vector<Letter> inv(w.rbegin(), w.rend());
  for (Letter& l : inv) l = -l;
  auto a = rotated(w, least_rotation(w));
  auto b = rotated(inv, least_rotation(inv));
  return Curve{std::min(a, b)};
}

Curve canonicalize(const Word& loop) {
  if (!loop.is_loop()) throw Error(ErrorKind::NotALoop, "canonicalize needs a loop");
  return canonical_cyclic(loop.letters);
}

Word curve_loop(const SurfaceSig& s, const Curve& c) {
  if (c.letters.empty()) return empty_word(1);
  return reduce(s, c.letters);
}

std::uint64_t hash_letters(const std::vector<Letter>& w) {
  std::uint64_t h = 1469598103934665603ull;
  for (Letter l : w) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(l));
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return h ^ w.size();
}

std::uint64_t Curve::hash() const { return hash_letters(letters); }

std::vector<long> edge_vector(const SurfaceSig& s, const std::vector<Letter>& w) {
  std::vector<long> v(s.gen_count(), 0);
  for (Letter l : w) v[gen_of(l)] += l > 0 ? 1 : -1;
  return v;
}

std::vector<long> cycle_coordinates(const SurfaceSig& s, const std::vector<long>& e) {
  int k = s.holes;
  std::vector<long> c(k + 1, 0);
  long lon = e[SurfaceSig::s(1)];
  for (int i = 2; i <= k; ++i)
    if (e[SurfaceSig::s(i)] != lon) throw Error(ErrorKind::NotALoop, "edge vector is not a cycle");
  long mer = 0;
  for (int i = 1; i <= k; ++i) mer += e[SurfaceSig::m(i)];
  c[0] = mer;
  c[1] = lon;
  if (k >= 2) {
    c[2] = -e[SurfaceSig::m(k)];
    for (int j = 2; j <= k - 1; ++j) {
      long y = 0;
      for (int i = j; i <= k - 1; ++i) y += e[SurfaceSig::m(i)];
      c[j + 1] = y;
    }
  }
  return c;
}

std::vector<long> homology_class(const SurfaceSig& s, const std::vector<Letter>& closed) {
  return cycle_coordinates(s, edge_vector(s, closed));
}

long intersection(const std::vector<long>& x, const std::vector<long>& y) {
  return x[0] * y[1] - x[1] * y[0];
}

}  // namespace torel
