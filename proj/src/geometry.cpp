#include "torel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <map>

namespace torel {

namespace {

struct Ends {
  Letter letter;
  int exit_piece;
  double exit_t;
  int enter_piece;
  double enter_t;
};

double t_bottom(double f) { return 0.1 + 0.8 * f; }
double t_right(double f) { return 1.1 + 0.8 * f; }
double t_top(double f) { return 2.9 - 0.8 * f; }
double t_left(double f) { return 3.9 - 0.8 * f; }

Ends ends_of(const SurfaceSig& s, const Crossing& c) {
  int j = c.index;
  if (c.arc == 'u') {
    Letter l = letter(SurfaceSig::s(j), c.dir);
    if (c.dir > 0) return {l, s.prev(j), t_right(c.frac), j, t_left(c.frac)};
    return {l, j, t_left(c.frac), s.prev(j), t_right(c.frac)};
  }
  Letter l = letter(SurfaceSig::m(j), c.dir);
  if (c.dir > 0) return {l, j, t_top(c.frac), j, t_bottom(c.frac)};
  return {l, j, t_bottom(c.frac), j, t_top(c.frac)};
}

double mod4(double x) {
  x = std::fmod(x, 4.0);
  return x < 0 ? x + 4.0 : x;
}

// x strictly inside the counter-clockwise arc from a to b
bool between_ccw(double a, double b, double x) {
  a = mod4(a);
  b = mod4(b);
  x = mod4(x);
  if (a < b) return a < x && x < b;
  return x > a || x < b;
}

struct Chord {
  int piece;
  double a;  // entry point
  double b;  // exit point
};

struct Segment {
  int piece;
  double p, q;
  bool post;
};

std::vector<Chord> chords_of(const SurfaceSig& s, const CrossingSeq& seq) {
  std::size_t n = seq.size();
  std::vector<Chord> out;
  out.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    Ends e1 = ends_of(s, seq[t]);
    Ends e2 = ends_of(s, seq[(t + 1) % n]);
    if (e1.enter_piece != e2.exit_piece)
      throw Error(ErrorKind::InvariantViolation,
                  "crossings " + std::to_string(t) + " and " + std::to_string((t + 1) % n) +
                      " do not share a rectangle");
    out.push_back({e1.enter_piece, e1.enter_t, e2.exit_t});
  }
  return out;
}

std::vector<Segment> segments_of(const SurfaceSig& s, int g) {
  int i = SurfaceSig::index_of(g);
  if (SurfaceSig::is_m(g)) return {{i, 0.01, 2.95, false}, {i, 0.05, 0.01, true}};
  return {{s.prev(i), 0.01, 1.05, false}, {i, 3.95, 0.01, true}};
}

}  // namespace

Letter crossing_letter(const SurfaceSig& s, const Crossing& c) { return ends_of(s, c).letter; }

std::vector<Letter> crossing_word(const SurfaceSig& s, const CrossingSeq& seq) {
  std::vector<Letter> w;
  for (const auto& c : seq) w.push_back(crossing_letter(s, c));
  return w;
}

CrossingData crossing_data(const SurfaceSig& s, const CrossingSeq& seq) {
  std::vector<Chord> chords = chords_of(s, seq);
  std::size_t n = seq.size();
  CrossingData data(s.gen_count());
  for (int g = 0; g < s.gen_count(); ++g) {
    for (const Segment& seg : segments_of(s, g)) {
      std::vector<std::pair<double, std::pair<int, int>>> hits;
      for (std::size_t t = 0; t < n; ++t) {
        const Chord& c = chords[t];
        if (c.piece != seg.piece) continue;
        bool ar = between_ccw(seg.p, seg.q, c.a);
        bool br = between_ccw(seg.p, seg.q, c.b);
        if (ar == br) continue;
        int eps = ar ? -1 : 1;
        double near = ar ? c.a : c.b;
        hits.push_back({mod4(near - seg.p), {static_cast<int>((t + 1) % n), eps}});
      }
      std::sort(hits.begin(), hits.end());
      auto& dst = seg.post ? data[g].post : data[g].pre;
      for (auto& h : hits) dst.push_back(h.second);
    }
  }
  return data;
}

bool is_embedded(const SurfaceSig& s, const CrossingSeq& seq) {
  std::vector<Chord> chords = chords_of(s, seq);
  for (std::size_t x = 0; x < chords.size(); ++x)
    for (std::size_t y = x + 1; y < chords.size(); ++y) {
      if (chords[x].piece != chords[y].piece) continue;
      const Chord& c = chords[x];
      const Chord& d = chords[y];
      if (between_ccw(c.a, c.b, d.a) != between_ccw(c.a, c.b, d.b)) return false;
    }
  return true;
}

namespace {

struct SideInfo {
  char arc;
  int index;
  double exit_base;
  int exit_slope;
  double enter_base;
  int enter_slope;
};

SideInfo side_info(Letter l) {
  int g = gen_of(l);
  int j = SurfaceSig::index_of(g);
  bool pos = l > 0;
  if (!SurfaceSig::is_m(g)) {
    if (pos) return {'u', j, 1.1, 1, 3.9, -1};
    return {'u', j, 3.9, -1, 1.1, 1};
  }
  if (pos) return {'v', j, 2.9, -1, 0.1, 1};
  return {'v', j, 0.1, 1, 2.9, -1};
}

// Strands of one or more cyclic words.  Occurrence = (word, index, dir).
class StrandOrder {
 public:
  using Occ = std::array<int, 3>;

  explicit StrandOrder(std::vector<const std::vector<Letter>*> words) : words_(std::move(words)) {
    for (auto* w : words_) limit_ += 2 * w->size();
  }

  // Letter number `step` along the strand through an occurrence, walked in
  // the direction that crosses the occurrence's arc positively.
  Letter at(const Occ& occ, std::size_t step) const {
    const auto& w = *words_[occ[0]];
    long n = static_cast<long>(w.size());
    long i = occ[1];
    if (occ[2] > 0) return w[(i + static_cast<long>(step)) % n];
    return -w[((i - static_cast<long>(step)) % n + n) % n];
  }

  // sign(f_p - f_q) for two strands crossing the same arc in the same
  // direction; 0 if they run parallel forever
  int compare(const Occ& p, const Occ& q) const {
    int sign = 1;
    for (std::size_t step = 0; step <= limit_; ++step) {
      SideInfo si = side_info(at(p, step));
      Letter np = at(p, step + 1), nq = at(q, step + 1);
      if (np == nq) {
        // same exit side: entry order is the reverse of exit order
        sign *= si.enter_slope * -side_info(np).exit_slope;
        continue;
      }
      double amid = si.enter_base + si.enter_slope * 0.5;
      SideInfo bp = side_info(np), bq = side_info(nq);
      double dp = mod4(bp.exit_base + bp.exit_slope * 0.5 - amid);
      double dq = mod4(bq.exit_base + bq.exit_slope * 0.5 - amid);
      int s_a = dp > dq ? -1 : 1;
      return sign * si.enter_slope * s_a;
    }
    return 0;
  }

 private:
  std::vector<const std::vector<Letter>*> words_;
  std::size_t limit_ = 0;
};

// Assigns fractions to every letter of every word by sorting the strands on
// each arc.  Returns false if two distinct strands run parallel forever.
bool place_strands(const std::vector<const std::vector<Letter>*>& words,
                   std::vector<std::vector<double>>& frac) {
  StrandOrder order(words);
  std::map<std::pair<char, int>, std::vector<StrandOrder::Occ>> groups;
  frac.assign(words.size(), {});
  for (std::size_t c = 0; c < words.size(); ++c) {
    frac[c].assign(words[c]->size(), 0.5);
    for (std::size_t i = 0; i < words[c]->size(); ++i) {
      Letter l = (*words[c])[i];
      SideInfo si = side_info(l);
      groups[{si.arc, si.index}].push_back({static_cast<int>(c), static_cast<int>(i), l > 0 ? 1 : -1});
    }
  }
  bool ok = true;
  for (auto& [arc, occ] : groups) {
    std::stable_sort(occ.begin(), occ.end(), [&](const auto& a, const auto& b) {
      int r = order.compare(a, b);
      if (r == 0 && a != b) ok = false;
      return r < 0;
    });
    for (std::size_t r = 0; r < occ.size(); ++r)
      frac[occ[r][0]][occ[r][1]] = static_cast<double>(r + 1) / static_cast<double>(occ.size() + 1);
  }
  return ok;
}

CrossingSeq to_seq(const std::vector<Letter>& w, const std::vector<double>& frac) {
  CrossingSeq seq;
  for (std::size_t i = 0; i < w.size(); ++i) {
    SideInfo si = side_info(w[i]);
    seq.push_back({si.arc, si.index, frac[i], w[i] > 0 ? 1 : -1});
  }
  return seq;
}

void check_closed(const SurfaceSig& s, const std::vector<Letter>& w) {
  std::size_t n = w.size();
  if (n == 0) throw Error(ErrorKind::InvariantViolation, "cannot embed the trivial curve");
  if (cyclic_reduce(w).size() != n) throw Error(ErrorKind::InvariantViolation, "word is not cyclically reduced");
  for (std::size_t i = 0; i < n; ++i)
    if (s.target(w[i]) != s.source(w[(i + 1) % n]))
      throw Error(ErrorKind::CompositionMismatch, "word is not a closed path");
}

}  // namespace

CrossingSeq embed_word(const SurfaceSig& s, const std::vector<Letter>& cyclic) {
  check_closed(s, cyclic);
  std::vector<std::vector<double>> frac;
  if (!place_strands({&cyclic}, frac))
    throw Error(ErrorKind::InvariantViolation, "word is a proper power");
  CrossingSeq seq = to_seq(cyclic, frac[0]);
  if (!is_embedded(s, seq))
    throw Error(ErrorKind::InvariantViolation, "word is not represented by a simple closed curve");
  return seq;
}

int joint_crossings(const SurfaceSig& s, const std::vector<Letter>& x, const std::vector<Letter>& y) {
  check_closed(s, x);
  check_closed(s, y);
  std::vector<std::vector<double>> frac;
  if (!place_strands({&x, &y}, frac)) return -1;
  std::vector<Chord> cx = chords_of(s, to_seq(x, frac[0]));
  std::vector<Chord> cy = chords_of(s, to_seq(y, frac[1]));
  int count = 0;
  for (const auto& c : cx)
    for (const auto& d : cy)
      if (c.piece == d.piece && between_ccw(c.a, c.b, d.a) != between_ccw(c.a, c.b, d.b)) ++count;
  return count;
}

std::vector<std::string> standard_curve_names(const SurfaceSig& s) {
  std::vector<std::string> names;
  for (int i = 1; i <= s.holes; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("b");
  for (int i = 1; i <= s.holes; ++i) names.push_back("b" + std::to_string(i));
  for (int i = 1; i <= s.holes; ++i) names.push_back("delta" + std::to_string(i));
  return names;
}

CrossingSeq standard_curve(const SurfaceSig& s, const std::string& name) {
  int k = s.holes;
  auto index_after = [&](std::size_t prefix) {
    int i = 0;
    try {
      i = std::stoi(name.substr(prefix));
    } catch (...) {
      throw Error(ErrorKind::UnknownCurve, name);
    }
    if (i < 1 || i > k) throw Error(ErrorKind::UnknownCurve, name);
    return i;
  };
  if (name == "b") {
    CrossingSeq seq;
    for (int j = 1; j <= k; ++j) seq.push_back({'u', j, 0.75, 1});
    return seq;
  }
  if (name.rfind("delta", 0) == 0) {
    int i = index_after(5);
    return {{'u', i, 0.02, -1}, {'v', s.prev(i), 0.98, -1}, {'u', i, 0.98, 1}, {'v', i, 0.02, 1}};
  }
  if (name.size() > 1 && name[0] == 'a') {
    int j = index_after(1);
    return {{'v', s.prev(j), 0.5, 1}};
  }
  if (name.size() > 1 && name[0] == 'b') {
    int i = index_after(1);
    CrossingSeq seq;
    for (int j = 1; j <= k; ++j) {
      if (j == i) {
        seq.push_back({'v', s.prev(i), 0.9, 1});
        seq.push_back({'u', i, 0.25, 1});
        seq.push_back({'v', i, 0.1, -1});
      } else {
        seq.push_back({'u', j, 0.75, 1});
      }
    }
    return seq;
  }
  throw Error(ErrorKind::UnknownCurve, name);
}

}  // namespace torel
