#include "torel/braid.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "torel/errors.hpp"
#include "torel/text.hpp"

namespace torel {

namespace {

void check_same(const BraidWord& a, const BraidWord& b) {
  if (a.strands != b.strands)
    throw Error(ErrorKind::StrandMismatch,
                std::to_string(a.strands) + " strands vs " + std::to_string(b.strands));
}

FreeWord image_of(int i, int sign, int x) {
  const int j = std::abs(x);
  FreeWord out;
  if (sign > 0) {
    if (j == i) out = {i, i + 1, -i};
    else if (j == i + 1) out = {i};
    else out = {j};
  } else {
    if (j == i) out = {i + 1};
    else if (j == i + 1) out = {-(i + 1), i, i + 1};
    else out = {j};
  }
  if (x < 0) {
    std::reverse(out.begin(), out.end());
    for (int& l : out) l = -l;
  }
  return out;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

BraidWord make_braid(int strands, std::vector<int> gens) {
  if (strands < 1) throw Error(ErrorKind::ParseError, "braid needs at least one strand");
  for (int g : gens)
    if (g == 0 || std::abs(g) >= strands)
      throw Error(ErrorKind::IndexOutOfRange,
                  "generator " + std::to_string(g) + " on " + std::to_string(strands) + " strands");
  return {strands, std::move(gens)};
}

BraidWord identity_braid(int strands) { return make_braid(strands, {}); }

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  check_same(a, b);
  BraidWord out = a;
  for (int g : b.gens) {
    if (!out.gens.empty() && out.gens.back() == -g)
      out.gens.pop_back();
    else
      out.gens.push_back(g);
  }
  return out;
}

BraidWord inverse(const BraidWord& b) {
  BraidWord out{b.strands, {}};
  for (auto it = b.gens.rbegin(); it != b.gens.rend(); ++it) out.gens.push_back(-*it);
  return out;
}

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

FreeWord apply_action(const std::vector<FreeWord>& images, const FreeWord& w) {
  FreeWord out;
  for (int l : w) {
    const FreeWord& im = images.at(std::abs(l) - 1);
    if (l > 0) {
      out.insert(out.end(), im.begin(), im.end());
    } else {
      for (auto it = im.rbegin(); it != im.rend(); ++it) out.push_back(-*it);
    }
  }
  return free_reduce(out);
}

std::vector<FreeWord> artin_action(const BraidWord& b) {
  std::vector<FreeWord> images(b.strands);
  for (int j = 0; j < b.strands; ++j) images[j] = {j + 1};
  for (auto it = b.gens.rbegin(); it != b.gens.rend(); ++it) {
    const int i = std::abs(*it), sign = *it > 0 ? 1 : -1;
    for (auto& im : images) {
      FreeWord next;
      for (int x : im) {
        auto piece = image_of(i, sign, x);
        next.insert(next.end(), piece.begin(), piece.end());
      }
      im = free_reduce(next);
    }
  }
  return images;
}

bool braid_equals(const BraidWord& a, const BraidWord& b) {
  check_same(a, b);
  return artin_action(a) == artin_action(b);
}

std::vector<int> braid_permutation(const BraidWord& b) {
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 1);
  for (auto it = b.gens.rbegin(); it != b.gens.rend(); ++it) {
    const int i = std::abs(*it);
    for (int& p : perm) {
      if (p == i) p = i + 1;
      else if (p == i + 1) p = i;
    }
  }
  return perm;
}

ArcRef make_arc(const BraidWord& carrier, int index) {
  if (index < 1 || index >= carrier.strands)
    throw Error(ErrorKind::InvalidArc, "arc index " + std::to_string(index) + " on " +
                                           std::to_string(carrier.strands) + " strands");
  return {carrier, index};
}

ArcRef act(const BraidWord& g, const ArcRef& a) { return {g * a.carrier, a.index}; }

BraidWord half_twist(const ArcRef& a) {
  return a.carrier * make_braid(a.carrier.strands, {a.index}) * inverse(a.carrier);
}

bool arc_equals(const ArcRef& a, const ArcRef& b) { return braid_equals(half_twist(a), half_twist(b)); }

std::pair<int, int> arc_endpoints(const ArcRef& a) {
  auto perm = braid_permutation(a.carrier);
  int x = perm[a.index - 1], y = perm[a.index];
  return {std::min(x, y), std::max(x, y)};
}

ArcRef inverse_half_twist(const ArcRef& gamma, const ArcRef& a) { return act(inverse(half_twist(gamma)), a); }

std::array<ArcRef, 6> regenerate_six_point(const SixPointInput& in) {
  for (const auto* x : {&in.gamma[0], &in.gamma[1], &in.gamma[2], &in.gamma[3], &in.beta1, &in.beta6})
    check_same(in.beta.carrier, x->carrier);
  const auto& g = in.gamma;
  ArcRef b3 = inverse_half_twist(g[2], inverse_half_twist(g[3], in.beta));
  ArcRef b4 = inverse_half_twist(g[0], inverse_half_twist(g[1], in.beta));
  ArcRef b5 = inverse_half_twist(g[0], inverse_half_twist(g[1], b3));
  return {in.beta1, in.beta, b3, b4, b5, in.beta6};
}

TwoPointModel standard_two_point_model() {
  TwoPointModel m;
  m.after = make_arc(identity_braid(4), 2);
  return m;
}

ArcRef regenerate_two_point(const ArcRef& beta, const TwoPointModel& model) {
  if (beta.carrier.strands != model.strands)
    throw Error(ErrorKind::StrandMismatch, "arc on " + std::to_string(beta.carrier.strands) + " strands, model has " +
                                               std::to_string(model.strands));
  auto joins = [&](const ArcRef& a) {
    auto [x, y] = arc_endpoints(a);
    auto in = [](const std::array<int, 2>& c, int p) { return c[0] == p || c[1] == p; };
    return (in(model.cluster_a, x) && in(model.cluster_b, y)) || (in(model.cluster_a, y) && in(model.cluster_b, x));
  };
  if (beta.index != model.base || !joins(beta))
    throw Error(ErrorKind::InvalidArc, "input arc " + format_arc(beta) + " is not a 2-point arc of the model");
  ArcRef out = act(beta.carrier, model.after);
  if (!joins(out)) throw Error(ErrorKind::InvalidArc, "regenerated arc " + format_arc(out) + " stays in one cluster");
  return out;
}

MonodromyRep make_monodromy(int degree, const std::vector<std::vector<int>>& cycles) {
  MonodromyRep r{degree, {}};
  for (const auto& c : cycles) {
    if (c.size() != 2 || c[0] == c[1] || c[0] < 1 || c[1] < 1 || c[0] > degree || c[1] > degree) {
      std::string s;
      for (int x : c) s += (s.empty() ? "" : " ") + std::to_string(x);
      throw Error(ErrorKind::NotTransposition, "(" + s + ") in degree " + std::to_string(degree));
    }
    r.transpositions.push_back({c[0], c[1]});
  }
  return r;
}

std::vector<int> total_product(const MonodromyRep& r) {
  std::vector<int> perm(r.degree);
  std::iota(perm.begin(), perm.end(), 1);
  for (auto [a, b] : r.transpositions)
    for (int& p : perm) {
      if (p == a) p = b;
      else if (p == b) p = a;
    }
  return perm;
}

MonodromyRep fn_monodromy() {
  std::vector<std::vector<int>> cycles;
  for (auto c : std::vector<std::vector<int>>{{1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 7}, {5, 6}, {5, 8}, {7, 8}, {7, 9}}) {
    cycles.push_back(c);
    cycles.push_back(c);
  }
  return make_monodromy(9, cycles);
}

CoverInvariants cover_invariants(const MonodromyRep& r) {
  std::vector<int> parent(r.degree + 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : r.transpositions) {
    if (a < 1 || b < 1 || a > r.degree || b > r.degree || a == b)
      throw Error(ErrorKind::NotTransposition, "(" + std::to_string(a) + " " + std::to_string(b) + ")");
    parent[find(parent, a)] = find(parent, b);
  }
  CoverInvariants c;
  for (int j = 1; j <= r.degree; ++j) c.components += find(parent, j) == j;
  c.connected = c.components == 1;
  c.euler = 2 * r.degree - static_cast<int>(r.transpositions.size());
  c.genus = (2 * c.components - c.euler) / 2;
  c.boundary = r.degree;
  return c;
}

std::string format_braid(const BraidWord& b) {
  std::ostringstream os;
  os << "d=" << b.strands << " :";
  for (int g : b.gens) os << ' ' << g;
  return os.str();
}

namespace {

std::pair<std::vector<std::string>, std::vector<int>> split_header(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "missing ':' in '" + text + "'");
  std::vector<int> gens;
  for (const auto& t : split_ws(text.substr(colon + 1))) gens.push_back(parse_int(t));
  return {split_ws(text.substr(0, colon)), gens};
}

int header_int(const std::vector<std::string>& toks, const std::string& key, const std::string& text) {
  auto v = kv(toks, key);
  if (!v) throw Error(ErrorKind::ParseError, "missing " + key + "= in '" + text + "'");
  return parse_int(*v);
}

}  // namespace

BraidWord parse_braid(const std::string& text) {
  auto [head, gens] = split_header(text);
  return make_braid(header_int(head, "d", text), gens);
}

std::string format_arc(const ArcRef& a) {
  std::ostringstream os;
  os << "d=" << a.carrier.strands << " i=" << a.index << " :";
  for (int g : a.carrier.gens) os << ' ' << g;
  return os.str();
}

ArcRef parse_arc(const std::string& text) {
  auto [head, gens] = split_header(text);
  return make_arc(make_braid(header_int(head, "d", text), gens), header_int(head, "i", text));
}

std::string format_monodromy(const MonodromyRep& r) {
  std::ostringstream os;
  os << "n " << r.degree << '\n';
  for (auto [a, b] : r.transpositions) os << '(' << a << ' ' << b << ")\n";
  return os.str();
}

MonodromyRep parse_monodromy(const std::string& text) {
  int degree = -1;
  std::vector<std::vector<int>> cycles;
  for (const auto& raw : split_lines(text)) {
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (degree < 0) {
      auto toks = split_ws(line);
      if (toks.size() != 2 || toks[0] != "n") throw Error(ErrorKind::ParseError, "expected 'n <degree>'");
      degree = parse_int(toks[1]);
      continue;
    }
    if (line.front() != '(' || line.back() != ')') throw Error(ErrorKind::ParseError, "bad cycle '" + line + "'");
    auto body = line.substr(1, line.size() - 2);
    std::vector<int> c;
    auto toks = split_ws(body);
    if (toks.size() == 1 && degree < 10) {
      for (char ch : toks[0]) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw Error(ErrorKind::ParseError, "bad cycle '" + line + "'");
        c.push_back(ch - '0');
      }
    } else {
      for (const auto& t : toks) c.push_back(parse_int(t));
    }
    cycles.push_back(c);
  }
  if (degree < 1) throw Error(ErrorKind::ParseError, "missing degree");
  return make_monodromy(degree, cycles);
}

}  // namespace torel
