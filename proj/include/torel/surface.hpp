#pragma once

// Word algebra on the fundamental groupoid of the holed torus.
//
// The torus is cut along k vertical arcs u_1..u_k (u_i through hole i) and
// k horizontal arcs v_1..v_k (v_i from hole i to hole i+1).  What is left is
// k rectangles; rectangle R_i carries the basepoint p_i on the boundary of
// hole i.  The generating paths are the duals of the cut arcs:
//
//   m_i  loop at p_i crossing v_i upward
//   s_i  path p_{i-1} -> p_i crossing u_i rightward   (s_1 runs p_k -> p_1)
//
// Words are stored in traversal order: the first letter is walked first.
// compose(u, v) is u after v, so it requires target(v) == source(u).

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "torel/errors.hpp"

namespace torel {

// Signed generator reference: +(g+1) or -(g+1) for generator index g.
using Letter = int;

inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline Letter letter(int g, int sign) { return sign > 0 ? g + 1 : -(g + 1); }

struct SurfaceSig {
  int genus = 1;
  int holes = 1;

  bool operator==(const SurfaceSig&) const = default;

  int gen_count() const { return 2 * holes; }
  int loop_rank() const { return 2 * genus + holes - 1; }

  int prev(int i) const { return (i + holes - 2) % holes + 1; }
  int next(int i) const { return i % holes + 1; }

  static int m(int i) { return 2 * (i - 1); }
  static int s(int i) { return 2 * (i - 1) + 1; }
  static bool is_m(int g) { return g % 2 == 0; }
  static int index_of(int g) { return g / 2 + 1; }

  int gen_source(int g) const { return is_m(g) ? index_of(g) : prev(index_of(g)); }
  int gen_target(int g) const { return index_of(g); }
  int source(Letter l) const { return l > 0 ? gen_source(gen_of(l)) : gen_target(gen_of(l)); }
  int target(Letter l) const { return l > 0 ? gen_target(gen_of(l)) : gen_source(gen_of(l)); }

  std::string gen_name(int g) const;
  std::string letter_name(Letter l) const;
  Letter parse_letter(std::string_view tok) const;  // "m3", "~s1"
  std::string describe() const;                     // "surface genus=1 holes=k"
};

void check_surface(const SurfaceSig& s);

struct Word {
  int src = 1;
  int tgt = 1;
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool is_loop() const { return src == tgt; }
  bool operator==(const Word&) const = default;
};

Word empty_word(int basepoint);

// Free reduction of a raw letter sequence; throws CompositionMismatch when
// two adjacent letters do not meet at a basepoint.
Word reduce(const SurfaceSig& s, const std::vector<Letter>& raw, int basepoint_if_empty = 1);
Word compose(const SurfaceSig& s, const Word& u, const Word& v);
Word inverse(const Word& w);
Word power(const SurfaceSig& s, const Word& loop, int p);

Word generator_word(const SurfaceSig& s, int g);
Word boundary_loop(const SurfaceSig& s, int i);  // e_i at p_i
Word connector(const SurfaceSig& s, int i);      // h_i from p_1 to p_i
Word boundary_word(const SurfaceSig& s, int i);  // e_i moved to p_1 along h_i

std::string format_letters(const SurfaceSig& s, const std::vector<Letter>& letters);
std::vector<Letter> parse_letters(const SurfaceSig& s, std::string_view text);
Word parse_word(const SurfaceSig& s, std::string_view text, int basepoint_if_empty = 1);

// Unoriented free homotopy class, stored as the lexicographically least
// cyclic rotation of the cyclically reduced word or of its inverse.
struct Curve {
  std::vector<Letter> letters;

  bool operator==(const Curve&) const = default;
  bool operator<(const Curve& o) const { return letters < o.letters; }
  bool trivial() const { return letters.empty(); }
  std::uint64_t hash() const;
};

std::vector<Letter> cyclic_reduce(std::vector<Letter> w);
Curve canonicalize(const Word& loop);
// For callers that already hold a closed letter sequence.
Curve canonical_cyclic(const std::vector<Letter>& closed);
// A based loop representing the curve.
Word curve_loop(const SurfaceSig& s, const Curve& c);

// Abelianization of a closed path, in the basis
// ([meridian m_1], [longitude s_1...s_k], [e_1], ..., [e_{k-1}]).
std::vector<long> homology_class(const SurfaceSig& s, const std::vector<Letter>& closed);
// Edge-count vector over the 2k generators.
std::vector<long> edge_vector(const SurfaceSig& s, const std::vector<Letter>& w);
std::vector<long> cycle_coordinates(const SurfaceSig& s, const std::vector<long>& edges);
// Algebraic intersection pairing on H_1 (boundary classes are in the radical).
long intersection(const std::vector<long>& x, const std::vector<long>& y);

std::uint64_t hash_letters(const std::vector<Letter>& w);

}  // namespace torel

template <>
struct std::hash<torel::Curve> {
  std::size_t operator()(const torel::Curve& c) const { return c.hash(); }
};
