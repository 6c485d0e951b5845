#pragma once

// Concrete picture behind the word algebra.  A curve in general position is
// the cyclic list of its crossings with the cut arcs; between two crossings it
// runs as a chord of one rectangle.  Each rectangle boundary is parametrised
// counter-clockwise by t in [0,4): bottom (0,1), right (1,2), top (2,3),
// left (3,4).  The integer points are the hole corners, and p_i sits at the
// corner t = 0 of R_i.  A crossing at fraction f of its arc sits at
//   bottom 0.1+0.8f   right 1.1+0.8f   top 2.9-0.8f   left 3.9-0.8f
// so f -> 0 is the end of the arc next to p_i.

#include <string>
#include <vector>

#include "torel/surface.hpp"

namespace torel {

struct Crossing {
  char arc = 'u';  // 'u' vertical cut arc, 'v' horizontal cut arc
  int index = 1;
  double frac = 0.5;
  int dir = 1;  // +1: rightward across u, upward across v
};

using CrossingSeq = std::vector<Crossing>;

// Transversal crossings of one generating path with a curve.  Each entry is
// (rotation, sign): the based loop is the curve word rotated to start at
// `rotation`, inserted with exponent `sign`.  Entries before the generator
// letter lie on the half of the path leaving its source; `post` entries on
// the half entering its target.
struct PathCrossings {
  std::vector<std::pair<int, int>> pre;
  std::vector<std::pair<int, int>> post;
  bool operator==(const PathCrossings&) const = default;
};

using CrossingData = std::vector<PathCrossings>;  // indexed by generator

Letter crossing_letter(const SurfaceSig& s, const Crossing& c);
std::vector<Letter> crossing_word(const SurfaceSig& s, const CrossingSeq& seq);

// Throws InvariantViolation if consecutive crossings do not share a rectangle.
CrossingData crossing_data(const SurfaceSig& s, const CrossingSeq& seq);

// True when no two chords of the curve cross inside a rectangle.
bool is_embedded(const SurfaceSig& s, const CrossingSeq& seq);

// Places the crossings of a cyclically reduced word so that the chords are
// pairwise disjoint.  Succeeds for words of simple closed curves; throws
// InvariantViolation when no consistent strand order exists.
CrossingSeq embed_word(const SurfaceSig& s, const std::vector<Letter>& cyclic);

// Puts two distinct cyclically reduced curves on the surface together, each
// strand ordered as in embed_word, and counts the chord crossings.  Zero
// certifies disjointness; one certifies a single transverse crossing.
// Returns -1 when the curves run parallel (same curve).
int joint_crossings(const SurfaceSig& s, const std::vector<Letter>& x, const std::vector<Letter>& y);

// The standard curves a_i, b, b_i, delta_i.
CrossingSeq standard_curve(const SurfaceSig& s, const std::string& name);
std::vector<std::string> standard_curve_names(const SurfaceSig& s);

}  // namespace torel
