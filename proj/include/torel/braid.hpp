#pragma once

// Braids on the d-punctured disk, acting on the free group <x_1..x_d> by
//   sigma_i:  x_i -> x_i x_{i+1} x_i^-1,  x_{i+1} -> x_i.
// A braid word is read left to right as composition f after g, so the word
// "1 2" acts as sigma_1 after sigma_2.  Sphere relations are not imposed.

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace torel {

struct BraidWord {
  int strands = 2;
  std::vector<int> gens;  // +-i for sigma_i^{+-1}, 1 <= i < strands

  bool operator==(const BraidWord&) const = default;  // literal, see braid_equals
};

using FreeWord = std::vector<int>;  // +-j for x_j^{+-1}

BraidWord make_braid(int strands, std::vector<int> gens);  // validates indices
BraidWord identity_braid(int strands);
BraidWord operator*(const BraidWord& a, const BraidWord& b);  // StrandMismatch
BraidWord inverse(const BraidWord& b);

FreeWord free_reduce(const FreeWord& w);
// Images of x_1..x_d, freely reduced.
std::vector<FreeWord> artin_action(const BraidWord& b);
FreeWord apply_action(const std::vector<FreeWord>& images, const FreeWord& w);
bool braid_equals(const BraidWord& a, const BraidWord& b);  // StrandMismatch
// Where each puncture goes: perm[j-1] is the image of puncture j.
std::vector<int> braid_permutation(const BraidWord& b);

struct ArcRef {
  BraidWord carrier;
  int index = 1;  // standard arc joining punctures index, index+1
};

ArcRef make_arc(const BraidWord& carrier, int index);
ArcRef act(const BraidWord& g, const ArcRef& a);
BraidWord half_twist(const ArcRef& a);
bool arc_equals(const ArcRef& a, const ArcRef& b);
std::pair<int, int> arc_endpoints(const ArcRef& a);  // sorted
// tau_gamma^-1 applied to a
ArcRef inverse_half_twist(const ArcRef& gamma, const ArcRef& a);

struct SixPointInput {
  ArcRef beta;
  std::array<ArcRef, 4> gamma;
  ArcRef beta1, beta6;  // figure data
};

// beta_1..beta_6 around a type M 6-point.
std::array<ArcRef, 6> regenerate_six_point(const SixPointInput& in);

// Local model of a doubled line pair: punctures of one line are cluster_a,
// those of the other cluster_b.  `base` is the standard index of the
// incoming arc and `after` the outgoing arc relative to it.
struct TwoPointModel {
  int strands = 4;
  std::array<int, 2> cluster_a{1, 2};
  std::array<int, 2> cluster_b{3, 4};
  int base = 2;
  ArcRef after;
};

// 1, 1', 2, 2' in a row; the outgoing arc joins 1' and 2.
TwoPointModel standard_two_point_model();
// Throws InvalidArc unless both the input and the result join the clusters.
ArcRef regenerate_two_point(const ArcRef& beta, const TwoPointModel& model);

struct MonodromyRep {
  int degree = 2;
  std::vector<std::pair<int, int>> transpositions;
};

MonodromyRep make_monodromy(int degree, const std::vector<std::vector<int>>& cycles);  // NotTransposition
std::vector<int> total_product(const MonodromyRep& r);  // first entry applied first
MonodromyRep fn_monodromy();

struct CoverInvariants {
  bool connected = false;
  int components = 0;
  int euler = 0;
  int genus = 0;     // total over components
  int boundary = 0;  // preimages of one unbranched point
};

CoverInvariants cover_invariants(const MonodromyRep& r);

// "d=4 : 1 -2 3"; the arc form adds the index: "d=4 i=2 : 1 -2 3".
std::string format_braid(const BraidWord& b);
BraidWord parse_braid(const std::string& text);
std::string format_arc(const ArcRef& a);
ArcRef parse_arc(const std::string& text);
// "n 9" then one cycle per line, "(1 2)" or "(12)" when every label is a digit.
std::string format_monodromy(const MonodromyRep& r);
MonodromyRep parse_monodromy(const std::string& text);

}  // namespace torel
