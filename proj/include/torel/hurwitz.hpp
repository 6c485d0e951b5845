#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torel/mcg.hpp"

namespace torel {

using RealizerPtr = std::shared_ptr<const Realizer>;

// Positive twist along realize(conj)(base).
struct TwistFactor {
  std::string base;
  GeneratorWord conj;
};

class Factorization {
 public:
  struct Entry {
    TwistFactor factor;
    MappingClass twist;
    Curve curve;
  };

  using EntryPtr = std::shared_ptr<const Entry>;

  Factorization() = default;
  // target: boundary indices of the multi-twist, normally 1..k
  Factorization(RealizerPtr r, const std::vector<TwistFactor>& factors, std::vector<int> target);
  Factorization(RealizerPtr r, std::vector<EntryPtr> entries, std::vector<int> target);

  const SurfaceSig& surface() const { return r_->surface(); }
  const RealizerPtr& realizer() const { return r_; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<EntryPtr>& entries() const { return entries_; }
  const Entry& at(std::size_t i) const { return *entries_[i]; }
  const std::vector<int>& target() const { return target_; }

  std::vector<std::string> bases() const;

 private:
  RealizerPtr r_;
  std::vector<EntryPtr> entries_;
  std::vector<int> target_;
};

std::vector<int> full_target(int holes);
Factorization::EntryPtr realize_factor(const Realizer& r, const TwistFactor& f);

MappingClass product(const Factorization& f);  // leftmost factor applied last
MappingClass target_twist(const Factorization& f);
bool is_relation(const Factorization& f);
bool factorwise_equal(const Factorization& f, const Factorization& g);

enum class Side { Left, Right };

// Positions are 1-based; the pair is (i, i+1).
// Left:  (x, y) -> (x y x^-1, x)      Right: (x, y) -> (y, y^-1 x y)
Factorization hurwitz_move(const Factorization& f, int i, Side side);
Factorization global_conjugate(const Factorization& f, const GeneratorWord& g);
// Moves the first j factors to the end.
Factorization cyclic_rotate(const Factorization& f, int j);

inline const std::string kIdentity = "IDENTITY";

struct RelabelMap {
  std::string name;
  std::map<std::string, std::string> dict;  // atlas name -> atlas name or kIdentity
};

// Index shift by `shift` on the standard atlas: a_i, b_i, delta_i move to
// index i+shift (mod k), b is fixed.
RelabelMap rotation_map(const SurfaceSig& s, int shift);
// Capping hole j of the standard atlas: delta_j dies, b_j becomes b,
// a_{j+1} merges with a_j (a_k with a_1 when j = k), higher indices shift down.
RelabelMap standard_cap_dict(const SurfaceSig& s, int hole);

Factorization relabel(const Factorization& f, const RelabelMap& m);
// Throws InvalidDictionary when m is not total on the atlas, names unknown
// curves, or breaks a sampled braid/commutation relation.
void check_cap_dict(const Realizer& from, const Realizer& to, int hole, const RelabelMap& m);
Factorization cap(const Factorization& f, int hole, const RelabelMap& m, RealizerPtr target_atlas);

// One-line factor syntax: "b4" or "b4@~a5" (base, then conjugator word).
TwistFactor parse_factor_token(const std::string& tok);
std::string format_factor_token(const TwistFactor& f);
std::string format_factors(const Factorization& f);  // space separated tokens

using AtlasLookup = std::function<RealizerPtr(const std::string& name, const SurfaceSig& s)>;

// File format (README): surface header, optional `atlas <name>` (default
// std<k>), `target ∂<k>` or `target delta1 delta3 ...`, then
// `factor base=<name> conj=<word>` lines in written order.
Factorization parse_factorization(const std::string& text, const AtlasLookup& lookup);
std::string format_factorization(const Factorization& f);

struct Step {
  enum class Kind { L, R, Conj, Rot, Relabel, Cap };
  Kind kind = Kind::L;
  int index = 0;
  GeneratorWord word;
  std::string name;
};

struct MoveScript {
  std::vector<Step> steps;
};

std::string format_step(const Step& s);
std::string format_script(const MoveScript& s);
MoveScript parse_script(const std::string& text);

// Resolves the names used by RELABEL and CAP steps.
class StepResolver {
 public:
  virtual ~StepResolver() = default;
  virtual RelabelMap relabel_map(const std::string& name, const Factorization& f) = 0;
  virtual RelabelMap cap_dict(const std::string& name, const Factorization& f, int hole) = 0;
  virtual RealizerPtr capped_atlas(const Factorization& f, int hole) = 0;
};

// Built-in names only: rot+N / rot-N and the std capping dictionary, with
// standard atlases generated from the geometry.
class BuiltinResolver : public StepResolver {
 public:
  RelabelMap relabel_map(const std::string& name, const Factorization& f) override;
  RelabelMap cap_dict(const std::string& name, const Factorization& f, int hole) override;
  RealizerPtr capped_atlas(const Factorization& f, int hole) override;

 private:
  std::map<int, RealizerPtr> atlases_;
};

Factorization apply_step(const Factorization& f, const Step& step, StepResolver& res);

using StepObserver = std::function<void(std::size_t step, const Factorization&)>;

// Applies the script, checking is_relation after every step.  Throws
// Error(StepFailure) naming the 1-based step on any failure.
Factorization replay(const Factorization& f, const MoveScript& s, StepResolver& res,
                     const StepObserver& observe = nullptr);

struct SearchOptions {
  bool rotations = true;               // treat cyclic rotations as free (needs a relation)
  std::vector<std::string> relabels;   // extra symmetry moves
  int max_depth = -1;                  // -1: unlimited
};

struct SearchResult {
  bool found = false;
  bool budget_exhausted = false;
  MoveScript script;
  std::size_t expanded = 0;
};

// Breadth-first search over Hurwitz moves (position ascending, left before
// right), optional relabelings, with states keyed by factor curve hashes
// minimised over rotation.  The target must have the same length.
SearchResult search_equivalence(const Factorization& f, const Factorization& g, std::size_t budget,
                                const SearchOptions& opt, StepResolver& res);

}  // namespace torel
