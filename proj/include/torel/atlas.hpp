#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "torel/geometry.hpp"
#include "torel/surface.hpp"

namespace torel {

struct AtlasCurve {
  std::string name;
  std::vector<Letter> word;  // closed path, traversal order; rotations index into it
  CrossingData crossings;
  Curve curve;  // canonical form of word
};

class Atlas {
 public:
  Atlas() = default;
  Atlas(SurfaceSig s, std::vector<AtlasCurve> entries);

  const SurfaceSig& surface() const { return surface_; }
  const std::vector<AtlasCurve>& entries() const { return entries_; }
  bool contains(const std::string& name) const { return index_.count(name) > 0; }
  const AtlasCurve& get(const std::string& name) const;
  std::vector<std::string> names() const;

  std::string label;  // file stem or generator tag, informational only

 private:
  SurfaceSig surface_;
  std::vector<AtlasCurve> entries_;
  std::map<std::string, std::size_t> index_;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

AtlasCurve make_atlas_curve(const SurfaceSig& s, const std::string& name, const CrossingSeq& seq);
AtlasCurve make_atlas_curve(const SurfaceSig& s, const std::string& name, std::vector<Letter> word,
                            CrossingData crossings);

// The standard atlas built from the cut-system geometry.
Atlas standard_atlas(int holes);

// Structural invariants that need no mapping-class computation: closed words,
// crossing rotations in range, delta entries equal to boundary words, zero
// algebraic crossing with every boundary loop.  Throws InvariantViolation.
void check_structure(const Atlas& a);

// Text format (see README).  load_atlas runs check_structure and the
// homology transvection check; load_atlas_unchecked only parses.
Atlas load_atlas(const std::string& text);
Atlas load_atlas_unchecked(const std::string& text);
Atlas load_atlas_file(const std::string& path);
std::string save_atlas(const Atlas& a);

std::string format_crossings(const SurfaceSig& s, const CrossingData& d);
CrossingData parse_crossings(const SurfaceSig& s, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace torel
