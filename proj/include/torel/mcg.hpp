#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "torel/atlas.hpp"
#include "torel/surface.hpp"

namespace torel {

struct TwistGen {
  std::string name;
  int power = 1;
  bool operator==(const TwistGen&) const = default;
};

// Product of twists in functional order: the rightmost twist acts first.
struct GeneratorWord {
  std::vector<TwistGen> gens;

  bool empty() const { return gens.empty(); }
  bool operator==(const GeneratorWord&) const = default;
};

GeneratorWord make_generator_word(const std::vector<TwistGen>& raw);  // merges equal neighbours
GeneratorWord operator*(const GeneratorWord& u, const GeneratorWord& v);
GeneratorWord inverse(const GeneratorWord& w);
std::string format_generator_word(const GeneratorWord& w);  // "a1,~b,b2^3" ; "1" when empty
GeneratorWord parse_generator_word(const std::string& text);

class MappingClass {
 public:
  MappingClass() = default;
  explicit MappingClass(const SurfaceSig& s);  // identity
  // fwd[g] and bwd[g] are the images of generator g under f and f^-1.
  MappingClass(const SurfaceSig& s, std::vector<Word> fwd, std::vector<Word> bwd);

  const SurfaceSig& surface() const { return s_; }
  const Word& image(int g) const { return fwd_[g]; }
  const std::vector<Word>& images() const { return fwd_; }

  Word apply(const Word& w) const;
  std::vector<Letter> apply_letters(const std::vector<Letter>& w) const;
  Curve apply(const Curve& c) const;

  MappingClass inverse() const;
  bool is_identity() const;
  // fwd and bwd really are mutually inverse on every generator
  bool inverse_consistent() const;
  std::size_t total_length() const;
  std::uint64_t hash() const;

  bool operator==(const MappingClass& o) const { return s_ == o.s_ && fwd_ == o.fwd_; }

 private:
  SurfaceSig s_;
  std::vector<Word> fwd_;
  std::vector<Word> bwd_;
};

MappingClass compose(const MappingClass& f, const MappingClass& g);  // f after g
MappingClass power(const MappingClass& f, int p);
bool equals(const MappingClass& f, const MappingClass& g);

// Twist along an atlas curve: every crossing of a generating path with the
// curve inserts the based curve word raised to (sign * power).
MappingClass twist_from_data(const SurfaceSig& s, const AtlasCurve& c, int power);

// Conjugation law: twist along f(c) is f t_c f^-1.
MappingClass conjugate(const MappingClass& f, const MappingClass& t);

using IntMatrix = std::vector<std::vector<long>>;

// Action on H_1 in the basis ([m_1], [s_1...s_k], [e_1], ..., [e_{k-1}]).
IntMatrix homology_matrix(const MappingClass& f);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(std::size_t n);
long determinant(IntMatrix m);
// x -> x + p * <x,[c]> [c], the homology action of t_c^p.
IntMatrix transvection(const std::vector<long>& c, int p);

// Throws InvariantViolation naming the first curve whose twist disagrees
// with its transvection or fails to fix the boundary loops.
void check_homology(const Atlas& a);

// Resolves atlas names to twists and caches them.  The cache is read-through.
class Realizer {
 public:
  explicit Realizer(AtlasPtr atlas);

  const Atlas& atlas() const { return *atlas_; }
  AtlasPtr atlas_ptr() const { return atlas_; }
  const SurfaceSig& surface() const { return atlas_->surface(); }

  MappingClass twist(const std::string& name, int power = 1) const;
  MappingClass realize(const GeneratorWord& w) const;
  Curve curve(const std::string& name) const { return atlas_->get(name).curve; }
  Curve apply_to_curve(const MappingClass& f, const Curve& c) const;

 private:
  AtlasPtr atlas_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::string, int>, MappingClass> cache_;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

// Braid relations, commutations, boundary centrality, a bounded free-abelian
// sample for the boundary twists and the homology oracle.  Never throws for
// failing checks; each failure carries a witness.
std::vector<CheckResult> validate_model(const Atlas& a);

}  // namespace torel

template <>
struct std::hash<torel::MappingClass> {
  std::size_t operator()(const torel::MappingClass& f) const { return f.hash(); }
};
