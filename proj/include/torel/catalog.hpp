#pragma once

// Relations, derivation scripts and atlases shipped as data files, indexed by
// a manifest.  Layout under the catalog directory:
//
//   manifest                  one entry per line (see README)
//   atlas/<name>.atlas
//   relations/<name>.fact
//   scripts/<name>.script
//   derivations/<name>.drv    the written lines a script passes through

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torel/hurwitz.hpp"

namespace torel {

struct ManifestEntry {
  std::string kind;  // relation | case | theorem | alternate | optional
  std::string name;
  std::map<std::string, std::string> fields;

  std::string field(const std::string& key) const;  // "" when absent
};

std::vector<ManifestEntry> parse_manifest(const std::string& text);

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct VerifyLine {
  std::string name;
  std::string kind;
  Status status = Status::Pass;
  std::string detail;
};

struct VerifySummary {
  std::vector<VerifyLine> lines;
  std::size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
};

class Catalog : public StepResolver {
 public:
  // Reads <dir>/manifest; throws Error(IoError) if it is missing.
  explicit Catalog(std::string dir);

  // TOREL_CATALOG_DIR, else the data directory of the source tree.
  static std::string default_dir();

  const std::string& dir() const { return dir_; }
  const std::vector<ManifestEntry>& entries() const { return entries_; }
  const ManifestEntry& get(const std::string& name) const;  // UnknownName

  // atlas/<name>.atlas, fully validated on first use.
  RealizerPtr atlas(const std::string& name);
  bool has_atlas(const std::string& name) const;
  // Replaces an atlas for the rest of the session (mutation tests, --atlas).
  void override_atlas(const std::string& name, AtlasPtr a);
  RealizerPtr standard(int holes) { return atlas("std" + std::to_string(holes)); }

  AtlasLookup lookup();
  Factorization parse_factorization(const std::string& text);
  Factorization load_factorization(const std::string& path);
  Factorization relation(const std::string& name);  // UnknownName
  MoveScript script(const ManifestEntry& e);

  std::string path(const std::string& rel) const;

  RelabelMap relabel_map(const std::string& name, const Factorization& f) override;
  RelabelMap cap_dict(const std::string& name, const Factorization& f, int hole) override;
  RealizerPtr capped_atlas(const Factorization& f, int hole) override;

  VerifyLine verify(const std::string& name);
  VerifySummary verify_all();

 private:
  VerifyLine verify_entry(const ManifestEntry& e);

  std::string dir_;
  std::vector<ManifestEntry> entries_;
  std::map<std::string, RealizerPtr> atlases_;
};

// Derivation sources: the written lines of a computation plus the symmetry
// and capping steps between them.  Directives, one per line:
//   source <relation>       starting factorization (first line)
//   cap <j> <dict>          RELABEL, ROT and CONJ are passed through likewise
//   relabel <name>
//   rot <j>
//   conj <word>
//   = <factor tokens>       next written line; `= @<relation>` names one;
//                           `|` between tokens bounds a rewritten block
//   expect <relation>       final line, must be reached exactly
struct DerivationLine {
  std::vector<TwistFactor> factors;  // empty when `ref` is set
  std::string ref;
  std::vector<int> cuts;  // block starts, from `|`
  int source_line = 0;
};

struct Derivation {
  std::string source;
  std::string expect;
  std::vector<std::variant<Step, DerivationLine>> items;
};

Derivation parse_derivation(const std::string& text);

struct DerivedScript {
  MoveScript script;
  std::vector<std::size_t> line_steps;  // steps applied when each line is reached
};

// Finds Hurwitz moves and rotations joining consecutive lines.  Throws
// Error(StepFailure) naming the line that could not be reached.
DerivedScript derive_script(Catalog& cat, const Derivation& d, std::size_t budget = 200000);

// Curves of a written line evaluated in the atlas of `like`.
std::vector<Curve> line_curves(Catalog& cat, const DerivationLine& line, const Factorization& like);

// Every written line appears, in order, among the states of the replay.
bool lines_witnessed(Catalog& cat, const Derivation& d, const MoveScript& s, std::string* missing = nullptr);

}  // namespace torel
