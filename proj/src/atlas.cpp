#include "torel/atlas.hpp"

#include <fstream>
#include <sstream>

#include "torel/mcg.hpp"
#include "torel/text.hpp"

namespace torel {

Atlas::Atlas(SurfaceSig s, std::vector<AtlasCurve> entries) : surface_(s), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].name, i).second)
      throw Error(ErrorKind::InvariantViolation, "duplicate curve name '" + entries_[i].name + "'");
  }
}

const AtlasCurve& Atlas::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorKind::UnknownCurve, name);
  return entries_[it->second];
}

std::vector<std::string> Atlas::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

AtlasCurve make_atlas_curve(const SurfaceSig& s, const std::string& name, std::vector<Letter> word,
                            CrossingData crossings) {
  AtlasCurve c;
  c.name = name;
  c.word = std::move(word);
  c.crossings = std::move(crossings);
  c.crossings.resize(s.gen_count());
  c.curve = canonical_cyclic(c.word);
  return c;
}

AtlasCurve make_atlas_curve(const SurfaceSig& s, const std::string& name, const CrossingSeq& seq) {
  return make_atlas_curve(s, name, crossing_word(s, seq), crossing_data(s, seq));
}

Atlas standard_atlas(int holes) {
  SurfaceSig s{1, holes};
  check_surface(s);
  std::vector<AtlasCurve> entries;
  for (const auto& name : standard_curve_names(s)) entries.push_back(make_atlas_curve(s, name, standard_curve(s, name)));
  Atlas a(s, std::move(entries));
  a.label = "std" + std::to_string(holes);
  return a;
}

void check_structure(const Atlas& a) {
  const SurfaceSig& s = a.surface();
  for (const auto& e : a.entries()) {
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::InvariantViolation, "curve " + e.name + ": " + what);
    };
    std::size_t n = e.word.size();
    if (n == 0) fail("empty word");
    for (std::size_t i = 0; i < n; ++i)
      if (s.target(e.word[i]) != s.source(e.word[(i + 1) % n])) fail("word is not a closed path");
    if (static_cast<int>(e.crossings.size()) != s.gen_count()) fail("crossing table has wrong size");
    for (const auto& pc : e.crossings)
      for (const auto* side : {&pc.pre, &pc.post})
        for (auto [rot, sign] : *side) {
          if (rot < 0 || rot >= static_cast<int>(n)) fail("crossing rotation out of range");
          if (sign != 1 && sign != -1) fail("crossing sign must be +1 or -1");
        }
    // algebraic crossing number with each boundary loop e_i
    std::vector<long> total(s.gen_count(), 0);
    for (int g = 0; g < s.gen_count(); ++g)
      for (const auto* side : {&e.crossings[g].pre, &e.crossings[g].post})
        for (auto [rot, sign] : *side) total[g] += sign;
    for (int i = 1; i <= s.holes; ++i) {
      long alg = total[SurfaceSig::m(i)] - total[SurfaceSig::m(s.prev(i))];
      if (alg != 0) fail("nonzero algebraic crossing with boundary loop e" + std::to_string(i));
    }
    if (e.name.rfind("delta", 0) == 0) {
      int i = 0;
      try {
        i = std::stoi(e.name.substr(5));
      } catch (...) {
        fail("malformed boundary curve name");
      }
      if (i < 1 || i > s.holes) fail("boundary index out of range");
      if (!(e.curve == canonicalize(boundary_word(s, i)))) fail("does not match boundary_word(" + std::to_string(i) + ")");
    }
  }
}

std::string format_crossings(const SurfaceSig& s, const CrossingData& d) {
  std::string out;
  auto entry = [](std::pair<int, int> x) { return std::string(x.second > 0 ? "+" : "-") + std::to_string(x.first); };
  for (int g = 0; g < s.gen_count(); ++g) {
    const auto& pc = d[g];
    if (pc.pre.empty() && pc.post.empty()) continue;
    if (!out.empty()) out += ';';
    out += s.gen_name(g) + ':';
    for (std::size_t i = 0; i < pc.pre.size(); ++i) out += (i ? "," : "") + entry(pc.pre[i]);
    out += '|';
    for (std::size_t i = 0; i < pc.post.size(); ++i) out += (i ? "," : "") + entry(pc.post[i]);
  }
  return out.empty() ? "-" : out;
}

CrossingData parse_crossings(const SurfaceSig& s, const std::string& text) {
  CrossingData d(s.gen_count());
  if (text == "-") return d;
  auto parse_entry = [](const std::string& tok) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
      throw Error(ErrorKind::ParseError, "crossing entry '" + tok + "'");
    int rot = parse_int(tok.substr(1));
    return std::pair<int, int>{rot, tok[0] == '+' ? 1 : -1};
  };
  std::vector<bool> seen(s.gen_count(), false);
  for (const auto& part : split(text, ';')) {
    auto colon = part.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "crossing group '" + part + "'");
    Letter l = s.parse_letter(part.substr(0, colon));
    if (l < 0) throw Error(ErrorKind::ParseError, "crossing group on an inverse letter");
    int g = gen_of(l);
    if (seen[g]) throw Error(ErrorKind::ParseError, "repeated crossing group " + s.gen_name(g));
    seen[g] = true;
    std::string body = part.substr(colon + 1);
    auto bar = body.find('|');
    std::string pre = bar == std::string::npos ? body : body.substr(0, bar);
    std::string post = bar == std::string::npos ? "" : body.substr(bar + 1);
    for (const auto& tok : split(pre, ',')) d[g].pre.push_back(parse_entry(tok));
    for (const auto& tok : split(post, ',')) d[g].post.push_back(parse_entry(tok));
  }
  return d;
}

Atlas load_atlas_unchecked(const std::string& text) {
  std::optional<SurfaceSig> surface;
  std::vector<AtlasCurve> entries;
  int lineno = 0;
  for (const auto& raw : split_lines(text)) {
    ++lineno;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto toks = split_ws(line);
    auto where = " (line " + std::to_string(lineno) + ")";
    if (toks[0] == "surface") {
      if (surface) throw Error(ErrorKind::ParseError, "second surface header" + where);
      surface = parse_surface_header(toks);
      continue;
    }
    if (!surface) throw Error(ErrorKind::ParseError, "missing surface header" + where);
    if (toks[0] != "curve" || toks.size() < 2) throw Error(ErrorKind::ParseError, "expected 'curve'" + where);
    // curve <name> word=<letters> crossings=<groups>; letters are space separated
    auto wpos = line.find("word=");
    auto cpos = line.find("crossings=");
    if (wpos == std::string::npos || cpos == std::string::npos || cpos < wpos)
      throw Error(ErrorKind::ParseError, "curve needs word= then crossings=" + where);
    std::string word_text = trim(line.substr(wpos + 5, cpos - wpos - 5));
    std::string cross_text = trim(line.substr(cpos + 10));
    std::vector<Letter> word = parse_letters(*surface, word_text);
    entries.push_back(make_atlas_curve(*surface, toks[1], word, parse_crossings(*surface, cross_text)));
  }
  if (!surface) throw Error(ErrorKind::ParseError, "missing surface header");
  check_surface(*surface);
  return Atlas(*surface, std::move(entries));
}

Atlas load_atlas(const std::string& text) {
  Atlas a = load_atlas_unchecked(text);
  check_structure(a);
  check_homology(a);
  return a;
}

Atlas load_atlas_file(const std::string& path) {
  Atlas a = load_atlas(read_file(path));
  a.label = stem_of(path);
  return a;
}

std::string save_atlas(const Atlas& a) {
  const SurfaceSig& s = a.surface();
  std::ostringstream out;
  out << s.describe() << "\n";
  for (const auto& e : a.entries()) {
    out << "curve " << e.name << " word=" << format_letters(s, e.word)
        << " crossings=" << format_crossings(s, e.crossings) << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << text;
}

}  // namespace torel
