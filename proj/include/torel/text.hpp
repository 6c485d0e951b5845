#pragma once

// Line-format helpers shared by the file readers.

#include <optional>
#include <string>
#include <vector>

#include "torel/surface.hpp"

namespace torel {

std::vector<std::string> split_lines(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);  // drops empty pieces
std::vector<std::string> split_ws(const std::string& text);
std::string trim(const std::string& s);
std::string strip_comment(const std::string& line);
int parse_int(const std::string& s);
std::string stem_of(const std::string& path);

// "surface genus=1 holes=9" as tokens
SurfaceSig parse_surface_header(const std::vector<std::string>& toks);

// key=value lookup among tokens; nullopt if absent
std::optional<std::string> kv(const std::vector<std::string>& toks, const std::string& key);

}  // namespace torel
