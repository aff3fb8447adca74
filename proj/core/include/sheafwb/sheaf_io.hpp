#pragma once

#include <map>
#include <string>
#include <string_view>

#include "sheafwb/sheaf.hpp"

namespace sheafwb {

// A sheaf together with the sections named in its file.
struct SheafDocument {
  SheafOfStructures sheaf;
  std::map<std::string, Section> sections;
};

// Sheaf text, one declaration per line, `#` comments:
//   use <site-file>                     (or inline `node` / `le` lines)
//   sort <node>: e1 e2 ...
//   map <x> <y>: e -> e' ...
//   rel <R>[/n] <node>: (e,...) ...     (bare elements for unary relations; unary if never fixed)
//   fun <f> <node>: (e,...) -> e ...
//   const <c> <node>: e
//   section <s>: <node>->e ...
// `use` paths are resolved against `base_dir`.
SheafDocument parse_sheaf(std::string_view text, const std::string& base_dir = ".",
                          bool infer_transitions = true);
SheafDocument load_sheaf(const std::string& path, bool infer_transitions = true);

}  // namespace sheafwb
