#ifndef DIRACRED_CORE_SCENE_FILE_HPP
#define DIRACRED_CORE_SCENE_FILE_HPP

#include "scene.hpp"

namespace diracred {

/// Loads a scene from the sectioned text format and runs the construction
/// time certificates (action map validation, Dirac frame validation,
/// invariant basis checks, stratum sample checks).
///
/// Format: sections start with a bracketed header on its own line; entries
/// are `key = value` where values are quoted strings, integers, or
/// comma-separated lists in square brackets (one level of nesting for point
/// lists and presentation pairs). `#` starts a comment. Expressions are
/// quoted strings in the expression grammar.
Scene load_scene_text(const std::string& text, const std::string& scene_name);
Scene load_scene_file(const std::string& path);

/// Serializes the declared scene data (golden expectations are not part of
/// the exchange format).
std::string scene_to_text(const Scene& s);

} // namespace diracred

#endif
