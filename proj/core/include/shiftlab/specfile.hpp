#pragma once

#include <string>

#include "shiftlab/subshift.hpp"

namespace shiftlab {

/// A parsed and validated subshift file together with its canonical form.
/// The hash is the SHA-256 of the normalized text, so it is stable across
/// key order and formatting.
struct SpecFile {
  Subshift shift;
  std::string normalized;
  std::string hash;
};

/// Parses the structured-text subshift format:
///
///   name     = "golden-mean"            # optional
///   group    = "Z"                      # Z | Z^d | F_k
///   alphabet = ["0", "1"]
///   gf2      = true                     # optional, default false
///   rule     = "forbidden"              # forbidden | linear-gf2 | predicate
///   forbidden = [[["0", "1"], ["1", "1"]]]   # patterns as [site, symbol]
///   linear    = [["e", "a", "A", "b", "B"]]  # supports as site lists
///   predicate = "sunny-side-up"
///   notes     = "free text"             # optional
///
/// Sites are integer vectors ("[1,-2]", bare integers for Z) or reduced
/// words ("abA", capitals for inverses, "e" for the identity).
/// Throws ParseError with a 1-based line number on bad input.
SpecFile parse_spec_text(const std::string& text);
SpecFile load_spec_file(const std::string& path);

/// Canonical serialization: fixed key order, sorted rule payloads.
std::string serialize_spec(const Subshift& shift);
SpecFile spec_file_for(const Subshift& shift);

std::string sha256_hex(const std::string& data);

/// Finite-set descriptor grammar shared by the CLI and the zoo manifest:
/// "ball:3", "box:4" (Z^d only), or "set:[e,a,ab]" / "set:[0,1]" /
/// "set:[[0,0],[1,0]]".
FiniteSubset parse_set_descriptor(const Group& group, const std::string& text);

}  // namespace shiftlab
