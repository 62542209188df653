#pragma once

#include "cadist/ca_structure.hpp"

namespace cadist {

/// LSB-first zigzag binary: code k encodes k/2 when even, -(k+1)/2 when odd.
/// Canonical code words are the empty word or end in 1.
Int zigzag_decode(const Word& w);
Word zigzag_encode(const Int& v);

namespace builders {

/// Canonical LSB-first binary codes over {0,1}: empty or ending in 1.
SyncAutomaton canonical_binary_language();
/// (u, v) canonical with value(v) = value(u) + 1 in plain binary.
SyncAutomaton natural_increment();
SyncAutomaton unary_z_language();
SyncAutomaton unary_z_increment();
/// The full t-multiplier of the zigzag Z structure: zigzag(v) = zigzag(u)+1.
SyncAutomaton zigzag_increment();
/// Cursor-marker shift for the lamplighter: 0^p 1 -> 0^p' 1 with
/// p' = zigzag-successor of the encoded cursor.
SyncAutomaton ll2_marker_shift();

}  // namespace builders

std::vector<std::string> catalog_names();
CayleyAutomaticStructure make_structure(const std::string& name);

/// Bundle: a JSON manifest naming the model and psi codec plus one JSON
/// automaton file per machine, all inside `dir`.
std::string save_structure_bundle(const CayleyAutomaticStructure& s, const std::string& dir);
CayleyAutomaticStructure load_structure_bundle(const std::string& manifest_path);

}  // namespace cadist
