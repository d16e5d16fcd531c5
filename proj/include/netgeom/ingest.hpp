#pragma once

#include "netgeom/netcore.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace netgeom {

struct ParseDiagnostic {
    enum class Severity { Warning, Error };
    long line = 0;
    std::string message;
    Severity severity = Severity::Warning;
};

// Edge-list format: lines "u v [w]" with 0-based integer ids, optional
// positive decimal weight (default 1.0), '#' starts a comment, blank lines
// ignored.  A leading "# n=N" comment pins the node count so isolated nodes
// survive a round trip.  Errors throw ParseError with a line number;
// warnings (duplicate edges, last weight wins) are appended to diags.
Graph parse_edge_list(std::string_view text, std::vector<ParseDiagnostic>* diags = nullptr);

// GML subset: a top-level "graph [ ... ]" block containing node [ id N ]
// and edge [ source A target B (value W)? ] entries; unknown keys and
// nested blocks are skipped.  Node ids are remapped to 0..n-1 in file
// order; missing value means weight 1.0; edges are symmetrized.
Graph parse_gml(std::string_view text, std::vector<ParseDiagnostic>* diags = nullptr);

// Inverse of parse_edge_list: "# n=N" header plus one line per edge, weights
// printed with round-trip precision (and omitted when exactly 1).
std::string write_edge_list(const Graph& g);

} // namespace netgeom
