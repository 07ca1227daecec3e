#pragma once

// Line-oriented text format for k-graphs:
//
//   colors 2
//   vertex x1 x2 x3
//   edge a1 : 1 x1 -> x2
//   relation b2 a1 = a2 b1     # words in composition order
//
// Errors carry the 1-based line and column of the offending token.

#include <string>
#include <string_view>
#include <vector>

#include "kgraph/core.hpp"

namespace kgraph {

struct SpecDocument {
    struct Position {
        int line = 0;
        int column = 0;
    };
    struct VertexDecl {
        std::string id;
        Position at;
    };
    struct EdgeDecl {
        std::string id;
        int color = 1;
        std::string src;
        std::string dst;
        Position at;
    };
    struct RelationDecl {
        std::string left[2];
        std::string right[2];
        Position at;
    };

    int colors = 0;
    std::vector<VertexDecl> vertices;
    std::vector<EdgeDecl> edges;
    std::vector<RelationDecl> relations;
};

/// Syntax and reference checks. Throws ParseError.
SpecDocument parse_spec(std::string_view text);

/// Builds the graph; relation-shape errors are reported at the relation's position.
KGraph to_graph(const SpecDocument& doc);

inline KGraph parse_graph(std::string_view text) { return to_graph(parse_spec(text)); }

/// Canonical text; parse_graph(serialize(g)) reproduces g.
std::string serialize(const KGraph& g);

}  // namespace kgraph
