#pragma once

// Constructors for the k-graph families: path 1-graphs of digraphs, direct
// products, the two-colour theta product, higher-rank cycles, single-vertex
// k-graphs from permutation families, and the transpose.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/core.hpp"

namespace kgraph {

struct Digraph {
    struct Arrow {
        std::string id;
        std::string src;
        std::string dst;
    };
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
};

/// For each colour pair (i, j), i < j, a permutation of the n_i * n_j products
/// e_p^(i) e_q^(j) enumerated as index (p-1)*n_j + (q-1); entry t is the 0-based
/// index of the image product. Missing pairs mean the identity permutation.
struct ThetaFamily {
    std::map<std::pair<int, int>, std::vector<int>> tables;

    static ThetaFamily identity() { return {}; }
    /// t -> t+1 mod n_i n_j for every colour pair.
    static ThetaFamily full_cycle(const std::vector<int>& sizes);

    /// Image of product index t for colours (i, j); identity when unset.
    int image(int i, int j, int t) const;
};

/// Explicit theta for theta_product: the A-edge applied after the B-edge equals
/// the B-edge applied after the A-edge.
struct ThetaPair {
    std::string a;        // colour 1
    std::string b;        // colour 2
    std::string b_prime;  // colour 2
    std::string a_prime;  // colour 1
};

KGraph from_digraph(const Digraph& g);

/// The loop graph on one vertex "v" with n edges e1..en (F_n; C_1 when n = 1).
KGraph free_loops(int n);
/// The directed cycle x1 -> x2 -> ... -> xn -> x1 with edges e1..en.
KGraph directed_cycle(int n);

/// Coordinate-interchange squares only. Every input must be a 1-graph.
KGraph direct_product(const std::vector<KGraph>& factors);

/// Throws ConstructionError on vertex-set mismatch, cardinality mismatch, or a theta
/// that is not a bijection between the composable mixed pairs.
KGraph theta_product(const KGraph& a, const KGraph& b, const std::vector<ThetaPair>& theta);

/// Number of bijections theta admissible for theta_product(a, b, .): the product over
/// vertex pairs of |E(v2,v1)|!, or 0 when some cardinalities differ.
unsigned long long count_admissible_thetas(const KGraph& a, const KGraph& b);

/// n vertices x1..xn, k colours of edges x_i -> x_{i+1}, squares e^s_{i+1} e^r_i = e^r_{i+1} e^s_i.
/// Edge names: colour letters e, f, g, ... followed by the index (e1, f2, ...).
KGraph cycle_rank(int n, int k);

/// One vertex "v"; colour i has sizes[i-1] loops named by the colour letter a, b, c, ...
/// (suffixed with 1..n_i when n_i > 1).
KGraph single_vertex(const std::vector<int>& sizes, const ThetaFamily& theta);

/// Every edge reversed; squares transported so that (ab)^t = b^t a^t. Edge ids are kept.
KGraph transpose(const KGraph& g);

/// The word of the transposed path (reversed), valid in transpose(g).
Path transpose_path(const KGraph& gt, const Path& p);

/// The 2-graph of the three-vertex example: a1, a2 (colour 1), b1, b2 (colour 2),
/// x1 -> x2 -> x3, and the single relation b2 a1 = a2 b1.
KGraph example_acyclic_two_graph();

}  // namespace kgraph
