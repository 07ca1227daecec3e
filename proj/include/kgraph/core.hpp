#pragma once

// Finite k-graphs presented as k-coloured multigraphs with commutation squares,
// paths in composition order, and canonical colour-block normal forms.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgraph/error.hpp"

namespace kgraph {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Edge sequence in composition order: front() is applied last, back() first.
using Word = std::vector<EdgeId>;

/// Element of Z_+^k. Compares lexicographically.
class Degree {
public:
    Degree() = default;
    explicit Degree(std::size_t rank) : entries_(rank, 0) {}
    explicit Degree(std::vector<int> entries);
    Degree(std::initializer_list<int> entries) : Degree(std::vector<int>(entries)) {}

    /// The generator delta_color; colour is 1-based.
    static Degree unit(std::size_t rank, int color);

    std::size_t rank() const noexcept { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const noexcept { return entries_; }

    /// Sum of entries.
    int grading() const noexcept;

    /// Componentwise <=.
    bool dominated_by(const Degree& other) const;

    Degree& operator+=(const Degree& other);
    friend Degree operator+(Degree lhs, const Degree& rhs) { return lhs += rhs; }
    /// Requires rhs.dominated_by(lhs).
    friend Degree operator-(const Degree& lhs, const Degree& rhs);

    friend bool operator==(const Degree&, const Degree&) = default;
    friend auto operator<=>(const Degree&, const Degree&) = default;

    /// "(1,0,2)"
    std::string str() const;

private:
    std::vector<int> entries_;
};

/// Every degree vector of the given rank with the given grading, in lexicographically
/// decreasing order.
std::vector<Degree> degrees_of_grading(std::size_t rank, int grading);

/// Every m with m <= d componentwise.
std::vector<Degree> degrees_below(const Degree& d);

struct Edge {
    std::string name;
    int color = 1;  // 1..k
    VertexId src = 0;
    VertexId dst = 0;
};

/// lhs_left * lhs_right == rhs_left * rhs_right, words in composition order.
/// lhs is the in-order side: lhs_left has colour i, lhs_right colour j, i < j.
/// rhs_left has colour j and rhs_right colour i.
struct CommutationSquare {
    EdgeId lhs_left = 0;
    EdgeId lhs_right = 0;
    EdgeId rhs_left = 0;
    EdgeId rhs_right = 0;

    friend bool operator==(const CommutationSquare&, const CommutationSquare&) = default;
};

class KGraph {
public:
    /// Checks the local invariants of every vertex, edge and square; global
    /// bijectivity of the squares is checked by validate().
    KGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
           std::vector<CommutationSquare> squares);

    int rank() const noexcept { return rank_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<CommutationSquare>& squares() const noexcept { return squares_; }

    const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    int color(EdgeId e) const { return edges_[e].color; }

    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;

    std::vector<EdgeId> edges_of_color(int color) const;

    /// Indices into squares() whose rhs (resp. lhs) is the given composable pair.
    std::span<const std::size_t> squares_with_rhs(EdgeId left, EdgeId right) const;
    std::span<const std::size_t> squares_with_lhs(EdgeId left, EdgeId right) const;

    Degree degree_of(EdgeId e) const { return Degree::unit(static_cast<std::size_t>(rank_), color(e)); }

private:
    int rank_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<CommutationSquare> squares_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_lhs_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_rhs_;
};

/// A morphism of the k-graph. The identity at v has an empty word and source = range = v.
struct Path {
    VertexId source = 0;
    VertexId range = 0;
    Word word;
    Degree degree;

    int grading() const noexcept { return degree.grading(); }
    bool is_identity() const noexcept { return word.empty(); }

    friend bool operator==(const Path& a, const Path& b) {
        return a.source == b.source && a.word == b.word;
    }
};

/// Basis order: grading, then degree (lexicographic), then word, then source.
bool basis_less(const Path& a, const Path& b);

/// Canonical colour-block representative (colour 1 leftmost) of a relation class.
class NormalPath {
public:
    const Path& path() const noexcept { return path_; }
    operator const Path&() const noexcept { return path_; }

    VertexId source() const noexcept { return path_.source; }
    VertexId range() const noexcept { return path_.range; }
    const Word& word() const noexcept { return path_.word; }
    const Degree& degree() const noexcept { return path_.degree; }
    int grading() const noexcept { return path_.grading(); }
    bool is_identity() const noexcept { return path_.is_identity(); }

    friend bool operator==(const NormalPath& a, const NormalPath& b) { return a.path_ == b.path_; }

private:
    explicit NormalPath(Path p) : path_(std::move(p)) {}
    Path path_;

    friend NormalPath normal_form(const KGraph& g, const Path& p);
    friend NormalPath identity_path(const KGraph& g, VertexId v);
};

NormalPath identity_path(const KGraph& g, VertexId v);
Path edge_path(const KGraph& g, EdgeId e);

/// Throws CompositionError if consecutive edges are not composable; word must be nonempty.
Path make_path(const KGraph& g, Word word);

/// left applied after right. Throws CompositionError unless s(left) == r(right).
Path compose(const KGraph& g, const Path& left, const Path& right);

/// Bubble passes applying squares rhs -> lhs to adjacent out-of-order pairs.
/// Throws MalformedGraphError when an out-of-order pair has no square.
NormalPath normal_form(const KGraph& g, const Path& p);

bool is_block_sorted(const KGraph& g, const Word& word);

/// Edge names joined by spaces, or the vertex name for identities.
std::string to_string(const KGraph& g, const Path& p);

/// Inverse of to_string (accepts spaces or commas between edge names).
Path parse_path(const KGraph& g, std::string_view text);

struct EnumerationBudget {
    int max_grading = 8;
    std::size_t max_paths = 4'000'000;
};

/// Degree-graded memoized enumeration of normal paths. Holds a reference to the graph.
class PathCatalog {
public:
    explicit PathCatalog(const KGraph& g, EnumerationBudget budget = {});
    PathCatalog(KGraph&&, EnumerationBudget = {}) = delete;

    /// One NormalPath per relation class of degree d, sorted by basis_less.
    const std::vector<NormalPath>& paths_of_degree(const Degree& d);

    /// Every normal path with grading <= max_grading, sorted by basis_less.
    std::vector<NormalPath> paths_up_to(int max_grading);

    const KGraph& graph() const noexcept { return *graph_; }

private:
    const KGraph* graph_;
    EnumerationBudget budget_;
    std::map<Degree, std::vector<NormalPath>> cache_;
    std::size_t total_ = 0;
};

std::vector<NormalPath> paths_of_degree(const KGraph& g, const Degree& d, EnumerationBudget budget = {});

/// Coloured-graph isomorphism that also maps squares onto squares. Backtracking; small graphs only.
bool isomorphic(const KGraph& a, const KGraph& b);

/// All vertices reachable from v along edges (src -> dst), v included.
std::vector<bool> reachable_from(const KGraph& g, VertexId v);

}  // namespace kgraph
