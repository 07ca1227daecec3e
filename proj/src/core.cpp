#include "kgraph/core.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace kgraph {

namespace {

std::uint64_t pair_key(EdgeId left, EdgeId right) {
    return (static_cast<std::uint64_t>(left) << 32) | right;
}

}  // namespace

// ---------------------------------------------------------------- Degree

Degree::Degree(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int v : entries_) {
        if (v < 0) throw DomainError("degree entries must be non-negative");
    }
}

Degree Degree::unit(std::size_t rank, int color) {
    if (color < 1 || static_cast<std::size_t>(color) > rank) {
        throw DomainError("colour " + std::to_string(color) + " out of range 1.." + std::to_string(rank));
    }
    Degree d(rank);
    d.entries_[static_cast<std::size_t>(color - 1)] = 1;
    return d;
}

int Degree::grading() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

bool Degree::dominated_by(const Degree& other) const {
    if (rank() != other.rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (entries_[i] > other.entries_[i]) return false;
    }
    return true;
}

Degree& Degree::operator+=(const Degree& other) {
    if (rank() != other.rank()) throw DomainError("degree rank mismatch");
    for (std::size_t i = 0; i < rank(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Degree operator-(const Degree& lhs, const Degree& rhs) {
    if (!rhs.dominated_by(lhs)) throw DomainError("degree subtraction would go negative");
    Degree out = lhs;
    for (std::size_t i = 0; i < lhs.rank(); ++i) out.entries_[i] -= rhs.entries_[i];
    return out;
}

std::string Degree::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s + ")";
}

std::vector<Degree> degrees_of_grading(std::size_t rank, int grading) {
    std::vector<Degree> out;
    if (rank == 0) return out;
    std::vector<int> cur(rank, 0);
    // compositions of `grading` into `rank` parts, first entry largest first
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == rank) {
            cur[pos] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, grading);
    return out;
}

std::vector<Degree> degrees_below(const Degree& d) {
    std::vector<Degree> out;
    std::vector<int> cur(d.rank(), 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == d.rank()) {
            out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= d[pos]; ++v) {
            cur[pos] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------- KGraph

KGraph::KGraph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
               std::vector<CommutationSquare> squares)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)), squares_(std::move(squares)) {
    if (rank_ < 1) throw MalformedGraphError("rank must be positive");
    if (vertices_.empty()) throw MalformedGraphError("vertex set must be nonempty");

    std::set<std::string_view> names;
    for (const auto& v : vertices_) {
        if (v.empty()) throw MalformedGraphError("empty vertex name");
        if (!names.insert(v).second) throw MalformedGraphError("duplicate vertex '" + v + "'");
    }
    names.clear();
    for (const auto& e : edges_) {
        if (e.name.empty()) throw MalformedGraphError("empty edge name");
        if (!names.insert(e.name).second) throw MalformedGraphError("duplicate edge '" + e.name + "'");
        if (e.color < 1 || e.color > rank_) {
            throw MalformedGraphError("edge '" + e.name + "' has colour " + std::to_string(e.color) +
                                      " outside 1.." + std::to_string(rank_));
        }
        if (e.src >= vertices_.size() || e.dst >= vertices_.size()) {
            throw MalformedGraphError("edge '" + e.name + "' has an undeclared endpoint");
        }
    }

    for (std::size_t i = 0; i < squares_.size(); ++i) {
        const auto& s = squares_[i];
        for (EdgeId id : {s.lhs_left, s.lhs_right, s.rhs_left, s.rhs_right}) {
            if (id >= edges_.size()) throw MalformedGraphError("square references an unknown edge");
        }
        const Edge& a = edges_[s.lhs_left];
        const Edge& b = edges_[s.lhs_right];
        const Edge& b2 = edges_[s.rhs_left];
        const Edge& a2 = edges_[s.rhs_right];
        const std::string label = a.name + " " + b.name + " = " + b2.name + " " + a2.name;
        if (!(a.color < b.color)) {
            throw MalformedGraphError("square " + label + ": lhs must be colour i then colour j with i < j");
        }
        if (b2.color != b.color || a2.color != a.color) {
            throw MalformedGraphError("square " + label + ": rhs colours must be the lhs colours swapped");
        }
        if (a.src != b.dst || b2.src != a2.dst) {
            throw MalformedGraphError("square " + label + ": a side is not composable");
        }
        if (a.dst != b2.dst || b.src != a2.src) {
            throw MalformedGraphError("square " + label + ": endpoints of the two sides differ");
        }
        by_lhs_[pair_key(s.lhs_left, s.lhs_right)].push_back(i);
        by_rhs_[pair_key(s.rhs_left, s.rhs_right)].push_back(i);
    }
}

std::optional<VertexId> KGraph::find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v] == name) return v;
    }
    return std::nullopt;
}

std::optional<EdgeId> KGraph::find_edge(std::string_view name) const {
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (edges_[e].name == name) return e;
    }
    return std::nullopt;
}

std::vector<EdgeId> KGraph::edges_of_color(int color) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        if (edges_[e].color == color) out.push_back(e);
    }
    return out;
}

std::span<const std::size_t> KGraph::squares_with_rhs(EdgeId left, EdgeId right) const {
    auto it = by_rhs_.find(pair_key(left, right));
    if (it == by_rhs_.end()) return {};
    return it->second;
}

std::span<const std::size_t> KGraph::squares_with_lhs(EdgeId left, EdgeId right) const {
    auto it = by_lhs_.find(pair_key(left, right));
    if (it == by_lhs_.end()) return {};
    return it->second;
}

// ---------------------------------------------------------------- paths

bool basis_less(const Path& a, const Path& b) {
    const int ga = a.grading();
    const int gb = b.grading();
    if (ga != gb) return ga < gb;
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.word != b.word) return a.word < b.word;
    return a.source < b.source;
}

NormalPath identity_path(const KGraph& g, VertexId v) {
    if (v >= g.vertex_count()) throw DomainError("unknown vertex");
    Path p;
    p.source = v;
    p.range = v;
    p.degree = Degree(static_cast<std::size_t>(g.rank()));
    return NormalPath(std::move(p));
}

Path edge_path(const KGraph& g, EdgeId e) {
    const Edge& edge = g.edge(e);
    Path p;
    p.source = edge.src;
    p.range = edge.dst;
    p.word = {e};
    p.degree = g.degree_of(e);
    return p;
}

Path make_path(const KGraph& g, Word word) {
    if (word.empty()) throw DomainError("make_path needs a nonempty word; use identity_path");
    Degree deg(static_cast<std::size_t>(g.rank()));
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] >= g.edge_count()) throw DomainError("unknown edge in word");
        deg += g.degree_of(word[i]);
        if (i + 1 < word.size() && g.edge(word[i]).src != g.edge(word[i + 1]).dst) {
            throw CompositionError("edges '" + g.edge(word[i]).name + "' and '" + g.edge(word[i + 1]).name +
                                   "' are not composable");
        }
    }
    Path p;
    p.range = g.edge(word.front()).dst;
    p.source = g.edge(word.back()).src;
    p.word = std::move(word);
    p.degree = std::move(deg);
    return p;
}

Path compose(const KGraph& g, const Path& left, const Path& right) {
    if (left.source != right.range) {
        throw CompositionError("cannot compose: s(left) = " + g.vertex_name(left.source) +
                               " but r(right) = " + g.vertex_name(right.range));
    }
    Path p;
    p.range = left.range;
    p.source = right.source;
    p.word.reserve(left.word.size() + right.word.size());
    p.word.insert(p.word.end(), left.word.begin(), left.word.end());
    p.word.insert(p.word.end(), right.word.begin(), right.word.end());
    p.degree = left.degree + right.degree;
    return p;
}

bool is_block_sorted(const KGraph& g, const Word& word) {
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
        if (g.color(word[i]) > g.color(word[i + 1])) return false;
    }
    return true;
}

NormalPath normal_form(const KGraph& g, const Path& p) {
    Path out = p;
    Word& w = out.word;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (g.color(w[i]) <= g.color(w[i + 1])) continue;
            auto hits = g.squares_with_rhs(w[i], w[i + 1]);
            if (hits.empty()) {
                throw MalformedGraphError("no commutation square for '" + g.edge(w[i]).name + " " +
                                          g.edge(w[i + 1]).name + "'");
            }
            const CommutationSquare& s = g.squares()[hits.front()];
            w[i] = s.lhs_left;
            w[i + 1] = s.lhs_right;
            changed = true;
        }
    }
    return NormalPath(std::move(out));
}

std::string to_string(const KGraph& g, const Path& p) {
    if (p.is_identity()) return g.vertex_name(p.source);
    std::string s;
    for (std::size_t i = 0; i < p.word.size(); ++i) {
        if (i) s += ' ';
        s += g.edge(p.word[i]).name;
    }
    return s;
}

Path parse_path(const KGraph& g, std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == ',' || c == '\t') {
            if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    if (tokens.empty()) throw DomainError("empty path");
    if (tokens.size() == 1 && !g.find_edge(tokens[0])) {
        if (auto v = g.find_vertex(tokens[0])) return identity_path(g, *v).path();
    }
    Word w;
    for (const auto& t : tokens) {
        auto e = g.find_edge(t);
        if (!e) throw DomainError("unknown edge '" + t + "'");
        w.push_back(*e);
    }
    return make_path(g, std::move(w));
}

// ---------------------------------------------------------------- enumeration

PathCatalog::PathCatalog(const KGraph& g, EnumerationBudget budget) : graph_(&g), budget_(budget) {}

const std::vector<NormalPath>& PathCatalog::paths_of_degree(const Degree& d) {
    const KGraph& g = *graph_;
    if (d.rank() != static_cast<std::size_t>(g.rank())) throw DomainError("degree rank does not match graph");
    if (auto it = cache_.find(d); it != cache_.end()) return it->second;
    if (d.grading() > budget_.max_grading) {
        throw ResourceError("grading " + std::to_string(d.grading()) + " exceeds enumeration budget " +
                            std::to_string(budget_.max_grading));
    }

    std::vector<NormalPath> level;
    if (d.grading() == 0) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) level.push_back(identity_path(g, v));
    } else {
        // extend on the left by one edge of every colour present, then reduce and dedupe
        for (int c = 1; c <= g.rank(); ++c) {
            if (d[static_cast<std::size_t>(c - 1)] == 0) continue;
            const Degree rest = d - Degree::unit(d.rank(), c);
            const auto& shorter = paths_of_degree(rest);
            for (EdgeId e : g.edges_of_color(c)) {
                const Path ep = edge_path(g, e);
                for (const auto& mu : shorter) {
                    if (ep.source != mu.range()) continue;
                    level.push_back(normal_form(g, compose(g, ep, mu.path())));
                }
            }
        }
        std::sort(level.begin(), level.end(),
                  [](const NormalPath& a, const NormalPath& b) { return basis_less(a.path(), b.path()); });
        level.erase(std::unique(level.begin(), level.end()), level.end());
    }
    total_ += level.size();
    if (total_ > budget_.max_paths) throw ResourceError("path enumeration exceeds the path budget");
    return cache_.emplace(d, std::move(level)).first->second;
}

std::vector<NormalPath> PathCatalog::paths_up_to(int max_grading) {
    std::vector<NormalPath> out;
    for (int n = 0; n <= max_grading; ++n) {
        for (const auto& d : degrees_of_grading(static_cast<std::size_t>(graph_->rank()), n)) {
            const auto& level = paths_of_degree(d);
            out.insert(out.end(), level.begin(), level.end());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const NormalPath& a, const NormalPath& b) { return basis_less(a.path(), b.path()); });
    return out;
}

std::vector<NormalPath> paths_of_degree(const KGraph& g, const Degree& d, EnumerationBudget budget) {
    PathCatalog catalog(g, budget);
    return catalog.paths_of_degree(d);
}

// ---------------------------------------------------------------- reachability

std::vector<bool> reachable_from(const KGraph& g, VertexId v) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{v};
    seen[v] = true;
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (const auto& e : g.edges()) {
            if (e.src == u && !seen[e.dst]) {
                seen[e.dst] = true;
                queue.push_back(e.dst);
            }
        }
    }
    return seen;
}

// ---------------------------------------------------------------- isomorphism

namespace {

using VertexSignature = std::vector<std::tuple<int, int, int, int>>;  // colour, out, in, loops

VertexSignature signature(const KGraph& g, VertexId v) {
    VertexSignature sig;
    for (int c = 1; c <= g.rank(); ++c) {
        int out = 0, in = 0, loops = 0;
        for (const auto& e : g.edges()) {
            if (e.color != c) continue;
            if (e.src == v) ++out;
            if (e.dst == v) ++in;
            if (e.src == v && e.dst == v) ++loops;
        }
        sig.emplace_back(c, out, in, loops);
    }
    return sig;
}

class IsomorphismSearch {
public:
    IsomorphismSearch(const KGraph& a, const KGraph& b) : a_(a), b_(b) {
        for (const auto& s : b.squares()) {
            b_squares_.insert({s.lhs_left, s.lhs_right, s.rhs_left, s.rhs_right});
        }
        for (VertexId v = 0; v < a.vertex_count(); ++v) sig_a_.push_back(signature(a, v));
        for (VertexId v = 0; v < b.vertex_count(); ++v) sig_b_.push_back(signature(b, v));
    }

    bool run() {
        vmap_.assign(a_.vertex_count(), 0);
        used_.assign(b_.vertex_count(), false);
        return assign_vertex(0);
    }

private:
    bool assign_vertex(VertexId v) {
        if (v == a_.vertex_count()) return match_edges();
        for (VertexId w = 0; w < b_.vertex_count(); ++w) {
            if (used_[w] || sig_a_[v] != sig_b_[w]) continue;
            used_[w] = true;
            vmap_[v] = w;
            if (assign_vertex(v + 1)) return true;
            used_[w] = false;
        }
        return false;
    }

    bool match_edges() {
        // group edges by (colour, src, dst) after mapping the vertices
        std::map<std::tuple<int, VertexId, VertexId>, std::vector<EdgeId>> ga, gb;
        for (EdgeId e = 0; e < a_.edge_count(); ++e) {
            const auto& ed = a_.edge(e);
            ga[{ed.color, vmap_[ed.src], vmap_[ed.dst]}].push_back(e);
        }
        for (EdgeId e = 0; e < b_.edge_count(); ++e) {
            const auto& ed = b_.edge(e);
            gb[{ed.color, ed.src, ed.dst}].push_back(e);
        }
        if (ga.size() != gb.size()) return false;
        groups_.clear();
        for (auto& [key, edges] : ga) {
            auto it = gb.find(key);
            if (it == gb.end() || it->second.size() != edges.size()) return false;
            groups_.emplace_back(edges, it->second);
        }
        emap_.assign(a_.edge_count(), 0);
        return assign_group(0);
    }

    bool assign_group(std::size_t gi) {
        if (gi == groups_.size()) return squares_match();
        auto [from, to] = groups_[gi];
        std::sort(to.begin(), to.end());
        do {
            for (std::size_t i = 0; i < from.size(); ++i) emap_[from[i]] = to[i];
            if (assign_group(gi + 1)) return true;
        } while (std::next_permutation(to.begin(), to.end()));
        return false;
    }

    bool squares_match() const {
        for (const auto& s : a_.squares()) {
            if (!b_squares_.count({emap_[s.lhs_left], emap_[s.lhs_right], emap_[s.rhs_left], emap_[s.rhs_right]})) {
                return false;
            }
        }
        return true;
    }

    const KGraph& a_;
    const KGraph& b_;
    std::set<std::tuple<EdgeId, EdgeId, EdgeId, EdgeId>> b_squares_;
    std::vector<VertexSignature> sig_a_, sig_b_;
    std::vector<VertexId> vmap_;
    std::vector<bool> used_;
    std::vector<std::pair<std::vector<EdgeId>, std::vector<EdgeId>>> groups_;
    std::vector<EdgeId> emap_;
};

}  // namespace

bool isomorphic(const KGraph& a, const KGraph& b) {
    if (a.rank() != b.rank() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() ||
        a.squares().size() != b.squares().size()) {
        return false;
    }
    return IsomorphismSearch(a, b).run();
}

}  // namespace kgraph
