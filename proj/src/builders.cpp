#include "kgraph/builders.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace kgraph {

namespace {

std::string color_letter(char base, int color) {
    const int offset = color - 1;
    if (base + offset <= 'z') return std::string(1, static_cast<char>(base + offset));
    return "c" + std::to_string(color) + "_";
}

KGraph checked_graph(int rank, std::vector<std::string> vertices, std::vector<Edge> edges,
                     std::vector<CommutationSquare> squares) {
    try {
        return KGraph(rank, std::move(vertices), std::move(edges), std::move(squares));
    } catch (const MalformedGraphError& e) {
        throw ConstructionError(e.what());
    }
}

}  // namespace

ThetaFamily ThetaFamily::full_cycle(const std::vector<int>& sizes) {
    ThetaFamily theta;
    const int k = static_cast<int>(sizes.size());
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            const int m = sizes[static_cast<std::size_t>(i - 1)] * sizes[static_cast<std::size_t>(j - 1)];
            std::vector<int> table(static_cast<std::size_t>(m));
            for (int t = 0; t < m; ++t) table[static_cast<std::size_t>(t)] = (t + 1) % m;
            theta.tables[{i, j}] = std::move(table);
        }
    }
    return theta;
}

int ThetaFamily::image(int i, int j, int t) const {
    auto it = tables.find({i, j});
    if (it == tables.end()) return t;
    return it->second.at(static_cast<std::size_t>(t));
}

KGraph from_digraph(const Digraph& dg) {
    std::vector<Edge> edges;
    auto lookup = [&](const std::string& name) -> VertexId {
        auto it = std::find(dg.vertices.begin(), dg.vertices.end(), name);
        if (it == dg.vertices.end()) throw ConstructionError("undeclared vertex '" + name + "'");
        return static_cast<VertexId>(it - dg.vertices.begin());
    };
    for (const auto& a : dg.arrows) edges.push_back({a.id, 1, lookup(a.src), lookup(a.dst)});
    return checked_graph(1, dg.vertices, std::move(edges), {});
}

KGraph free_loops(int n) {
    if (n < 0) throw ConstructionError("negative loop count");
    Digraph dg;
    dg.vertices = {"v"};
    for (int i = 1; i <= n; ++i) dg.arrows.push_back({n == 1 ? "e" : "e" + std::to_string(i), "v", "v"});
    return from_digraph(dg);
}

KGraph directed_cycle(int n) {
    if (n < 1) throw ConstructionError("cycle needs at least one vertex");
    Digraph dg;
    for (int i = 1; i <= n; ++i) dg.vertices.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) {
        dg.arrows.push_back({"e" + std::to_string(i), "x" + std::to_string(i), "x" + std::to_string(i % n + 1)});
    }
    return from_digraph(dg);
}

KGraph direct_product(const std::vector<KGraph>& factors) {
    if (factors.empty()) throw ConstructionError("direct product of an empty list");
    for (const auto& f : factors) {
        if (f.rank() != 1) throw ConstructionError("direct product factors must be 1-graphs");
    }
    const std::size_t k = factors.size();
    if (k == 1) return factors.front();

    // mixed-radix vertex numbering, coordinate 0 most significant
    std::vector<std::size_t> radix(k);
    std::size_t vcount = 1;
    for (std::size_t i = 0; i < k; ++i) {
        radix[i] = factors[i].vertex_count();
        vcount *= radix[i];
    }
    auto decode = [&](std::size_t id) {
        std::vector<std::size_t> coords(k);
        for (std::size_t i = k; i-- > 0;) {
            coords[i] = id % radix[i];
            id /= radix[i];
        }
        return coords;
    };
    auto encode = [&](const std::vector<std::size_t>& coords) {
        std::size_t id = 0;
        for (std::size_t i = 0; i < k; ++i) id = id * radix[i] + coords[i];
        return static_cast<VertexId>(id);
    };

    std::vector<std::string> vertices;
    for (std::size_t id = 0; id < vcount; ++id) {
        auto c = decode(id);
        std::string label;
        for (std::size_t i = 0; i < k; ++i) {
            if (i) label += '.';
            label += factors[i].vertex_name(static_cast<VertexId>(c[i]));
        }
        vertices.push_back(std::move(label));
    }

    std::vector<Edge> edges;
    std::map<std::tuple<std::size_t, EdgeId, VertexId>, EdgeId> by_factor_edge;  // (coord, factor edge, src)
    std::set<std::string> used;
    for (std::size_t i = 0; i < k; ++i) {
        const KGraph& f = factors[i];
        for (EdgeId fe = 0; fe < f.edge_count(); ++fe) {
            const Edge& e = f.edge(fe);
            for (std::size_t id = 0; id < vcount; ++id) {
                auto c = decode(id);
                if (c[i] != e.src) continue;
                auto d = c;
                d[i] = e.dst;
                std::string name;
                for (std::size_t t = 0; t < k; ++t) {
                    if (t) name += '.';
                    name += t == i ? e.name : factors[t].vertex_name(static_cast<VertexId>(c[t]));
                }
                while (!used.insert(name).second) name += '\'';
                const auto eid = static_cast<EdgeId>(edges.size());
                edges.push_back({name, static_cast<int>(i + 1), encode(c), encode(d)});
                by_factor_edge[{i, fe, encode(c)}] = eid;
            }
        }
    }

    std::vector<CommutationSquare> squares;
    for (const auto& [key_a, a] : by_factor_edge) {
        const auto [ci, fa, src_a] = key_a;
        for (const auto& [key_b, b] : by_factor_edge) {
            const auto [cj, fb, src_b] = key_b;
            if (!(ci < cj) || edges[b].dst != src_a) continue;
            const EdgeId a2 = by_factor_edge.at({ci, fa, src_b});
            const EdgeId b2 = by_factor_edge.at({cj, fb, edges[a2].dst});
            squares.push_back({a, b, b2, a2});
        }
    }
    return checked_graph(static_cast<int>(k), std::move(vertices), std::move(edges), std::move(squares));
}

namespace {

// (range, source) -> composable in-order pairs (A after B) and out-of-order pairs (B after A)
struct MixedPairs {
    std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<EdgeId, EdgeId>>> in_order, out_of_order;
};

MixedPairs mixed_pairs(const KGraph& g) {
    MixedPairs mp;
    for (EdgeId x = 0; x < g.edge_count(); ++x) {
        for (EdgeId y = 0; y < g.edge_count(); ++y) {
            const Edge& l = g.edge(x);
            const Edge& r = g.edge(y);
            if (l.color == r.color || l.src != r.dst) continue;
            auto& bucket = l.color < r.color ? mp.in_order : mp.out_of_order;
            bucket[{l.dst, r.src}].emplace_back(x, y);
        }
    }
    return mp;
}

KGraph theta_union(const KGraph& a, const KGraph& b) {
    if (a.rank() != 1 || b.rank() != 1) throw ConstructionError("theta product needs two 1-graphs");
    if (a.vertex_count() != b.vertex_count()) throw ConstructionError("theta product needs a shared vertex set");
    std::vector<Edge> edges;
    for (const auto& e : a.edges()) edges.push_back({e.name, 1, e.src, e.dst});
    for (const auto& e : b.edges()) {
        auto s = a.find_vertex(b.vertex_name(e.src));
        auto d = a.find_vertex(b.vertex_name(e.dst));
        if (!s || !d) throw ConstructionError("theta product needs a shared vertex set");
        edges.push_back({e.name, 2, *s, *d});
    }
    return checked_graph(2, a.vertices(), std::move(edges), {});
}

}  // namespace

unsigned long long count_admissible_thetas(const KGraph& a, const KGraph& b) {
    const KGraph u = theta_union(a, b);
    const MixedPairs mp = mixed_pairs(u);
    std::set<std::pair<VertexId, VertexId>> keys;
    for (auto& [k, v] : mp.in_order) keys.insert(k);
    for (auto& [k, v] : mp.out_of_order) keys.insert(k);
    unsigned long long total = 1;
    for (const auto& k : keys) {
        const auto e = mp.in_order.count(k) ? mp.in_order.at(k).size() : 0;
        const auto f = mp.out_of_order.count(k) ? mp.out_of_order.at(k).size() : 0;
        if (e != f) return 0;
        for (std::size_t i = 2; i <= e; ++i) total *= i;
    }
    return total;
}

KGraph theta_product(const KGraph& a, const KGraph& b, const std::vector<ThetaPair>& theta) {
    const KGraph u = theta_union(a, b);
    const MixedPairs mp = mixed_pairs(u);
    std::set<std::pair<VertexId, VertexId>> keys;
    for (auto& [k, v] : mp.in_order) keys.insert(k);
    for (auto& [k, v] : mp.out_of_order) keys.insert(k);
    for (const auto& k : keys) {
        const auto e = mp.in_order.count(k) ? mp.in_order.at(k).size() : 0;
        const auto f = mp.out_of_order.count(k) ? mp.out_of_order.at(k).size() : 0;
        if (e != f) {
            throw ConstructionError("cardinality mismatch from " + u.vertex_name(k.second) + " to " +
                                    u.vertex_name(k.first) + ": " + std::to_string(e) + " vs " + std::to_string(f));
        }
    }

    auto edge_of = [&](const std::string& name, int color) {
        auto e = u.find_edge(name);
        if (!e || u.color(*e) != color) {
            throw ConstructionError("theta references '" + name + "', which is not a colour-" +
                                    std::to_string(color) + " edge");
        }
        return *e;
    };
    std::vector<CommutationSquare> squares;
    std::set<std::pair<EdgeId, EdgeId>> seen_lhs, seen_rhs;
    for (const auto& t : theta) {
        CommutationSquare s{edge_of(t.a, 1), edge_of(t.b, 2), edge_of(t.b_prime, 2), edge_of(t.a_prime, 1)};
        const Edge& ea = u.edge(s.lhs_left);
        const Edge& eb = u.edge(s.lhs_right);
        const Edge& eb2 = u.edge(s.rhs_left);
        const Edge& ea2 = u.edge(s.rhs_right);
        if (ea.src != eb.dst || eb2.src != ea2.dst || ea.dst != eb2.dst || eb.src != ea2.src) {
            throw ConstructionError("theta pair " + t.a + " " + t.b + " -> " + t.b_prime + " " + t.a_prime +
                                    " has mismatched endpoints");
        }
        if (!seen_lhs.insert({s.lhs_left, s.lhs_right}).second ||
            !seen_rhs.insert({s.rhs_left, s.rhs_right}).second) {
            throw ConstructionError("theta is not injective at " + t.a + " " + t.b);
        }
        squares.push_back(s);
    }
    std::size_t expected = 0;
    for (auto& [k, v] : mp.in_order) expected += v.size();
    if (squares.size() != expected) {
        throw ConstructionError("theta covers " + std::to_string(squares.size()) + " of " +
                                std::to_string(expected) + " composable pairs");
    }
    return checked_graph(2, u.vertices(), u.edges(), std::move(squares));
}

KGraph cycle_rank(int n, int k) {
    if (n < 1 || k < 1) throw ConstructionError("cycle_rank needs n, k >= 1");
    std::vector<std::string> vertices;
    for (int i = 1; i <= n; ++i) vertices.push_back("x" + std::to_string(i));
    std::vector<Edge> edges;
    auto id = [n](int color, int i) { return static_cast<EdgeId>((color - 1) * n + (i - 1)); };
    for (int c = 1; c <= k; ++c) {
        for (int i = 1; i <= n; ++i) {
            edges.push_back({color_letter('e', c) + std::to_string(i), c, static_cast<VertexId>(i - 1),
                             static_cast<VertexId>(i % n)});
        }
    }
    std::vector<CommutationSquare> squares;
    for (int i = 1; i <= n; ++i) {
        const int next = i % n + 1;
        for (int r = 1; r <= k; ++r) {
            for (int s = r + 1; s <= k; ++s) {
                squares.push_back({id(r, next), id(s, i), id(s, next), id(r, i)});
            }
        }
    }
    return checked_graph(k, std::move(vertices), std::move(edges), std::move(squares));
}

KGraph single_vertex(const std::vector<int>& sizes, const ThetaFamily& theta) {
    const int k = static_cast<int>(sizes.size());
    if (k < 1) throw ConstructionError("single_vertex needs at least one colour");
    for (int n : sizes) {
        if (n < 0) throw ConstructionError("negative edge count");
    }
    std::vector<EdgeId> first(static_cast<std::size_t>(k));
    std::vector<Edge> edges;
    for (int c = 1; c <= k; ++c) {
        const int n = sizes[static_cast<std::size_t>(c - 1)];
        first[static_cast<std::size_t>(c - 1)] = static_cast<EdgeId>(edges.size());
        for (int p = 1; p <= n; ++p) {
            std::string name = color_letter('a', c);
            if (n > 1) name += std::to_string(p);
            edges.push_back({std::move(name), c, 0, 0});
        }
    }
    for (const auto& [pair, table] : theta.tables) {
        const auto [i, j] = pair;
        if (i < 1 || j > k || i >= j) throw ConstructionError("theta colour pair out of range");
        const auto m = static_cast<std::size_t>(sizes[static_cast<std::size_t>(i - 1)] *
                                                sizes[static_cast<std::size_t>(j - 1)]);
        if (table.size() != m) {
            throw ConstructionError("theta_" + std::to_string(i) + "," + std::to_string(j) + " has " +
                                    std::to_string(table.size()) + " entries, expected " + std::to_string(m));
        }
        std::vector<int> sorted = table;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t t = 0; t < m; ++t) {
            if (sorted[t] != static_cast<int>(t)) throw ConstructionError("theta table is not a permutation");
        }
    }
    std::vector<CommutationSquare> squares;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            const int ni = sizes[static_cast<std::size_t>(i - 1)];
            const int nj = sizes[static_cast<std::size_t>(j - 1)];
            const EdgeId fi = first[static_cast<std::size_t>(i - 1)];
            const EdgeId fj = first[static_cast<std::size_t>(j - 1)];
            for (int p = 0; p < ni; ++p) {
                for (int q = 0; q < nj; ++q) {
                    const int img = theta.image(i, j, p * nj + q);
                    const int r = img / nj;
                    const int s = img % nj;
                    squares.push_back({fi + static_cast<EdgeId>(p), fj + static_cast<EdgeId>(q),
                                       fj + static_cast<EdgeId>(s), fi + static_cast<EdgeId>(r)});
                }
            }
        }
    }
    return checked_graph(k, {"v"}, std::move(edges), std::move(squares));
}

KGraph transpose(const KGraph& g) {
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.name, e.color, e.dst, e.src});
    std::vector<CommutationSquare> squares;
    for (const auto& s : g.squares()) squares.push_back({s.rhs_right, s.rhs_left, s.lhs_right, s.lhs_left});
    return KGraph(g.rank(), g.vertices(), std::move(edges), std::move(squares));
}

Path transpose_path(const KGraph& gt, const Path& p) {
    if (p.is_identity()) return identity_path(gt, p.source).path();
    Word w(p.word.rbegin(), p.word.rend());
    return make_path(gt, std::move(w));
}

KGraph example_acyclic_two_graph() {
    Digraph a{{"x1", "x2", "x3"}, {{"a1", "x1", "x2"}, {"a2", "x2", "x3"}}};
    Digraph b{{"x1", "x2", "x3"}, {{"b1", "x1", "x2"}, {"b2", "x2", "x3"}}};
    return theta_product(from_digraph(a), from_digraph(b), {{"a2", "b1", "b2", "a1"}});
}

}  // namespace kgraph
