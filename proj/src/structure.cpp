#include "kgraph/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "kgraph/builders.hpp"

namespace kgraph {

std::vector<EdgeId> nc_edges(const KGraph& g) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!reachable_from(g, g.edge(e).dst)[g.edge(e).src]) out.push_back(e);
    }
    return out;
}

bool is_semisimple(const KGraph& g) { return nc_edges(g).empty(); }

std::string to_string(Tristate t) {
    switch (t) {
        case Tristate::no: return "no";
        case Tristate::yes: return "yes";
        case Tristate::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Simple cycles at `base` in the colour-c subgraph; stops after `limit` cycles.
std::vector<PureCycle> simple_cycles(const KGraph& g, VertexId base, int color, std::size_t limit) {
    std::vector<PureCycle> out;
    std::vector<bool> on_walk(g.vertex_count(), false);
    Word walk;  // traversal order
    auto dfs = [&](auto&& self, VertexId at) -> void {
        for (EdgeId e = 0; e < g.edge_count() && out.size() < limit; ++e) {
            const Edge& edge = g.edge(e);
            if (edge.color != color || edge.src != at) continue;
            walk.push_back(e);
            if (edge.dst == base) {
                out.push_back({base, color, Word(walk.rbegin(), walk.rend())});
            } else if (!on_walk[edge.dst]) {
                on_walk[edge.dst] = true;
                self(self, edge.dst);
                on_walk[edge.dst] = false;
            }
            walk.pop_back();
        }
    };
    on_walk[base] = true;
    dfs(dfs, base);
    std::sort(out.begin(), out.end(), [](const PureCycle& a, const PureCycle& b) {
        return std::make_pair(a.word.size(), a.word) < std::make_pair(b.word.size(), b.word);
    });
    return out;
}

std::optional<Path> shortest_path(const KGraph& g, VertexId from, VertexId to) {
    if (from == to) return identity_path(g, from).path();
    std::vector<std::optional<EdgeId>> parent(g.vertex_count());
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<VertexId> queue{from};
    seen[from] = true;
    while (!queue.empty() && !seen[to]) {
        const VertexId v = queue.front();
        queue.pop_front();
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge& edge = g.edge(e);
            if (edge.src != v || seen[edge.dst]) continue;
            seen[edge.dst] = true;
            parent[edge.dst] = e;
            queue.push_back(edge.dst);
        }
    }
    if (!seen[to]) return std::nullopt;
    Word w;  // composition order: last traversed edge first
    for (VertexId v = to; v != from; v = g.edge(*parent[v]).src) w.push_back(*parent[v]);
    return make_path(g, std::move(w));
}

bool is_loop_at(const KGraph& g, EdgeId e, VertexId v) { return g.edge(e).src == v && g.edge(e).dst == v; }

Tristate relational(const KGraph& g, VertexId v, int budget) {
    std::vector<EdgeId> loops;
    std::set<int> loop_colors;
    bool leaves = false;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (is_loop_at(g, e, v)) {
            loops.push_back(e);
            loop_colors.insert(g.color(e));
        } else if (g.edge(e).src == v) {
            leaves = true;
        }
    }
    // equal-degree loops with a common multiple would force equal factors
    if (loop_colors.size() < 2 || !leaves) return Tristate::no;
    try {
        PathCatalog catalog(g, EnumerationBudget{budget, EnumerationBudget{}.max_paths});
        std::map<std::pair<VertexId, Word>, EdgeId> seen;
        for (const NormalPath& lam : catalog.paths_up_to(budget)) {
            if (lam.is_identity() || lam.source() != v || is_loop_at(g, lam.word().back(), v)) continue;
            for (EdgeId mu : loops) {
                const NormalPath joined = normal_form(g, compose(g, lam.path(), edge_path(g, mu)));
                auto [it, fresh] = seen.emplace(std::make_pair(joined.source(), joined.word()), mu);
                if (!fresh && it->second != mu) return Tristate::yes;
            }
        }
    } catch (const ResourceError&) {
        return Tristate::unknown;
    }
    return Tristate::unknown;
}

}  // namespace

std::vector<PureCycle> pure_primitive_cycles(const KGraph& g) {
    std::vector<PureCycle> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (int c = 1; c <= g.rank(); ++c) {
            auto cycles = simple_cycles(g, v, c, 100000);
            out.insert(out.end(), cycles.begin(), cycles.end());
        }
    }
    return out;
}

std::optional<DoublePureCycle> double_pure_cycle_property(const KGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::optional<std::pair<PureCycle, PureCycle>>> pair_at(n);
    std::vector<int> color_at(n, 0);
    for (VertexId w = 0; w < n; ++w) {
        for (int c = 1; c <= g.rank() && !pair_at[w]; ++c) {
            auto cycles = simple_cycles(g, w, c, 2);
            if (cycles.size() >= 2) {
                pair_at[w] = std::make_pair(cycles[0], cycles[1]);
                color_at[w] = c;
            }
        }
    }
    std::vector<std::vector<bool>> reach(n);
    for (VertexId v = 0; v < n; ++v) reach[v] = reachable_from(g, v);
    for (VertexId v = 0; v < n; ++v) {
        bool hits = false;
        for (VertexId w = 0; w < n && !hits; ++w) hits = pair_at[w] && reach[v][w];
        if (!hits) return std::nullopt;
    }
    std::optional<VertexId> base;
    bool all = false;
    for (VertexId w = 0; w < n && !all; ++w) {
        if (!pair_at[w]) continue;
        bool every = true;
        for (VertexId v = 0; v < n; ++v) every = every && reach[v][w];
        if (every || !base) {
            base = w;
            all = every;
        }
    }
    DoublePureCycle out;
    out.base = *base;
    out.color = color_at[*base];
    out.first = pair_at[*base]->first;
    out.second = pair_at[*base]->second;
    out.reaches_all = all;
    out.access.resize(n);
    for (VertexId v = 0; v < n; ++v) out.access[v] = shortest_path(g, v, *base);
    return out;
}

std::vector<VertexClass> classify_vertices(const KGraph& g) {
    const int budget = static_cast<int>(g.vertex_count()) + 2;
    std::vector<VertexClass> out(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        VertexClass& c = out[v];
        c.radiating = true;
        std::map<int, int> loops;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (g.edge(e).dst == v && g.edge(e).src != v) c.radiating = false;
            if (is_loop_at(g, e, v)) ++loops[g.color(e)];
        }
        c.multiplicity_one = std::all_of(loops.begin(), loops.end(), [](const auto& kv) { return kv.second <= 1; });
        if (c.radiating) {
            c.relational = relational(g, v, budget);
            c.relational_budget = budget;
        }
    }
    return out;
}

ReflexivityReport reflexivity_report(const KGraph& g) {
    ReflexivityReport r;
    r.hyper_reflexive_by_dpc = double_pure_cycle_property(transpose(g)).has_value();
    if (r.hyper_reflexive_by_dpc) r.distance_constant_bound = 3;
    r.vertices = classify_vertices(g);
    r.reflexive_by_vertex_criterion = std::none_of(r.vertices.begin(), r.vertices.end(), [](const VertexClass& c) {
        return c.radiating && c.multiplicity_one && c.relational != Tristate::no;
    });
    if (g.vertex_count() == 1) {
        std::map<int, int> per_color;
        for (const Edge& e : g.edges()) ++per_color[e.color];
        r.single_vertex_hinfty =
            std::all_of(per_color.begin(), per_color.end(), [](const auto& kv) { return kv.second <= 1; });
    }
    return r;
}

namespace {

using IntMatrix = Eigen::SparseMatrix<std::int64_t>;

std::int64_t max_entry(const IntMatrix& m) {
    std::int64_t out = 0;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
        for (IntMatrix::InnerIterator it(m, c); it; ++it) out = std::max(out, std::abs(it.value()));
    }
    return out;
}

std::vector<std::int64_t> pattern_key(const IntMatrix& m) {
    std::vector<std::int64_t> key;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
        for (IntMatrix::InnerIterator it(m, c); it; ++it) {
            key.push_back(it.row());
            key.push_back(it.col());
            key.push_back(it.value());
        }
    }
    return key;
}

}  // namespace

RadicalReport radical_check(const FockPtr& space, int word_grading) {
    const auto& f = *space;
    const auto& g = f.graph();
    RadicalReport rep;
    rep.generators = nc_edges(g);
    rep.nilpotency_bound = static_cast<int>(g.vertex_count());
    rep.word_grading = word_grading;

    std::vector<const NormalPath*> multipliers;
    for (const NormalPath& p : f.basis()) {
        if (p.grading() <= word_grading) multipliers.push_back(&p);
    }
    for (EdgeId e : rep.generators) {
        const IntMatrix le = left_op(space, edge_path(g, e)).matrix;
        for (const NormalPath* a : multipliers) {
            const IntMatrix ala = left_op(space, a->path()).matrix * le;
            for (const NormalPath* b : multipliers) {
                const IntMatrix prod = ala * left_op(space, b->path()).matrix * le;
                ++rep.square_checks;
                rep.square_residual = std::max(rep.square_residual, max_entry(prod));
                // the untruncated product is nonzero exactly when the word composes
                const bool composes = a->source() == g.edge(e).dst && g.edge(e).src == b->range() &&
                                      b->source() == g.edge(e).dst;
                if (composes) rep.square_residual = std::max<std::int64_t>(rep.square_residual, 1);
            }
        }
    }

    std::set<std::vector<std::int64_t>> keys;
    std::vector<IntMatrix> ideal;
    for (EdgeId e : rep.generators) {
        const Path lam = edge_path(g, e);
        for (const NormalPath& beta : f.basis()) {
            if (beta.source() != lam.range) continue;
            for (const NormalPath& gamma : f.basis()) {
                if (gamma.range() != lam.source) continue;
                if (beta.grading() + 1 + gamma.grading() > f.truncation()) continue;
                IntMatrix m = left_op(space, beta.path()).matrix * left_op(space, lam).matrix *
                              left_op(space, gamma.path()).matrix;
                m.prune(std::int64_t{0});
                if (m.nonZeros() == 0) continue;
                if (keys.insert(pattern_key(m)).second) ideal.push_back(std::move(m));
            }
        }
    }
    rep.ideal_words = ideal.size();

    std::vector<IntMatrix> level = ideal;
    int r = 1;
    while (!level.empty() && r < rep.nilpotency_bound) {
        std::set<std::vector<std::int64_t>> next_keys;
        std::vector<IntMatrix> next;
        for (const IntMatrix& x : level) {
            for (const IntMatrix& y : ideal) {
                IntMatrix m = x * y;
                m.prune(std::int64_t{0});
                ++rep.product_checks;
                if (m.nonZeros() == 0) continue;
                if (next_keys.insert(pattern_key(m)).second) next.push_back(std::move(m));
            }
        }
        level = std::move(next);
        ++r;
    }
    for (const IntMatrix& m : level) rep.product_residual = std::max(rep.product_residual, max_entry(m));
    if (level.empty()) {
        rep.observed_nilpotency = r;
    } else {
        // keep multiplying to report the actual degree, bounded by the truncation
        int extra = r;
        while (!level.empty() && extra <= f.truncation() + 1) {
            std::vector<IntMatrix> next;
            std::set<std::vector<std::int64_t>> next_keys;
            for (const IntMatrix& x : level) {
                for (const IntMatrix& y : ideal) {
                    IntMatrix m = x * y;
                    m.prune(std::int64_t{0});
                    if (m.nonZeros() && next_keys.insert(pattern_key(m)).second) next.push_back(std::move(m));
                }
            }
            level = std::move(next);
            ++extra;
        }
        rep.observed_nilpotency = extra;
    }
    return rep;
}

ExtremalReport extremal_factorization_check(const KGraph& g, const std::vector<Path>& paths, int max_power) {
    if (paths.empty()) throw DomainError("extremal check needs at least one path");
    const int n = paths.front().grading();
    for (const Path& p : paths) {
        if (p.grading() != n) throw DomainError("extremal check needs paths of a single grading");
    }
    ExtremalReport rep;
    rep.max_power = max_power;
    rep.gamma = paths.front().degree;
    for (const Path& p : paths) rep.gamma = std::max(rep.gamma, p.degree);

    std::vector<NormalPath> chosen;
    for (const Path& p : paths) {
        if (p.degree != rep.gamma) continue;
        NormalPath np = p.is_identity() ? identity_path(g, p.source) : normal_form(g, p);
        if (std::find(chosen.begin(), chosen.end(), np) == chosen.end()) chosen.push_back(std::move(np));
    }
    PathCatalog catalog(g, EnumerationBudget{rep.gamma.grading() * max_power, EnumerationBudget{}.max_paths});
    const auto& all = catalog.paths_of_degree(rep.gamma);

    // r-tuples of degree-gamma paths, composed; count tuples per resulting class
    std::vector<Path> level;
    for (const NormalPath& p : all) level.push_back(p.path());
    for (int r = 1; r <= max_power; ++r) {
        std::map<std::pair<VertexId, Word>, std::size_t> counts;
        for (const Path& p : level) {
            const NormalPath np = p.is_identity() ? identity_path(g, p.source) : normal_form(g, p);
            ++counts[{np.source(), np.word()}];
        }
        // every composable product of chosen paths must have exactly one factorization
        std::vector<Path> products;
        auto build = [&](auto&& self, int depth, const std::optional<Path>& acc) -> void {
            if (depth == r) {
                products.push_back(*acc);
                return;
            }
            for (const NormalPath& c : chosen) {
                if (acc && acc->source != c.range()) continue;
                self(self, depth + 1, acc ? compose(g, *acc, c.path()) : c.path());
            }
        };
        build(build, 0, std::nullopt);
        for (const Path& p : products) {
            const NormalPath np = p.is_identity() ? identity_path(g, p.source) : normal_form(g, p);
            ++rep.checked;
            if (counts[{np.source(), np.word()}] != 1) ++rep.violations;
        }
        if (r == max_power) break;
        std::vector<Path> next;
        for (const Path& p : level) {
            for (const NormalPath& q : all) {
                if (p.source != q.range()) continue;
                next.push_back(compose(g, p, q.path()));
            }
        }
        level = std::move(next);
    }
    return rep;
}

StructureReport analyze(const KGraph& g) {
    StructureReport r;
    r.nc = nc_edges(g);
    r.semisimple = r.nc.empty();
    r.nilpotency_bound = static_cast<int>(g.vertex_count());
    r.double_pure_cycle = double_pure_cycle_property(g);
    r.reflexivity = reflexivity_report(g);
    r.cycles = pure_primitive_cycles(g);
    return r;
}

}  // namespace kgraph
