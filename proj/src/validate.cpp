#include "kgraph/validate.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

namespace kgraph {

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::square_cardinality: return "square_cardinality";
        case FailureKind::missing_square: return "missing_square";
        case FailureKind::duplicate_square: return "duplicate_square";
        case FailureKind::factorization: return "factorization";
        case FailureKind::confluence: return "confluence";
    }
    return "unknown";
}

bool ValidationReport::has(FailureKind kind) const {
    return std::any_of(failures.begin(), failures.end(), [&](const auto& f) { return f.kind == kind; });
}

namespace {

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = w.size();
        for (EdgeId e : w) h = h * 0x9E3779B97F4A7C15ull + e + 1;
        return h;
    }
};

std::string word_string(const KGraph& g, const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += g.edge(w[i]).name;
    }
    return s;
}

class Recorder {
public:
    explicit Recorder(ValidationReport& r) : report_(r) {}

    void add(ValidationFailure f) {
        ++report_.failure_total;
        auto& n = per_kind_[f.kind];
        if (n++ < ValidationReport::kMaxRecorded) report_.failures.push_back(std::move(f));
    }

private:
    ValidationReport& report_;
    std::map<FailureKind, std::size_t> per_kind_;
};

void check_squares(const KGraph& g, Recorder& rec) {
    // (colour i, colour j, range vertex, source vertex) -> count
    std::map<std::tuple<int, int, VertexId, VertexId>, std::size_t> in_order, out_of_order;
    const auto& edges = g.edges();
    for (EdgeId x = 0; x < edges.size(); ++x) {
        for (EdgeId y = 0; y < edges.size(); ++y) {
            const Edge& left = edges[x];
            const Edge& right = edges[y];
            if (left.color == right.color || left.src != right.dst) continue;
            const bool ordered = left.color < right.color;
            const int ci = std::min(left.color, right.color);
            const int cj = std::max(left.color, right.color);
            const auto key = std::make_tuple(ci, cj, left.dst, right.src);
            auto hits = ordered ? g.squares_with_lhs(x, y) : g.squares_with_rhs(x, y);
            (ordered ? in_order : out_of_order)[key] += 1;
            if (hits.size() == 1) continue;
            ValidationFailure f;
            f.kind = hits.empty() ? FailureKind::missing_square : FailureKind::duplicate_square;
            f.word = word_string(g, {x, y});
            f.count = hits.size();
            f.detail = std::string(ordered ? "in-order" : "out-of-order") + " pair lies on " +
                       std::to_string(hits.size()) + " squares";
            rec.add(std::move(f));
        }
    }
    std::map<std::tuple<int, int, VertexId, VertexId>, std::pair<std::size_t, std::size_t>> merged;
    for (auto& [k, n] : in_order) merged[k].first = n;
    for (auto& [k, n] : out_of_order) merged[k].second = n;
    for (auto& [k, counts] : merged) {
        if (counts.first == counts.second) continue;
        auto [ci, cj, r, s] = k;
        ValidationFailure f;
        f.kind = FailureKind::square_cardinality;
        f.detail = "colours " + std::to_string(ci) + "," + std::to_string(cj) + " from " + g.vertex_name(s) +
                   " to " + g.vertex_name(r) + ": " + std::to_string(counts.first) + " in-order pairs vs " +
                   std::to_string(counts.second) + " out-of-order pairs";
        rec.add(std::move(f));
    }
}

class ConfluenceChecker {
public:
    explicit ConfluenceChecker(const KGraph& g) : g_(g) {}

    struct Outcome {
        bool unique = false;
        Word normal;
    };

    const Outcome& terminal(const Word& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        Outcome out;
        if (is_block_sorted(g_, w)) {
            out.unique = true;
            out.normal = w;
            return memo_.emplace(w, std::move(out)).first->second;
        }
        std::optional<Word> found;
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < w.size(); ++i) {
            if (g_.color(w[i]) <= g_.color(w[i + 1])) continue;
            auto hits = g_.squares_with_rhs(w[i], w[i + 1]);
            if (hits.empty()) {
                ok = false;
                break;
            }
            for (std::size_t h : hits) {
                Word next = w;
                next[i] = g_.squares()[h].lhs_left;
                next[i + 1] = g_.squares()[h].lhs_right;
                const Outcome& sub = terminal(next);
                if (!sub.unique || (found && *found != sub.normal)) {
                    ok = false;
                    break;
                }
                found = sub.normal;
            }
        }
        out.unique = ok && found.has_value();
        if (out.unique) out.normal = *found;
        return memo_.emplace(w, std::move(out)).first->second;
    }

    void clear() { memo_.clear(); }

private:
    const KGraph& g_;
    std::unordered_map<Word, Outcome, WordHash> memo_;
};

void check_confluence(const KGraph& g, int max_grading, ValidationReport& report, Recorder& rec) {
    ConfluenceChecker checker(g);
    Word w;
    for (int len = 2; len <= max_grading; ++len) {
        checker.clear();
        // all composable raw words of this length, built right to left
        auto extend = [&](auto&& self) -> void {
            if (static_cast<int>(w.size()) == len) {
                std::reverse(w.begin(), w.end());
                ++report.words_checked;
                if (!checker.terminal(w).unique) {
                    ValidationFailure f;
                    f.kind = FailureKind::confluence;
                    f.word = word_string(g, w);
                    f.detail = "rewrite orders do not reach a single normal form";
                    rec.add(std::move(f));
                }
                std::reverse(w.begin(), w.end());
                return;
            }
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                if (!w.empty() && g.edge(w.back()).dst != g.edge(e).src) continue;
                w.push_back(e);
                self(self);
                w.pop_back();
            }
        };
        extend(extend);
    }
}

void check_factorization(const KGraph& g, int max_grading, ValidationReport& report, Recorder& rec) {
    PathCatalog catalog(g, EnumerationBudget{max_grading, EnumerationBudget{}.max_paths});
    const auto rank = static_cast<std::size_t>(g.rank());
    for (int n = 0; n <= max_grading; ++n) {
        for (const Degree& d : degrees_of_grading(rank, n)) {
            const auto& targets = catalog.paths_of_degree(d);
            std::map<std::pair<VertexId, Word>, std::size_t> index;
            for (std::size_t i = 0; i < targets.size(); ++i) {
                index.emplace(std::make_pair(targets[i].source(), targets[i].word()), i);
            }
            report.normal_paths_checked += targets.size();
            for (const Degree& m : degrees_below(d)) {
                const Degree rest = d - m;
                std::vector<std::size_t> counts(targets.size(), 0);
                for (const auto& mu : catalog.paths_of_degree(m)) {
                    for (const auto& nu : catalog.paths_of_degree(rest)) {
                        if (mu.source() != nu.range()) continue;
                        NormalPath lam = normal_form(g, compose(g, mu.path(), nu.path()));
                        auto it = index.find({lam.source(), lam.word()});
                        if (it == index.end()) {
                            ValidationFailure f;
                            f.kind = FailureKind::factorization;
                            f.word = to_string(g, lam.path());
                            f.detail = "product of normal paths is missing from the enumeration";
                            rec.add(std::move(f));
                            continue;
                        }
                        ++counts[it->second];
                    }
                }
                for (std::size_t i = 0; i < targets.size(); ++i) {
                    ++report.splits_checked;
                    if (counts[i] == 1) continue;
                    ValidationFailure f;
                    f.kind = FailureKind::factorization;
                    f.word = to_string(g, targets[i].path());
                    f.split_left = m;
                    f.split_right = rest;
                    f.count = counts[i];
                    f.detail = std::to_string(counts[i]) + " factorizations for split " + m.str() + " + " +
                               rest.str();
                    rec.add(std::move(f));
                }
            }
        }
    }
}

}  // namespace

ValidationReport validate(const KGraph& g, int max_grading) {
    ValidationReport report;
    report.max_grading = max_grading;
    Recorder rec(report);
    check_squares(g, rec);
    check_confluence(g, max_grading, report, rec);
    try {
        check_factorization(g, max_grading, report, rec);
    } catch (const MalformedGraphError& e) {
        ValidationFailure f;
        f.kind = FailureKind::missing_square;
        f.detail = std::string("factorization check aborted: ") + e.what();
        rec.add(std::move(f));
    }
    return report;
}

}  // namespace kgraph
