#include "kgraph/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace kgraph {

SingleVertexLayout layout_of(const KGraph& g) {
    if (g.vertex_count() != 1) throw UnsupportedGraphError("character computations need a single-vertex graph");
    SingleVertexLayout out;
    out.sizes.assign(static_cast<std::size_t>(g.rank()), 0);
    out.coordinate.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.coordinate[e] = out.sizes[g.color(e) - 1]++;
    return out;
}

std::string to_string(const VarietyPolynomial& poly) {
    std::ostringstream os;
    os << "z" << poly.i << "_" << poly.p << "*z" << poly.j << "_" << poly.q << " - z" << poly.j << "_" << poly.s
       << "*z" << poly.i << "_" << poly.r;
    return os.str();
}

std::vector<VarietyPolynomial> variety_polynomials(const std::vector<int>& sizes, const ThetaFamily& theta) {
    std::set<VarietyPolynomial> out;
    const int k = static_cast<int>(sizes.size());
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            const int nj = sizes[j - 1];
            for (int t = 0; t < sizes[i - 1] * nj; ++t) {
                const int img = theta.image(i, j, t);
                VarietyPolynomial poly{i, t / nj + 1, j, t % nj + 1, img % nj + 1, img / nj + 1};
                if (poly.p == poly.r && poly.q == poly.s) continue;
                out.insert(poly);
            }
        }
    }
    return {out.begin(), out.end()};
}

std::vector<VarietyPolynomial> variety_polynomials(const KGraph& g) {
    const auto layout = layout_of(g);
    std::set<VarietyPolynomial> out;
    for (const auto& sq : g.squares()) {
        VarietyPolynomial poly{g.color(sq.lhs_left),
                               layout.coordinate[sq.lhs_left] + 1,
                               g.color(sq.lhs_right),
                               layout.coordinate[sq.lhs_right] + 1,
                               layout.coordinate[sq.rhs_left] + 1,
                               layout.coordinate[sq.rhs_right] + 1};
        if (poly.p == poly.r && poly.q == poly.s) continue;
        out.insert(poly);
    }
    return {out.begin(), out.end()};
}

std::complex<double> evaluate(const VarietyPolynomial& poly, const BallPoint& alpha) {
    auto z = [&](int color, int index) {
        return alpha.at(static_cast<std::size_t>(color - 1))(index - 1);
    };
    return z(poly.i, poly.p) * z(poly.j, poly.q) - z(poly.j, poly.s) * z(poly.i, poly.r);
}

double variety_residual(const std::vector<VarietyPolynomial>& polys, const BallPoint& alpha) {
    double out = 0.0;
    for (const auto& p : polys) out = std::max(out, std::abs(evaluate(p, alpha)));
    return out;
}

bool in_variety(const std::vector<VarietyPolynomial>& polys, const BallPoint& alpha, double tol) {
    return variety_residual(polys, alpha) <= tol;
}

bool in_closed_ball(const BallPoint& alpha) {
    return std::all_of(alpha.begin(), alpha.end(), [](const auto& b) { return b.squaredNorm() <= 1.0; });
}

bool in_open_ball(const BallPoint& alpha) {
    return std::all_of(alpha.begin(), alpha.end(), [](const auto& b) { return b.squaredNorm() < 1.0; });
}

void check_shape(const SingleVertexLayout& layout, const BallPoint& alpha) {
    if (alpha.size() != layout.sizes.size()) throw DomainError("point has the wrong number of colour blocks");
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i].size() != layout.sizes[i]) {
            throw DomainError("colour block " + std::to_string(i + 1) + " has " + std::to_string(alpha[i].size()) +
                              " coordinates, expected " + std::to_string(layout.sizes[i]));
        }
    }
}

std::complex<double> evaluate_word(const KGraph& g, const Word& word, const BallPoint& alpha) {
    const auto layout = layout_of(g);
    check_shape(layout, alpha);
    std::complex<double> out = 1.0;
    for (EdgeId e : word) out *= alpha[static_cast<std::size_t>(g.color(e) - 1)](layout.coordinate.at(e));
    return out;
}

std::complex<double> evaluate_path(const KGraph& g, const Path& path, const BallPoint& alpha) {
    return evaluate_word(g, path.word, alpha);
}

namespace {

void require_point(const KGraph& g, const BallPoint& alpha, double tol) {
    check_shape(layout_of(g), alpha);
    if (!in_open_ball(alpha)) throw DivergenceError("point lies outside the open ball");
    const double res = variety_residual(variety_polynomials(g), alpha);
    if (res > tol) {
        throw VarietyError("point is off the variety (residual " + std::to_string(res) + ")");
    }
}

BallPoint conjugate(const BallPoint& alpha) {
    BallPoint out = alpha;
    for (auto& b : out) b = b.conjugate().eval();
    return out;
}

double rho_max(const BallPoint& alpha) {
    double out = 0.0;
    for (const auto& b : alpha) out = std::max(out, b.squaredNorm());
    return out;
}

// Block-sorted words over the layout, depth-first, letters of colour >= the last one.
template <class Visit>
void for_each_normal_word(const KGraph& g, int max_grading, Visit&& visit) {
    std::vector<std::vector<EdgeId>> by_color(static_cast<std::size_t>(g.rank()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) by_color[g.color(e) - 1].push_back(e);
    Word w;
    auto dfs = [&](auto&& self, int color) -> void {
        visit(static_cast<const Word&>(w));
        if (static_cast<int>(w.size()) == max_grading) return;
        for (int c = color; c <= g.rank(); ++c) {
            for (EdgeId e : by_color[c - 1]) {
                w.push_back(e);
                self(self, c);
                w.pop_back();
            }
        }
    };
    dfs(dfs, 1);
}

}  // namespace

Eigen::VectorXcd omega(const TruncatedFock& space, const BallPoint& alpha, double tol) {
    const auto& g = space.graph();
    require_point(g, alpha, tol);
    Eigen::VectorXcd out(space.dimension());
    for (Eigen::Index i = 0; i < space.dimension(); ++i) {
        out(i) = evaluate_path(g, space.basis()[static_cast<std::size_t>(i)].path(), alpha);
    }
    return out;
}

std::complex<double> vector_state(const ComplexOperator& a, const BallPoint& alpha) {
    Eigen::VectorXcd nu = omega(*a.space, conjugate(alpha));
    nu.normalize();
    const Eigen::VectorXcd image = a.matrix * nu;
    return nu.dot(image);
}

double omega_norm_closed_form(const BallPoint& alpha) {
    double out = 1.0;
    for (const auto& b : alpha) {
        const double r = b.squaredNorm();
        if (r >= 1.0) throw DivergenceError("point lies outside the open ball");
        out /= 1.0 - r;
    }
    return out;
}

double omega_tail_bound(const BallPoint& alpha, int truncation) {
    const double rho = rho_max(alpha);
    if (rho >= 1.0) throw DivergenceError("point lies outside the open ball");
    if (rho == 0.0) return 0.0;
    const double k = static_cast<double>(alpha.size());
    // term_g = C(g+k-1, k-1) rho^g, tracked in log space
    double log_term = 0.0;
    for (int g = 1; g <= truncation + 1; ++g) log_term += std::log((g + k - 1) / g) + std::log(rho);
    double sum = 0.0;
    for (int g = truncation + 1;; ++g) {
        const double term = std::exp(log_term);
        sum += term;
        const double ratio = (g + k) / (g + 1) * rho;
        if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= 1e-18 * std::max(sum, 1e-300)) {
            sum += term * ratio / (1.0 - ratio);
            break;
        }
        if (g > truncation + 1000000) break;
        log_term += std::log(ratio);
    }
    return sum;
}

int truncation_for_tail(const BallPoint& alpha, double tol) {
    for (int n = 0; n < 100000; ++n) {
        if (omega_tail_bound(alpha, n) <= tol) return n;
    }
    throw DivergenceError("tail does not fall below tolerance");
}

bool NormCheck::ok(double tol) const {
    return std::abs(partial - by_degrees) <= tol * closed_form && partial <= closed_form + tol &&
           closed_form - partial <= tail_bound + tol;
}

NormCheck omega_norm_check(const KGraph& g, const BallPoint& alpha, int truncation) {
    require_point(g, alpha, 1e-9);
    NormCheck out;
    out.truncation = truncation;
    out.closed_form = omega_norm_closed_form(alpha);
    out.tail_bound = omega_tail_bound(alpha, truncation);

    const auto layout = layout_of(g);
    std::vector<double> weight(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        weight[e] = std::norm(alpha[static_cast<std::size_t>(g.color(e) - 1)](layout.coordinate[e]));
    }
    std::vector<std::vector<EdgeId>> by_color(static_cast<std::size_t>(g.rank()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) by_color[g.color(e) - 1].push_back(e);
    auto dfs = [&](auto&& self, int color, int depth, double w) -> void {
        out.partial += w;
        ++out.words;
        if (depth == truncation) return;
        for (int c = color; c <= g.rank(); ++c) {
            for (EdgeId e : by_color[c - 1]) self(self, c, depth + 1, w * weight[e]);
        }
    };
    dfs(dfs, 1, 0, 1.0);

    std::vector<double> r;
    for (const auto& b : alpha) r.push_back(b.squaredNorm());
    auto degrees = [&](auto&& self, std::size_t color, int left, double w) -> void {
        if (color == r.size()) {
            out.by_degrees += w;
            return;
        }
        for (int m = 0; m <= left; ++m) {
            self(self, color + 1, left - m, w);
            w *= r[color];
        }
    };
    degrees(degrees, 0, truncation, 1.0);
    return out;
}

EigenCheck eigen_check(const KGraph& g, EdgeId e, const BallPoint& alpha, int truncation, double tol) {
    require_point(g, alpha, tol);
    const auto layout = layout_of(g);
    if (e >= g.edge_count()) throw DomainError("unknown edge");
    auto value = [&](EdgeId x) {
        return alpha[static_cast<std::size_t>(g.color(x) - 1)](layout.coordinate[x]);
    };
    std::vector<std::vector<EdgeId>> by_color(static_cast<std::size_t>(g.rank()));
    for (EdgeId x = 0; x < g.edge_count(); ++x) by_color[g.color(x) - 1].push_back(x);

    EigenCheck out;
    out.edge = g.edge(e).name;
    out.truncation = truncation;
    const std::complex<double> alpha_e = value(e);
    // lambda = x_1 ... x_t is built left to right; e is pushed right through the prefix
    // letters of smaller colour until it settles.
    auto dfs = [&](auto&& self, int color, int depth, std::complex<double> p, std::complex<double> q,
                   std::optional<EdgeId> carried) -> void {
        const std::complex<double> image = carried ? q * value(*carried) : q;
        out.max_residual = std::max(out.max_residual, std::abs(image - alpha_e * p));
        ++out.components;
        if (depth == truncation - 1) return;
        for (int c = color; c <= g.rank(); ++c) {
            for (EdgeId x : by_color[c - 1]) {
                const std::complex<double> p2 = p * value(x);
                if (carried && g.color(x) < g.color(*carried)) {
                    auto hits = g.squares_with_rhs(*carried, x);
                    if (hits.size() != 1) throw MalformedGraphError("pair without a unique commutation square");
                    const auto& sq = g.squares()[hits.front()];
                    self(self, c, depth + 1, p2, q * value(sq.lhs_left), sq.lhs_right);
                } else if (carried) {
                    self(self, c, depth + 1, p2, q * value(*carried) * value(x), std::nullopt);
                } else {
                    self(self, c, depth + 1, p2, q * value(x), std::nullopt);
                }
            }
        }
    };
    if (truncation >= 1) dfs(dfs, 1, 0, 1.0, 1.0, e);
    return out;
}

Character::Character(const KGraph& g, BallPoint alpha, int truncation, bool require_variety, double tol)
    : graph_(g), layout_(layout_of(g)), alpha_(std::move(alpha)), truncation_(truncation) {
    check_shape(layout_, alpha_);
    if (!in_open_ball(alpha_)) throw DivergenceError("point lies outside the open ball");
    if (require_variety) require_point(graph_, alpha_, tol);
    normalizer_ = pairing({}, truncation_).real();
}

std::complex<double> Character::letter(EdgeId e) const {
    return alpha_[static_cast<std::size_t>(graph_.color(e) - 1)](layout_.coordinate[e]);
}

std::complex<double> Character::pairing(const Word& kappa, int budget) const {
    const auto& g = graph_;
    // state: (colour floor for the next letter of rho, unsettled suffix of kappa of higher colour)
    using State = std::pair<int, Word>;
    std::map<State, std::complex<double>> level;
    std::complex<double> w0 = 1.0;
    Word active;
    for (EdgeId x : kappa) {
        if (g.color(x) <= 1) w0 *= letter(x);
        else active.push_back(x);
    }
    level[{1, active}] = w0;
    std::complex<double> total = 0.0;
    for (int len = 0; len <= budget; ++len) {
        for (const auto& [state, w] : level) {
            std::complex<double> tail = w;
            for (EdgeId a : state.second) tail *= letter(a);
            total += tail;
        }
        if (len == budget) break;
        std::map<State, std::complex<double>> next;
        for (const auto& [state, w] : level) {
            for (EdgeId x = 0; x < g.edge_count(); ++x) {
                const int cx = g.color(x);
                if (cx < state.first) continue;
                const Word& a = state.second;
                std::size_t split = 0;
                std::complex<double> weight = w;
                while (split < a.size() && g.color(a[split]) <= cx) weight *= letter(a[split++]);
                Word rest(a.begin() + static_cast<std::ptrdiff_t>(split), a.end());
                EdgeId y = x;
                for (std::size_t pos = rest.size(); pos-- > 0;) {
                    auto hits = g.squares_with_rhs(rest[pos], y);
                    if (hits.size() != 1) throw MalformedGraphError("pair without a unique commutation square");
                    const auto& sq = g.squares()[hits.front()];
                    rest[pos] = sq.lhs_right;
                    y = sq.lhs_left;
                }
                weight *= std::conj(letter(x)) * letter(y);
                next[{cx, std::move(rest)}] += weight;
            }
        }
        level = std::move(next);
    }
    return total;
}

std::complex<double> Character::operator()(const Path& kappa) const {
    const NormalPath np = kappa.is_identity() ? identity_path(graph_, kappa.source) : normal_form(graph_, kappa);
    if (np.grading() > truncation_) return 0.0;
    if (auto it = cache_.find(np.word()); it != cache_.end()) return it->second;
    const std::complex<double> v = pairing(np.word(), truncation_ - np.grading()) / normalizer_;
    cache_.emplace(np.word(), v);
    return v;
}

MultiplicativityReport multiplicativity_check(const Character& rho, int word_grading) {
    const auto& g = rho.graph();
    MultiplicativityReport out;
    out.truncation = rho.truncation();
    out.word_grading = word_grading;
    std::vector<Path> words;
    for_each_normal_word(g, word_grading, [&](const Word& w) {
        words.push_back(w.empty() ? identity_path(g, 0).path() : make_path(g, w));
    });
    for (const Path& lam : words) {
        for (const Path& mu : words) {
            const Path joined = compose(g, lam, mu);
            const double res = std::abs(rho(joined) - rho(lam) * rho(mu));
            ++out.pairs;
            if (res > out.max_residual) {
                out.max_residual = res;
                out.worst = "(" + to_string(g, lam) + ") (" + to_string(g, mu) + ")";
            }
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Path p = edge_path(g, e);
        out.max_generator_error = std::max(out.max_generator_error, std::abs(rho(p) - evaluate_path(g, p, rho.alpha())));
    }
    return out;
}

BallPoint sample_variety_point(const std::vector<VarietyPolynomial>& polys, const std::vector<int>& sizes,
                               std::mt19937_64& rng, double min_norm_sq, double max_norm_sq) {
    std::vector<int> offset(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) offset[i + 1] = offset[i] + sizes[i];
    std::vector<int> parent(static_cast<std::size_t>(offset.back()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (const auto& p : polys) {
        unite(offset[p.i - 1] + p.p - 1, offset[p.i - 1] + p.r - 1);
        unite(offset[p.j - 1] + p.q - 1, offset[p.j - 1] + p.s - 1);
    }
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(min_norm_sq, max_norm_sq);
    std::vector<std::complex<double>> root_value(parent.size());
    for (std::size_t x = 0; x < parent.size(); ++x) root_value[x] = {gauss(rng), gauss(rng)};
    BallPoint out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Eigen::VectorXcd block(sizes[i]);
        for (int p = 0; p < sizes[i]; ++p) block(p) = root_value[static_cast<std::size_t>(find(offset[i] + p))];
        const double target = unit(rng);
        block *= std::sqrt(target) / block.norm();
        out.push_back(std::move(block));
    }
    return out;
}

double diagonal_ball_radius(int n, double tol) {
    double lo = 0.0, hi = 2.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        BallPoint p{Eigen::VectorXcd::Constant(n, mid)};
        (in_closed_ball(p) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace kgraph
