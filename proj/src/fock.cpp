#include "kgraph/fock.hpp"

#include <algorithm>
#include <set>

#include "kgraph/builders.hpp"
#include "kgraph/structure.hpp"

namespace kgraph {

using Triplet = Eigen::Triplet<std::int64_t>;
using IntMatrix = Eigen::SparseMatrix<std::int64_t>;
using ComplexMatrix = Eigen::SparseMatrix<std::complex<double>>;

std::size_t TruncatedFock::WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = w.size();
    for (EdgeId e : w) h = h * 0x9E3779B97F4A7C15ull + e + 1;
    return h;
}

TruncatedFock::TruncatedFock(KGraph graph, int truncation) : graph_(std::move(graph)), truncation_(truncation) {
    if (truncation < 0) throw DomainError("truncation must be nonnegative");
    PathCatalog catalog(graph_, EnumerationBudget{truncation, EnumerationBudget{}.max_paths});
    basis_ = catalog.paths_up_to(truncation);
    identity_index_.assign(graph_.vertex_count(), -1);
    grading_end_.assign(static_cast<std::size_t>(truncation) + 1, 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        if (basis_[i].is_identity()) {
            identity_index_[basis_[i].source()] = idx;
        } else {
            word_index_.emplace(basis_[i].word(), idx);
        }
        grading_end_[static_cast<std::size_t>(basis_[i].grading())] = idx + 1;
    }
    for (std::size_t m = 1; m < grading_end_.size(); ++m) {
        grading_end_[m] = std::max(grading_end_[m], grading_end_[m - 1]);
    }
}

std::optional<Eigen::Index> TruncatedFock::find(const Path& normal) const {
    if (normal.is_identity()) {
        if (normal.source >= identity_index_.size()) return std::nullopt;
        return identity_index_[normal.source];
    }
    auto it = word_index_.find(normal.word);
    if (it == word_index_.end()) return std::nullopt;
    return it->second;
}

Eigen::Index TruncatedFock::index(const Path& normal) const {
    if (auto i = find(normal)) return *i;
    throw DomainError("path '" + to_string(graph_, normal) + "' is not a basis vector of the truncation");
}

Eigen::Index TruncatedFock::interior(int m) const {
    if (m < 0) return 0;
    if (m > truncation_) return dimension();
    return grading_end_[static_cast<std::size_t>(m)];
}

IntMatrix TruncatedFock::grading_projection(int n) const {
    IntMatrix p(dimension(), dimension());
    std::vector<Triplet> t;
    for (Eigen::Index i = interior(n - 1); i < interior(n); ++i) t.emplace_back(i, i, 1);
    p.setFromTriplets(t.begin(), t.end());
    return p;
}

FockPtr make_fock(const KGraph& g, int truncation) { return std::make_shared<const TruncatedFock>(g, truncation); }

void detail::require_same_space(const FockPtr& a, const FockPtr& b) {
    if (a != b) throw DomainError("operators act on different Fock spaces");
}

namespace {

NormalPath checked_normal(const KGraph& g, const Path& p) {
    if (p.is_identity()) return identity_path(g, p.source);
    make_path(g, p.word);
    return normal_form(g, p);
}

IntOperator creation(const FockPtr& space, const Path& lambda, bool on_left) {
    const auto& f = *space;
    const auto& g = f.graph();
    const NormalPath lam = checked_normal(g, lambda);
    const int n = f.truncation();
    if (lam.grading() > n) throw DomainError("word grading exceeds the truncation");
    std::vector<Triplet> t;
    const Eigen::Index cols = f.interior(n - lam.grading());
    for (Eigen::Index j = 0; j < cols; ++j) {
        const NormalPath& mu = f.basis()[static_cast<std::size_t>(j)];
        if (on_left ? mu.range() != lam.source() : mu.source() != lam.range()) continue;
        if (lam.is_identity()) {
            t.emplace_back(j, j, 1);
            continue;
        }
        const Path joined = on_left ? compose(g, lam.path(), mu.path()) : compose(g, mu.path(), lam.path());
        t.emplace_back(f.index(normal_form(g, joined)), j, 1);
    }
    IntMatrix m(f.dimension(), f.dimension());
    m.setFromTriplets(t.begin(), t.end());
    return {space, std::move(m), lam.grading()};
}

std::int64_t max_abs(const IntMatrix& m, Eigen::Index columns) {
    return static_cast<std::int64_t>(max_abs_in_columns(m, columns));
}

}  // namespace

IntOperator left_op(const FockPtr& space, const Path& lambda) { return creation(space, lambda, true); }
IntOperator right_op(const FockPtr& space, const Path& lambda) { return creation(space, lambda, false); }

template <class Scalar>
std::complex<double> fourier_coefficient(const SparseOperator<Scalar>& a, const Path& lambda) {
    const auto& f = *a.space;
    const NormalPath lam = checked_normal(f.graph(), lambda);
    const auto row = f.find(lam.path());
    if (!row) return 0.0;
    const auto col = f.index(identity_path(f.graph(), lam.source()).path());
    return std::complex<double>(a.matrix.coeff(*row, col));
}

template <class Scalar>
ComplexOperator diagonal(const SparseOperator<Scalar>& a, int m) {
    const auto& f = *a.space;
    std::vector<Eigen::Triplet<std::complex<double>>> t;
    for (Eigen::Index c = 0; c < a.matrix.outerSize(); ++c) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(a.matrix, c); it; ++it) {
            if (f.grading_at(it.col()) - f.grading_at(it.row()) == m) {
                t.emplace_back(it.row(), it.col(), std::complex<double>(it.value()));
            }
        }
    }
    ComplexMatrix out(f.dimension(), f.dimension());
    out.setFromTriplets(t.begin(), t.end());
    return {a.space, std::move(out), m <= 0 ? std::optional<int>(-m) : std::nullopt};
}

template <class Scalar>
ComplexOperator cesaro(const SparseOperator<Scalar>& a, int n) {
    if (n <= 0) throw DomainError("Cesaro index must be positive");
    const auto& f = *a.space;
    ComplexMatrix out(f.dimension(), f.dimension());
    int top = 0;
    for (const NormalPath& lam : f.basis()) {
        if (lam.grading() >= n) break;
        const std::complex<double> c = fourier_coefficient(a, lam.path());
        if (c == 0.0) continue;
        const double weight = 1.0 - static_cast<double>(lam.grading()) / n;
        out += (weight * c) * left_op(a.space, lam.path()).matrix.template cast<std::complex<double>>();
        top = std::max(top, lam.grading());
    }
    out.prune(std::complex<double>(0.0));
    return {a.space, std::move(out), top};
}

template <class Scalar>
ComplexOperator cesaro_by_diagonals(const SparseOperator<Scalar>& a, int n) {
    if (n <= 0) throw DomainError("Cesaro index must be positive");
    const auto& f = *a.space;
    ComplexMatrix out(f.dimension(), f.dimension());
    for (int m = -(n - 1); m <= n - 1; ++m) {
        const double weight = 1.0 - static_cast<double>(std::abs(m)) / n;
        out += weight * diagonal(a, m).matrix;
    }
    out.prune(std::complex<double>(0.0));
    return {a.space, std::move(out), std::nullopt};
}

template std::complex<double> fourier_coefficient(const IntOperator&, const Path&);
template std::complex<double> fourier_coefficient(const ComplexOperator&, const Path&);
template ComplexOperator diagonal(const IntOperator&, int);
template ComplexOperator diagonal(const ComplexOperator&, int);
template ComplexOperator cesaro(const IntOperator&, int);
template ComplexOperator cesaro(const ComplexOperator&, int);
template ComplexOperator cesaro_by_diagonals(const IntOperator&, int);
template ComplexOperator cesaro_by_diagonals(const ComplexOperator&, int);

namespace {

struct Generator {
    Path path;
    std::string name;
};

std::vector<Generator> generators(const KGraph& g) {
    std::vector<Generator> out;
    for (VertexId v = 0; v < g.vertex_count(); ++v) out.push_back({identity_path(g, v).path(), g.vertex_name(v)});
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.push_back({edge_path(g, e), g.edge(e).name});
    return out;
}

void record(ResidualReport& r, std::int64_t value, const std::string& what) {
    ++r.checks;
    if (value > r.max_residual) {
        r.max_residual = value;
        r.worst = what;
    }
}

}  // namespace

ResidualReport commutant_residual(const FockPtr& space) {
    const auto& f = *space;
    const auto gens = generators(f.graph());
    std::vector<IntOperator> left, right;
    for (const auto& x : gens) {
        left.push_back(left_op(space, x.path));
        right.push_back(right_op(space, x.path));
    }
    ResidualReport r;
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = 0; b < gens.size(); ++b) {
            const IntMatrix c = left[a].matrix * right[b].matrix - right[b].matrix * left[a].matrix;
            const int g = gens[a].path.grading() + gens[b].path.grading();
            record(r, max_abs(c, f.interior(f.truncation() - g)), "[L_" + gens[a].name + ", R_" + gens[b].name + "]");
        }
    }
    return r;
}

ResidualReport partial_isometry_residual(const FockPtr& space) {
    const auto& f = *space;
    const auto& g = f.graph();
    ResidualReport r;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const IntMatrix le = left_op(space, edge_path(g, e)).matrix;
        const IntMatrix ls = left_op(space, identity_path(g, g.edge(e).src).path()).matrix;
        const IntMatrix d = IntMatrix(le.transpose()) * le - ls;
        record(r, max_abs(d, f.interior(f.truncation() - 1)), "L_" + g.edge(e).name);
    }
    return r;
}

ResidualReport same_degree_orthogonality(const FockPtr& space, std::optional<int> max_grading) {
    const auto& f = *space;
    const auto& g = f.graph();
    const int top = std::min(max_grading.value_or(f.truncation()), f.truncation());
    ResidualReport r;
    std::vector<IntOperator> ops;
    std::vector<const NormalPath*> paths;
    for (const NormalPath& p : f.basis()) {
        if (p.grading() > top) break;
        ops.push_back(left_op(space, p.path()));
        paths.push_back(&p);
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t b = 0; b < ops.size(); ++b) {
            if (a == b || paths[a]->degree() != paths[b]->degree()) continue;
            const IntMatrix prod = IntMatrix(ops[a].matrix.transpose()) * ops[b].matrix;
            record(r, max_abs(prod, f.dimension()),
                   "L_" + to_string(g, paths[a]->path()) + "* L_" + to_string(g, paths[b]->path()));
        }
    }
    return r;
}

ResidualReport product_law_residual(const FockPtr& space, int max_grading) {
    const auto& f = *space;
    const auto& g = f.graph();
    const int top = std::min(max_grading, f.truncation());
    ResidualReport r;
    std::vector<IntOperator> ops;
    for (const NormalPath& p : f.basis()) {
        if (p.grading() > top) break;
        ops.push_back(left_op(space, p.path()));
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        const NormalPath& lam = f.basis()[a];
        for (std::size_t b = 0; b < ops.size(); ++b) {
            const NormalPath& mu = f.basis()[b];
            if (lam.grading() + mu.grading() > top || lam.source() != mu.range()) continue;
            const NormalPath joined = normal_form(g, compose(g, lam.path(), mu.path()));
            const IntMatrix d = ops[a].matrix * ops[b].matrix - left_op(space, joined.path()).matrix;
            record(r, max_abs(d, f.interior(f.truncation() - joined.grading())),
                   "L_" + to_string(g, lam.path()) + " L_" + to_string(g, mu.path()));
        }
    }
    return r;
}

IntMatrix transpose_correspondence(const FockPtr& space, const FockPtr& transposed) {
    const auto& f = *space;
    const auto& ft = *transposed;
    if (f.truncation() != ft.truncation() || f.dimension() != ft.dimension()) {
        throw DomainError("transposed space does not match");
    }
    std::vector<Triplet> t;
    for (Eigen::Index i = 0; i < f.dimension(); ++i) {
        const Path pt = transpose_path(ft.graph(), f.basis()[static_cast<std::size_t>(i)].path());
        const Path normal = pt.is_identity() ? pt : normal_form(ft.graph(), pt).path();
        t.emplace_back(i, ft.index(normal), 1);
    }
    IntMatrix u(f.dimension(), f.dimension());
    u.setFromTriplets(t.begin(), t.end());
    return u;
}

OrthogonalIsometries orthogonal_isometries(const FockPtr& space, const DoublePureCycle& witness) {
    const auto& f = *space;
    const auto& g = f.graph();
    if (!witness.reaches_all) {
        throw UnsupportedGraphError("no double-cycle vertex is reachable from every vertex");
    }
    OrthogonalIsometries out;
    IntMatrix u(f.dimension(), f.dimension());
    IntMatrix v(f.dimension(), f.dimension());
    int top = 0;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        const Path& access = *witness.access[x];
        for (int which = 0; which < 2; ++which) {
            const int power = 2 * static_cast<int>(x) + 1 + which;
            Word w;
            for (int p = 0; p < power; ++p) w.insert(w.end(), witness.first.word.begin(), witness.first.word.end());
            w.insert(w.end(), witness.second.word.begin(), witness.second.word.end());
            w.insert(w.end(), access.word.begin(), access.word.end());
            const Path path = make_path(g, std::move(w));
            top = std::max(top, path.grading());
            (which ? out.v_words : out.u_words).push_back(to_string(g, path));
            if (path.grading() > f.truncation()) continue;
            (which ? v : u) += left_op(space, path).matrix;
        }
    }
    out.u = {space, u, top};
    out.v = {space, v, top};
    out.interior_dimension = f.interior(f.truncation() - top);
    out.cross_residual = max_abs(IntMatrix(IntMatrix(u.transpose()) * v), f.dimension());
    IntMatrix id(f.dimension(), f.dimension());
    id.setIdentity();
    out.isometry_residual = max_abs(IntMatrix(IntMatrix(u.transpose()) * u - id), out.interior_dimension);
    return out;
}

OrthogonalIsometries orthogonal_isometries(const FockPtr& space) {
    auto witness = double_pure_cycle_property(space->graph());
    if (!witness) throw UnsupportedGraphError("graph lacks the double pure cycle property");
    return orthogonal_isometries(space, *witness);
}

bool CycleBlockReport::ok() const {
    return projections_block_diagonal && congruence_violations == 0 &&
           std::all_of(generators.begin(), generators.end(), [](const auto& x) { return x.ok; });
}

CycleBlockReport verify_cycle_blocks(int n, int k, int truncation) {
    const FockPtr space = make_fock(cycle_rank(n, k), truncation);
    const auto& f = *space;
    const auto& g = f.graph();
    auto block = [&](Eigen::Index i) { return static_cast<int>(f.basis()[static_cast<std::size_t>(i)].range()) + 1; };

    CycleBlockReport rep;
    rep.n = n;
    rep.k = k;
    rep.truncation = truncation;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const IntMatrix m = left_op(space, edge_path(g, e)).matrix;
        std::set<std::pair<int, int>> seen;
        for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
            for (IntMatrix::InnerIterator it(m, c); it; ++it) seen.emplace(block(it.row()), block(it.col()));
        }
        CycleBlockReport::Generator gen;
        gen.name = g.edge(e).name;
        const int j = static_cast<int>(g.edge(e).src) + 1;
        gen.expected = {j % n + 1, j};
        gen.blocks.assign(seen.begin(), seen.end());
        gen.ok = seen.size() == 1 && *seen.begin() == gen.expected;
        rep.generators.push_back(std::move(gen));
    }
    rep.projections_block_diagonal = true;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const IntMatrix m = left_op(space, identity_path(g, v).path()).matrix;
        for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
            for (IntMatrix::InnerIterator it(m, c); it; ++it) {
                if (block(it.row()) != block(it.col())) rep.projections_block_diagonal = false;
            }
        }
    }
    for (const NormalPath& p : f.basis()) {
        ++rep.congruence_checked;
        const int i = static_cast<int>(p.range());
        const int j = static_cast<int>(p.source());
        if (((p.grading() - (i - j)) % n + n) % n != 0) ++rep.congruence_violations;
    }
    return rep;
}

}  // namespace kgraph
