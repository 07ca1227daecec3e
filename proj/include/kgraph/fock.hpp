#pragma once

// Truncated Fock space of a k-graph and exact sparse realisations of the left and
// right creation operators. Basis vectors are the normal paths of grading <= N,
// sorted by grading first, so every interior block {grading <= m} is a leading
// index range. Images of grading > N are dropped; identities among words of symbol
// grading g are therefore asserted on the interior block {grading <= N - g}.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "kgraph/core.hpp"

namespace kgraph {

class TruncatedFock {
public:
    TruncatedFock(KGraph graph, int truncation);

    const KGraph& graph() const noexcept { return graph_; }
    int truncation() const noexcept { return truncation_; }
    Eigen::Index dimension() const noexcept { return static_cast<Eigen::Index>(basis_.size()); }
    const std::vector<NormalPath>& basis() const noexcept { return basis_; }

    /// Position of a normal path, or nullopt if it is not in the truncation.
    std::optional<Eigen::Index> find(const Path& normal) const;
    /// Throws DomainError if absent.
    Eigen::Index index(const Path& normal) const;

    int grading_at(Eigen::Index i) const { return basis_[static_cast<std::size_t>(i)].grading(); }

    /// Number of basis vectors with grading <= m (the interior block {grading <= m}).
    Eigen::Index interior(int m) const;

    /// E_n as a 0/1 diagonal matrix.
    Eigen::SparseMatrix<std::int64_t> grading_projection(int n) const;

private:
    struct WordHash {
        std::size_t operator()(const Word& w) const noexcept;
    };

    KGraph graph_;
    int truncation_;
    std::vector<NormalPath> basis_;
    std::vector<Eigen::Index> identity_index_;
    std::unordered_map<Word, Eigen::Index, WordHash> word_index_;
    std::vector<Eigen::Index> grading_end_;  // grading_end_[m] = interior(m)
};

using FockPtr = std::shared_ptr<const TruncatedFock>;

FockPtr make_fock(const KGraph& g, int truncation);

/// Sparse matrix on a truncated Fock space with the largest grading among the words
/// in its Fourier support (nullopt when unknown).
template <class Scalar>
struct SparseOperator {
    FockPtr space;
    Eigen::SparseMatrix<Scalar> matrix;
    std::optional<int> symbol_grading;

    Scalar entry(Eigen::Index row, Eigen::Index col) const { return matrix.coeff(row, col); }
};

using IntOperator = SparseOperator<std::int64_t>;
using ComplexOperator = SparseOperator<std::complex<double>>;

namespace detail {
inline std::optional<int> add_grading(std::optional<int> a, std::optional<int> b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}
inline std::optional<int> max_grading(std::optional<int> a, std::optional<int> b) {
    if (!a || !b) return std::nullopt;
    return std::max(*a, *b);
}
void require_same_space(const FockPtr& a, const FockPtr& b);
}  // namespace detail

template <class Scalar>
SparseOperator<Scalar> operator*(const SparseOperator<Scalar>& a, const SparseOperator<Scalar>& b) {
    detail::require_same_space(a.space, b.space);
    Eigen::SparseMatrix<Scalar> m = a.matrix * b.matrix;
    m.prune(Scalar(0));
    return {a.space, std::move(m), detail::add_grading(a.symbol_grading, b.symbol_grading)};
}

template <class Scalar>
SparseOperator<Scalar> operator+(const SparseOperator<Scalar>& a, const SparseOperator<Scalar>& b) {
    detail::require_same_space(a.space, b.space);
    Eigen::SparseMatrix<Scalar> m = a.matrix + b.matrix;
    m.prune(Scalar(0));
    return {a.space, std::move(m), detail::max_grading(a.symbol_grading, b.symbol_grading)};
}

template <class Scalar>
SparseOperator<Scalar> operator-(const SparseOperator<Scalar>& a, const SparseOperator<Scalar>& b) {
    detail::require_same_space(a.space, b.space);
    Eigen::SparseMatrix<Scalar> m = a.matrix - b.matrix;
    m.prune(Scalar(0));
    return {a.space, std::move(m), detail::max_grading(a.symbol_grading, b.symbol_grading)};
}

template <class Scalar>
SparseOperator<Scalar> operator*(Scalar c, const SparseOperator<Scalar>& a) {
    Eigen::SparseMatrix<Scalar> m = c * a.matrix;
    m.prune(Scalar(0));
    return {a.space, std::move(m), a.symbol_grading};
}

/// Adjoint; generator entries are real, so for integers this is the transpose.
template <class Scalar>
SparseOperator<Scalar> adjoint(const SparseOperator<Scalar>& a) {
    Eigen::SparseMatrix<Scalar> m = a.matrix.adjoint();
    return {a.space, std::move(m), std::nullopt};
}

inline ComplexOperator to_complex(const IntOperator& a) {
    Eigen::SparseMatrix<std::complex<double>> m = a.matrix.cast<std::complex<double>>();
    return {a.space, std::move(m), a.symbol_grading};
}

/// Largest |entry| among the first `columns` columns.
template <class Scalar>
double max_abs_in_columns(const Eigen::SparseMatrix<Scalar>& m, Eigen::Index columns) {
    double out = 0.0;
    for (Eigen::Index c = 0; c < std::min(columns, m.outerSize()); ++c) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, c); it; ++it) {
            out = std::max(out, static_cast<double>(std::abs(it.value())));
        }
    }
    return out;
}

/// L_lambda: xi_mu -> xi_{lambda mu} when s(lambda) = r(mu) and the image lies in the truncation.
IntOperator left_op(const FockPtr& space, const Path& lambda);
/// R_lambda: xi_mu -> xi_{mu lambda} when s(mu) = r(lambda).
IntOperator right_op(const FockPtr& space, const Path& lambda);

/// <A xi_{s(lambda)}, xi_lambda>.
template <class Scalar>
std::complex<double> fourier_coefficient(const SparseOperator<Scalar>& a, const Path& lambda);

/// Phi_m(A) = sum_j E_j A E_{j+m}: keeps entries whose column grading exceeds the row grading by m.
template <class Scalar>
ComplexOperator diagonal(const SparseOperator<Scalar>& a, int m);

/// sum over grading(lambda) < n of (1 - grading/n) a_lambda L_lambda, built from Fourier coefficients.
template <class Scalar>
ComplexOperator cesaro(const SparseOperator<Scalar>& a, int n);

/// The same sum assembled from the diagonals: sum over |m| < n of (1 - |m|/n) Phi_m(A).
template <class Scalar>
ComplexOperator cesaro_by_diagonals(const SparseOperator<Scalar>& a, int n);

struct ResidualReport {
    std::int64_t max_residual = 0;
    std::size_t checks = 0;
    std::string worst;  // description of the worst pair, empty when all exact
    bool exact() const noexcept { return max_residual == 0; }
};

/// max over vertex/edge generators lambda, mu of |L_lambda R_mu - R_mu L_lambda| on the
/// interior block {grading <= N - grading(lambda) - grading(mu)}.
ResidualReport commutant_residual(const FockPtr& space);

/// L_e* L_e - L_{s(e)} on {grading <= N-1} for every edge e.
ResidualReport partial_isometry_residual(const FockPtr& space);

/// L_lambda* L_mu for every pair lambda != mu of equal degree with grading <= max_grading
/// (defaults to the truncation).
ResidualReport same_degree_orthogonality(const FockPtr& space, std::optional<int> max_grading = std::nullopt);

/// L_lambda L_mu - L_{lambda mu} on {grading <= N - grading(lambda) - grading(mu)} for all
/// composable pairs with grading(lambda) + grading(mu) <= max_grading.
ResidualReport product_law_residual(const FockPtr& space, int max_grading);

/// Permutation U with U xi_{lambda^t} = xi_lambda from the space of transpose(g) onto the
/// space of g (same truncation).
Eigen::SparseMatrix<std::int64_t> transpose_correspondence(const FockPtr& space, const FockPtr& transposed);

struct DoublePureCycle;

struct OrthogonalIsometries {
    IntOperator u;
    IntOperator v;
    std::vector<std::string> u_words;
    std::vector<std::string> v_words;
    std::int64_t cross_residual = 0;      // max |U* V| over the whole truncation
    std::int64_t isometry_residual = 0;   // max |U* U - I| on the interior block
    Eigen::Index interior_dimension = 0;
    bool exact() const noexcept { return cross_residual == 0 && isometry_residual == 0; }
};

/// U = sum_w L_{c1}^{2i+1} L_{c2} L_{lambda_w}, V the same with exponent 2i+2, where w is the
/// i-th vertex (0-based) and lambda_w is the access path from w to the double-cycle base.
/// Throws UnsupportedGraphError unless a single base vertex is reachable from every vertex.
OrthogonalIsometries orthogonal_isometries(const FockPtr& space, const DoublePureCycle& witness);
OrthogonalIsometries orthogonal_isometries(const FockPtr& space);

struct CycleBlockReport {
    int n = 0;
    int k = 0;
    int truncation = 0;
    struct Generator {
        std::string name;
        std::vector<std::pair<int, int>> blocks;  // 1-based (row block, column block) with nonzeros
        std::pair<int, int> expected;
        bool ok = false;
    };
    std::vector<Generator> generators;
    bool projections_block_diagonal = false;
    std::size_t congruence_checked = 0;
    std::size_t congruence_violations = 0;
    bool ok() const;
};

/// Block j = span{xi_lambda : r(lambda) = x_j}. Each edge from x_j must occupy exactly block
/// (j+1, j), vertex projections must be block diagonal, and every basis path from x_j to x_i
/// must have grading = i - j (mod n).
CycleBlockReport verify_cycle_blocks(int n, int k, int truncation);

}  // namespace kgraph
