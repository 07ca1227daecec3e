#pragma once

// Characters of single-vertex k-graph algebras. A point alpha has one coordinate block
// per colour; a word evaluates to the product of its letters' coordinates. On the
// variety cut out by the commutation squares, omega_alpha = sum lambda(alpha) xi_lambda
// is a joint eigenvector of the adjoint generators, and the vector state at conj(alpha)
// is multiplicative on the algebra.
//
// Fock spaces of two-colour graphs with two loops per colour are too large to materialise
// at the truncations the tail estimates need, so the eigen, norm and character checks
// stream over normal words instead of building matrices.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgraph/builders.hpp"
#include "kgraph/core.hpp"
#include "kgraph/fock.hpp"

namespace kgraph {

using BallPoint = std::vector<Eigen::VectorXcd>;

struct SingleVertexLayout {
    std::vector<int> sizes;           // loops per colour
    std::vector<int> coordinate;      // edge id -> 0-based index within its colour
};

/// Throws UnsupportedGraphError unless the graph has one vertex.
SingleVertexLayout layout_of(const KGraph& g);

/// z_{i,p} z_{j,q} - z_{j,s} z_{i,r}; all indices 1-based, i < j.
struct VarietyPolynomial {
    int i = 1, p = 1, j = 2, q = 1, s = 1, r = 1;
    auto operator<=>(const VarietyPolynomial&) const = default;
};

std::string to_string(const VarietyPolynomial& poly);

/// Nontrivial binomials of the theta family, sorted.
std::vector<VarietyPolynomial> variety_polynomials(const std::vector<int>& sizes, const ThetaFamily& theta);
/// Nontrivial binomials read off the squares of a single-vertex graph, sorted.
std::vector<VarietyPolynomial> variety_polynomials(const KGraph& g);

std::complex<double> evaluate(const VarietyPolynomial& poly, const BallPoint& alpha);
double variety_residual(const std::vector<VarietyPolynomial>& polys, const BallPoint& alpha);
bool in_variety(const std::vector<VarietyPolynomial>& polys, const BallPoint& alpha, double tol = 1e-9);

/// Every block has Euclidean norm <= 1 (closed) or < 1 (open).
bool in_closed_ball(const BallPoint& alpha);
bool in_open_ball(const BallPoint& alpha);

/// Throws DomainError unless alpha has the block shape of the layout.
void check_shape(const SingleVertexLayout& layout, const BallPoint& alpha);

std::complex<double> evaluate_word(const KGraph& g, const Word& word, const BallPoint& alpha);
std::complex<double> evaluate_path(const KGraph& g, const Path& path, const BallPoint& alpha);

/// Components lambda(alpha) over the basis of a truncated single-vertex Fock space.
Eigen::VectorXcd omega(const TruncatedFock& space, const BallPoint& alpha, double tol = 1e-9);

/// <A nu, nu> for nu = omega(conj alpha) normalised.
std::complex<double> vector_state(const ComplexOperator& a, const BallPoint& alpha);

/// prod_i (1 - |alpha_i|^2)^{-1}.
double omega_norm_closed_form(const BallPoint& alpha);
/// Upper bound for the sum over grading > N of prod |alpha_i|^{2 m_i}.
double omega_tail_bound(const BallPoint& alpha, int truncation);
/// Least N with omega_tail_bound(alpha, N) <= tol.
int truncation_for_tail(const BallPoint& alpha, double tol);

struct NormCheck {
    int truncation = 0;
    double partial = 0.0;        // sum |lambda(alpha)|^2 over streamed normal words
    double by_degrees = 0.0;     // sum over degree vectors of prod |alpha_i|^{2 m_i}
    double closed_form = 0.0;
    double tail_bound = 0.0;
    std::size_t words = 0;
    bool ok(double tol) const;
};

NormCheck omega_norm_check(const KGraph& g, const BallPoint& alpha, int truncation);

struct EigenCheck {
    std::string edge;
    int truncation = 0;
    double max_residual = 0.0;   // max |(e lambda)(alpha) - alpha_e lambda(alpha)| over grading(lambda) <= N-1
    std::size_t components = 0;
};

/// Streams the identity L_e* omega = alpha_e omega componentwise. Requires alpha in the
/// open ball and on the variety.
EigenCheck eigen_check(const KGraph& g, EdgeId e, const BallPoint& alpha, int truncation, double tol = 1e-9);

/// rho_N(L_kappa) = <L_kappa nu_N, nu_N> for the normalised truncated vector nu_N at conj(alpha),
/// computed by a dynamic programme over the normal form of kappa rho.
class Character {
public:
    Character(const KGraph& g, BallPoint alpha, int truncation, bool require_variety = true, double tol = 1e-9);

    std::complex<double> operator()(const Path& kappa) const;
    /// sum over grading(rho) <= budget of conj(rho(alpha)) (kappa rho)(alpha), kappa normal.
    std::complex<double> pairing(const Word& kappa, int budget) const;

    const KGraph& graph() const noexcept { return graph_; }
    const BallPoint& alpha() const noexcept { return alpha_; }
    int truncation() const noexcept { return truncation_; }
    double normalizer() const noexcept { return normalizer_; }

private:
    KGraph graph_;
    SingleVertexLayout layout_;
    BallPoint alpha_;
    int truncation_;
    double normalizer_ = 1.0;
    mutable std::map<Word, std::complex<double>> cache_;

    std::complex<double> letter(EdgeId e) const;
};

struct MultiplicativityReport {
    int truncation = 0;
    int word_grading = 0;
    std::size_t pairs = 0;
    double max_residual = 0.0;          // |rho(L_lambda L_mu) - rho(L_lambda) rho(L_mu)|
    std::string worst;
    double max_generator_error = 0.0;   // |rho(L_e) - alpha_e|
};

MultiplicativityReport multiplicativity_check(const Character& rho, int word_grading);

/// Random point on the coordinate-equality subvariety forced by the binomials, with each
/// block's squared norm uniform in [min_norm_sq, max_norm_sq].
BallPoint sample_variety_point(const std::vector<VarietyPolynomial>& polys, const std::vector<int>& sizes,
                               std::mt19937_64& rng, double min_norm_sq = 0.05, double max_norm_sq = 0.25);

/// Largest t with (t, ..., t) of length n in the closed unit ball, by bisection.
double diagonal_ball_radius(int n, double tol = 1e-15);

}  // namespace kgraph
