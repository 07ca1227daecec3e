#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgraph/core.hpp"
#include "kgraph/fock.hpp"

namespace kgraph {

/// Edges e whose source is not reachable from their range.
std::vector<EdgeId> nc_edges(const KGraph& g);

/// Semisimple iff every edge lies on a cycle.
bool is_semisimple(const KGraph& g);

/// A closed monochromatic walk at `base`, in composition order.
struct PureCycle {
    VertexId base = 0;
    int color = 1;
    Word word;
};

/// Simple monochromatic cycles at each vertex, sorted by (base, colour, length, word).
std::vector<PureCycle> pure_primitive_cycles(const KGraph& g);

struct DoublePureCycle {
    VertexId base = 0;
    int color = 1;
    PureCycle first;
    PureCycle second;
    /// access[v] is a shortest path from v to base (identity at base).
    std::vector<std::optional<Path>> access;
    /// Whether base itself is reachable from every vertex.
    bool reaches_all = false;
};

/// Every vertex reaches a vertex carrying two distinct same-colour pure cycles. The witness
/// prefers a base reachable from all vertices.
std::optional<DoublePureCycle> double_pure_cycle_property(const KGraph& g);

enum class Tristate { no, yes, unknown };
std::string to_string(Tristate t);

struct VertexClass {
    bool radiating = false;          // every edge into v is a loop
    bool multiplicity_one = false;   // at most one loop per colour
    Tristate relational = Tristate::no;
    int relational_budget = 0;       // grading searched when relational was evaluated
};

/// relational: some lambda mu = lambda' mu' with loops mu != mu' at v and lambda, lambda'
/// leaving v at once (first-applied edge of the normal word is not a loop at v). Searched up
/// to grading |V| + 2; a miss inside the budget is reported as unknown.
std::vector<VertexClass> classify_vertices(const KGraph& g);

struct ReflexivityReport {
    bool hyper_reflexive_by_dpc = false;
    std::optional<int> distance_constant_bound;
    bool reflexive_by_vertex_criterion = false;
    bool single_vertex_hinfty = false;
    std::vector<VertexClass> vertices;
};

ReflexivityReport reflexivity_report(const KGraph& g);

struct RadicalReport {
    std::vector<EdgeId> generators;         // nc edges
    int nilpotency_bound = 0;               // |Lambda^0|
    int word_grading = 0;                   // grading budget for the multipliers in (A L_lambda)^2
    std::size_t square_checks = 0;
    std::int64_t square_residual = 0;       // max |L_nu L_lambda L_nu' L_lambda|
    std::size_t ideal_words = 0;            // distinct nonzero L_beta L_lambda L_gamma
    std::size_t product_checks = 0;
    std::int64_t product_residual = 0;      // max entry of an n-fold product of ideal words
    int observed_nilpotency = 0;            // least r with every r-fold product zero
    bool ok() const noexcept { return square_residual == 0 && product_residual == 0; }
};

/// Exact checks on the truncated Fock space that the ideal generated by the nc edges is
/// nilpotent of order <= |Lambda^0|.
RadicalReport radical_check(const FockPtr& space, int word_grading = 2);

struct ExtremalReport {
    Degree gamma;
    int max_power = 0;
    std::size_t checked = 0;
    std::size_t violations = 0;
    bool ok() const noexcept { return violations == 0; }
};

/// For paths of one grading, gamma is the lexicographically largest degree; every composable
/// power gamma_1...gamma_r (r <= max_power) must have exactly one factorization into r paths
/// of degree gamma. Throws DomainError for mixed gradings.
ExtremalReport extremal_factorization_check(const KGraph& g, const std::vector<Path>& paths, int max_power = 3);

struct StructureReport {
    bool semisimple = false;
    std::vector<EdgeId> nc;
    int nilpotency_bound = 0;
    std::optional<DoublePureCycle> double_pure_cycle;
    ReflexivityReport reflexivity;
    std::vector<PureCycle> cycles;
};

StructureReport analyze(const KGraph& g);

}  // namespace kgraph
