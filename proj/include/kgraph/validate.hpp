#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/core.hpp"

namespace kgraph {

enum class FailureKind {
    square_cardinality,  // |in-order pairs| != |out-of-order pairs| for a vertex pair
    missing_square,      // a composable mixed pair is on no square
    duplicate_square,    // a composable mixed pair is on more than one square
    factorization,       // a degree split of a normal path has != 1 factorization
    confluence,          // rewrite orders of a word reach different (or no) normal forms
};

std::string to_string(FailureKind kind);

struct ValidationFailure {
    FailureKind kind;
    std::string detail;
    std::string word;                    // offending word, if any
    std::optional<Degree> split_left;    // factorization failures only
    std::optional<Degree> split_right;
    std::size_t count = 0;               // number of factorizations / normal forms found
};

struct ValidationReport {
    int max_grading = 0;
    std::vector<ValidationFailure> failures;  // capped at kMaxRecorded per kind
    std::size_t failure_total = 0;
    std::size_t normal_paths_checked = 0;
    std::size_t splits_checked = 0;
    std::size_t words_checked = 0;

    static constexpr std::size_t kMaxRecorded = 32;

    bool valid() const noexcept { return failure_total == 0; }
    bool has(FailureKind kind) const;
};

/// Exhaustive check of the factorization property up to max_grading: square
/// bijectivity per vertex pair, exactly one factorization per degree split, and
/// agreement of every rewrite order. Never throws for malformed square sets.
ValidationReport validate(const KGraph& g, int max_grading);

}  // namespace kgraph
