#pragma once

// Matrix Market (coordinate complex general, 1-based, column-major) and the
// tab-separated basis manifest of a truncated Fock space.

#include <complex>
#include <istream>
#include <ostream>
#include <string>

#include <Eigen/SparseCore>

#include "kgraph/fock.hpp"

namespace kgraph {

void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<std::complex<double>>& m,
                         const std::string& comment = "");

inline void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<std::int64_t>& m,
                                const std::string& comment = "") {
    write_matrix_market(os, Eigen::SparseMatrix<std::complex<double>>(m.cast<std::complex<double>>()), comment);
}

/// Throws ParseError on malformed input.
Eigen::SparseMatrix<std::complex<double>> read_matrix_market(std::istream& is);

/// Header "index\tword\tdegree", then one row per basis vector (0-based index).
void write_basis_manifest(std::ostream& os, const TruncatedFock& space);

}  // namespace kgraph
