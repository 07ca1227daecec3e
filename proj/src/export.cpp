#include "kgraph/export.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

namespace kgraph {

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_matrix_market(std::ostream& os, const Eigen::SparseMatrix<std::complex<double>>& m,
                         const std::string& comment) {
    os << "%%MatrixMarket matrix coordinate complex general\n";
    if (!comment.empty()) os << "% " << comment << "\n";
    os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << "\n";
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
        for (Eigen::SparseMatrix<std::complex<double>>::InnerIterator it(m, c); it; ++it) {
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << number(it.value().real()) << ' '
               << number(it.value().imag()) << "\n";
        }
    }
}

Eigen::SparseMatrix<std::complex<double>> read_matrix_market(std::istream& is) {
    std::string line;
    int line_no = 0;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket matrix coordinate complex general", 0) != 0) {
        throw ParseError("not a complex coordinate Matrix Market file", 1, 1);
    }
    ++line_no;
    Eigen::Index rows = -1, cols = -1, nnz = -1;
    std::vector<Eigen::Triplet<std::complex<double>>> t;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (rows < 0) {
            if (!(ls >> rows >> cols >> nnz)) throw ParseError("bad size line", line_no, 1);
            continue;
        }
        Eigen::Index i = 0, j = 0;
        double re = 0, im = 0;
        if (!(ls >> i >> j >> re >> im) || i < 1 || j < 1 || i > rows || j > cols) {
            throw ParseError("bad entry", line_no, 1);
        }
        t.emplace_back(i - 1, j - 1, std::complex<double>(re, im));
    }
    if (rows < 0 || static_cast<Eigen::Index>(t.size()) != nnz) throw ParseError("entry count mismatch", line_no, 1);
    Eigen::SparseMatrix<std::complex<double>> m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void write_basis_manifest(std::ostream& os, const TruncatedFock& space) {
    os << "index\tword\tdegree\n";
    for (std::size_t i = 0; i < space.basis().size(); ++i) {
        const auto& p = space.basis()[i];
        os << i << '\t' << to_string(space.graph(), p.path()) << '\t' << p.degree().str() << "\n";
    }
}

}  // namespace kgraph
