#include "matprobe/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace matprobe {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

SparseMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_matrix_market(in);
}

SparseMatrix read_matrix_market(std::istream& in) {
    std::string line;
    long lineno = 0;

    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++lineno;
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner", lineno);
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || format != "coordinate")
        throw ParseError("only 'matrix coordinate' files are supported", lineno);
    if (field != "real" && field != "complex" && field != "integer")
        throw ParseError("unsupported field '" + field + "'", lineno);
    if (symmetry != "general" && symmetry != "symmetric" && symmetry != "hermitian" &&
        symmetry != "skew-symmetric")
        throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);

    // Size line, skipping comments and blanks.
    Index n_rows = 0, n_cols = 0;
    long declared_nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError("missing size line", lineno);
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> n_rows >> n_cols >> declared_nnz))
            throw ParseError("malformed size line", lineno);
        break;
    }
    if (n_rows < 0 || n_cols < 0 || declared_nnz < 0)
        throw ParseError("negative size entry", lineno);

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(declared_nnz));
    long seen = 0;
    while (seen < declared_nnz) {
        if (!std::getline(in, line))
            throw ParseError("fewer entries than declared", lineno);
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream es(line);
        Index i = 0, j = 0;
        double re = 0.0, im = 0.0;
        if (!(es >> i >> j)) throw ParseError("malformed entry", lineno);
        if (!(es >> re)) throw ParseError("malformed entry value", lineno);
        if (field == "complex" && !(es >> im)) throw ParseError("missing imaginary part", lineno);
        if (i < 1 || i > n_rows || j < 1 || j > n_cols)
            throw ParseError("entry index out of bounds", lineno);
        const Scalar v(re, im);
        triplets.push_back({i - 1, j - 1, v});
        if (i != j) {
            if (symmetry == "symmetric") triplets.push_back({j - 1, i - 1, v});
            if (symmetry == "hermitian") triplets.push_back({j - 1, i - 1, std::conj(v)});
            if (symmetry == "skew-symmetric") triplets.push_back({j - 1, i - 1, -v});
        }
        ++seen;
    }
    return SparseMatrix::from_triplets(n_rows, n_cols, std::move(triplets));
}

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_matrix_market(m, out);
}

void write_matrix_market(const SparseMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << m.rows() << " " << m.cols() << " " << m.nnz() << "\n";
    char buf[128];
    for (Index i = 0; i < m.rows(); ++i) {
        const auto cols = m.row_cols(i);
        const auto vals = m.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%lld %lld %.17g %.17g\n",
                          static_cast<long long>(i + 1), static_cast<long long>(cols[k] + 1),
                          vals[k].real(), vals[k].imag());
            out << buf;
        }
    }
}

}  // namespace matprobe
