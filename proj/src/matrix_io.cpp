#include "skewdiv/matrix_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace skewdiv {

namespace {
const char* kBanner = "%%MatrixMarket matrix coordinate integer general";
}

void write_matrix_market(std::ostream& os, const IntMatrix& m,
                         const std::vector<std::string>& comments) {
    os << kBanner << "\n";
    for (const auto& c : comments) os << "% " << c << "\n";
    long long nnz = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) ++nnz;
    os << m.rows() << " " << m.cols() << " " << nnz << "\n";
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0)
                os << (i + 1) << " " << (j + 1) << " " << m.at(i, j).get_str() << "\n";
}

IntMatrix read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("matrix market: empty input");
    // tolerate trailing whitespace/CR in the banner
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line != kBanner)
        throw std::runtime_error("matrix market: unsupported header: " + line);

    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        break;
    }
    std::istringstream sizes(line);
    long long rows = -1, cols = -1, nnz = -1;
    sizes >> rows >> cols >> nnz;
    if (rows < 0 || cols < 0 || nnz < 0)
        throw std::runtime_error("matrix market: bad size line: " + line);

    IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (long long k = 0; k < nnz; ++k) {
        long long i = 0, j = 0;
        std::string value;
        if (!(is >> i >> j >> value))
            throw std::runtime_error("matrix market: truncated entry list");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw std::runtime_error("matrix market: entry index out of range");
        m.at(static_cast<int>(i - 1), static_cast<int>(j - 1)) = mpz_class(value);
    }
    return m;
}

void write_csv(std::ostream& os, const IntMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << m.at(i, j).get_str();
        }
        os << "\n";
    }
}

IntMatrix read_csv(std::istream& is) {
    std::vector<std::vector<mpz_class>> rows;
    std::string line;
    while (std::getline(is, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<mpz_class> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) row.emplace_back(cell);
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("csv: ragged rows");
        rows.push_back(std::move(row));
    }
    const int nr = static_cast<int>(rows.size());
    const int nc = nr ? static_cast<int>(rows.front().size()) : 0;
    IntMatrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m.at(i, j) = std::move(rows[i][j]);
    return m;
}

} // namespace skewdiv
