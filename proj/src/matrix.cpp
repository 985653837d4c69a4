#include "saw/matrix.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace saw {

Matrix<double> to_double(const Matrix<Rational>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<double>();
    return out;
}

Matrix<Rational> read_rational_matrix(std::istream& in) {
    std::string tok;
    auto next = [&]() -> bool {
        while (in >> tok) {
            if (tok.front() == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return true;
        }
        return false;
    };
    if (!next()) throw InvalidArgument("matrix fixture: missing header");
    const std::size_t m = std::stoul(tok);
    if (!next()) throw InvalidArgument("matrix fixture: missing column count");
    const std::size_t n = std::stoul(tok);
    Matrix<Rational> out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!next()) throw InvalidArgument("matrix fixture: truncated at row " + std::to_string(i));
            out(i, j) = parse_rational(tok);
        }
    if (next()) throw InvalidArgument("matrix fixture: trailing token '" + tok + "'");
    return out;
}

void write_rational_matrix(std::ostream& out, const Matrix<Rational>& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << to_string(m(i, j));
        out << '\n';
    }
}

}  // namespace saw
