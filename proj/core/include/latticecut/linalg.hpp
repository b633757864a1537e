#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latticecut/rational.hpp"

namespace latticecut {

/// Dense rational vector. Dimension is the length.
using QVec = std::vector<Rat>;

Rat dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rat& s);
QVec negate(const QVec& a);
bool is_zero(const QVec& a);
/// Lexicographic comparison, first differing coordinate decides.
bool lex_less(const QVec& a, const QVec& b);
bool all_integer(const QVec& a);
QVec qvec_of_ints(const std::vector<long>& v);
std::string to_string(const QVec& a);

/// Dense rational matrix with exact arithmetic throughout.
class QMat {
  public:
    QMat() : rows_(0), cols_(0) {}
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows);
    static QMat from_cols(const std::vector<QVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;
    void set_row(std::size_t i, const QVec& v);
    void set_col(std::size_t j, const QVec& v);

    QMat transpose() const;
    QMat operator*(const QMat& rhs) const;
    QVec operator*(const QVec& v) const;
    bool operator==(const QMat& rhs) const = default;

    std::size_t rank() const;
    Rat det() const;  // square only
    /// Exact inverse; throws std::domain_error when singular.
    QMat inverse() const;
    /// One solution of Ax = v, or nullopt when inconsistent.
    std::optional<QVec> solve(const QVec& v) const;
    /// Rational basis of the nullspace {x : Ax = 0}.
    std::vector<QVec> nullspace() const;

    bool all_integer() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

std::string to_string(const QMat& m);

}  // namespace latticecut
