#pragma once

#include <initializer_list>

#include "circuitkit/rational.hpp"

namespace circuitkit {

// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(Index rows, Index cols);
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix from_rows(const std::vector<Vec>& rows, Index cols = 0);
    static RatMatrix identity(Index n);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
    const Rational& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

    Vec row(Index i) const;
    Vec col(Index j) const;
    void set_row(Index i, const Vec& v);

    RatMatrix submatrix(const IndexSet& rows, const IndexSet& cols) const;
    RatMatrix select_cols(const IndexSet& cols) const;
    RatMatrix select_rows(const IndexSet& rows) const;
    RatMatrix transpose() const;
    // Appends rows of other below this one; column counts must match.
    RatMatrix stack(const RatMatrix& other) const;

    RatMatrix operator*(const RatMatrix& o) const;
    Vec operator*(const Vec& v) const;
    bool operator==(const RatMatrix& o) const;
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    bool is_integral() const;
    Rational max_abs() const;

private:
    Index rows_ = 0;
    Index cols_ = 0;
    std::vector<Rational> data_;
};

// Integer matrix from nested initializer lists of ints; handy for fixtures.
RatMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);

}  // namespace circuitkit
