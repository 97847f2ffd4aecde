#include "circuitkit/matrix.hpp"

#include "circuitkit/errors.hpp"

namespace circuitkit {

RatMatrix::RatMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
        for (const auto& x : r) data_.push_back(x);
    }
}

RatMatrix RatMatrix::from_rows(const std::vector<Vec>& rows, Index cols) {
    if (!rows.empty()) cols = rows.front().size();
    RatMatrix m(rows.size(), cols);
    for (Index i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DimensionMismatch("ragged row list");
        m.set_row(i, rows[i]);
    }
    return m;
}

RatMatrix RatMatrix::identity(Index n) {
    RatMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec RatMatrix::row(Index i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec RatMatrix::col(Index j) const {
    Vec v(rows_);
    for (Index i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void RatMatrix::set_row(Index i, const Vec& v) {
    if (v.size() != cols_) throw DimensionMismatch("set_row length");
    for (Index j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

RatMatrix RatMatrix::submatrix(const IndexSet& rs, const IndexSet& cs) const {
    RatMatrix m(rs.size(), cs.size());
    for (Index i = 0; i < rs.size(); ++i)
        for (Index j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
    return m;
}

RatMatrix RatMatrix::select_cols(const IndexSet& cs) const {
    RatMatrix m(rows_, cs.size());
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cs.size(); ++j) m(i, j) = (*this)(i, cs[j]);
    return m;
}

RatMatrix RatMatrix::select_rows(const IndexSet& rs) const {
    RatMatrix m(rs.size(), cols_);
    for (Index i = 0; i < rs.size(); ++i)
        for (Index j = 0; j < cols_; ++j) m(i, j) = (*this)(rs[i], j);
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RatMatrix RatMatrix::stack(const RatMatrix& o) const {
    if (rows_ == 0) return o;
    if (o.rows_ == 0) return *this;
    if (o.cols_ != cols_) throw DimensionMismatch("stack column counts");
    RatMatrix m(rows_ + o.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(o.data_.begin(), o.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product");
    RatMatrix m(rows_, o.cols_);
    for (Index i = 0; i < rows_; ++i)
        for (Index k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (Index j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) m(i, j) += a * o(k, j);
        }
    return m;
}

Vec RatMatrix::operator*(const Vec& v) const {
    if (cols_ != v.size()) throw DimensionMismatch("matrix-vector product");
    Vec r(rows_, Rational(0));
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && v[j] != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RatMatrix::is_integral() const {
    for (const auto& x : data_)
        if (!is_integer(x)) return false;
    return true;
}

Rational RatMatrix::max_abs() const {
    Rational m = 0;
    for (const auto& x : data_)
        if (abs(x) > m) m = abs(x);
    return m;
}

RatMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vec> rs;
    for (const auto& r : rows) {
        Vec v;
        for (long x : r) v.emplace_back(x);
        rs.push_back(std::move(v));
    }
    return RatMatrix::from_rows(rs, 0);
}

}  // namespace circuitkit
