#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "torcor/rational.hpp"

namespace torcor {

// Dense rational matrix, row-major. All arithmetic is exact.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols);
    RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<RatVector>& rows);
    static RatMatrix from_columns(const std::vector<RatVector>& cols);
    static RatMatrix diagonal(const RatVector& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool is_integral() const;
    bool is_zero() const;

    Rat& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    RatVector column(int j) const;
    RatVector row(int i) const;

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& rhs) const;
    RatVector operator*(const RatVector& v) const;
    RatMatrix operator+(const RatMatrix& rhs) const;
    RatMatrix operator-(const RatMatrix& rhs) const;
    RatMatrix operator-() const;
    RatMatrix scaled(const Rat& c) const;
    bool operator==(const RatMatrix& rhs) const = default;

    Rat trace() const;
    Rat det() const;
    RatMatrix inverse() const;     // throws PreconditionError("singular matrix")
    RatMatrix pow(long e) const;   // negative e inverts first

private:
    int rows_, cols_;
    RatVector data_;
};

// Stacks blocks side by side (equal row counts) or on top of each other
// (equal column counts).
RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

int rank(const RatMatrix& a);

// Columns span the rational null space {x : Ax = 0}. May have zero columns.
RatMatrix rational_kernel(const RatMatrix& a);

// Unique solution of Ax = b for invertible square A.
RatVector solve(const RatMatrix& a, const RatVector& b);

bool is_integral(const RatVector& v);
bool is_zero(const RatVector& v);

}  // namespace torcor
