#include "torcor/matrix.hpp"

#include <cctype>
#include <utility>

namespace torcor {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto valid = [](const std::string& part, bool sign_ok) {
        if (part.empty()) return false;
        size_t i = 0;
        if (sign_ok && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    if (!valid(num, true) || !valid(den, false))
        throw ParseError("malformed rational literal: " + s);
    if (num[0] == '+') num.erase(0, 1);
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw ParseError("malformed rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw PreconditionError("negative matrix dimension");
    data_.assign(static_cast<size_t>(rows) * cols, Rat(0));
}

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw PreconditionError("ragged matrix rows");
        for (const auto& x : r) data_.push_back(x);
    }
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 1;
    return a;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
    RatMatrix a(static_cast<int>(rows.size()),
                rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < a.rows_; ++i) {
        if (static_cast<int>(rows[i].size()) != a.cols_)
            throw PreconditionError("ragged matrix rows");
        for (int j = 0; j < a.cols_; ++j) a.at(i, j) = rows[i][j];
    }
    return a;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& cols) {
    RatMatrix a(cols.empty() ? 0 : static_cast<int>(cols[0].size()),
                static_cast<int>(cols.size()));
    for (int j = 0; j < a.cols_; ++j) {
        if (static_cast<int>(cols[j].size()) != a.rows_)
            throw PreconditionError("ragged matrix columns");
        for (int i = 0; i < a.rows_; ++i) a.at(i, j) = cols[j][i];
    }
    return a;
}

RatMatrix RatMatrix::diagonal(const RatVector& d) {
    RatMatrix a(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) a.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return a;
}

bool RatMatrix::is_integral() const {
    for (const auto& x : data_)
        if (!is_integer(x)) return false;
    return true;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

RatVector RatMatrix::column(int j) const {
    RatVector v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

RatVector RatMatrix::row(int i) const {
    RatVector v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix a(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) a.at(j, i) = at(i, j);
    return a;
}

RatMatrix RatMatrix::operator*(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw PreconditionError("matrix shape mismatch in product");
    RatMatrix a(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) a.at(i, j) += x * rhs.at(k, j);
        }
    return a;
}

RatVector RatMatrix::operator*(const RatVector& v) const {
    if (cols_ != static_cast<int>(v.size()))
        throw PreconditionError("matrix shape mismatch in product");
    RatVector w(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) w[i] += at(i, j) * v[j];
    return w;
}

RatMatrix RatMatrix::operator+(const RatMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw PreconditionError("matrix shape mismatch in sum");
    RatMatrix a = *this;
    for (size_t i = 0; i < data_.size(); ++i) a.data_[i] += rhs.data_[i];
    return a;
}

RatMatrix RatMatrix::operator-(const RatMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw PreconditionError("matrix shape mismatch in difference");
    RatMatrix a = *this;
    for (size_t i = 0; i < data_.size(); ++i) a.data_[i] -= rhs.data_[i];
    return a;
}

RatMatrix RatMatrix::operator-() const {
    RatMatrix a = *this;
    for (auto& x : a.data_) x = -x;
    return a;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix a = *this;
    for (auto& x : a.data_) x *= c;
    return a;
}

Rat RatMatrix::trace() const {
    if (!is_square()) throw PreconditionError("trace of non-square matrix");
    Rat t(0);
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

namespace {

// Gaussian elimination to row echelon form, in place. Returns the pivot
// columns; if det is non-null accumulates the determinant of the row ops.
std::vector<int> echelonize(RatMatrix& a, Rat* det) {
    std::vector<int> pivots;
    if (det) *det = 1;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int p = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r) {
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
            if (det) *det = -*det;
        }
        if (det) *det *= a.at(r, c);
        Rat inv = 1 / a.at(r, c);
        for (int j = c; j < a.cols(); ++j) a.at(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            Rat f = a.at(i, c);
            for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rat RatMatrix::det() const {
    if (!is_square()) throw PreconditionError("determinant of non-square matrix");
    RatMatrix a = *this;
    Rat d;
    auto pivots = echelonize(a, &d);
    if (static_cast<int>(pivots.size()) < rows_) return Rat(0);
    return d;
}

RatMatrix RatMatrix::inverse() const {
    if (!is_square()) throw PreconditionError("inverse of non-square matrix");
    RatMatrix aug = hstack(*this, identity(rows_));
    auto pivots = echelonize(aug, nullptr);
    if (static_cast<int>(pivots.size()) < rows_ || (rows_ > 0 && pivots.back() >= rows_))
        throw PreconditionError("singular matrix");
    RatMatrix inv(rows_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, rows_ + j);
    return inv;
}

RatMatrix RatMatrix::pow(long e) const {
    if (!is_square()) throw PreconditionError("power of non-square matrix");
    RatMatrix base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    RatMatrix acc = identity(rows_);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw PreconditionError("hstack row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw PreconditionError("vstack column mismatch");
    RatMatrix c(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
    return c;
}

int rank(const RatMatrix& a) {
    RatMatrix e = a;
    return static_cast<int>(echelonize(e, nullptr).size());
}

RatMatrix rational_kernel(const RatMatrix& a) {
    RatMatrix e = a;
    auto pivots = echelonize(e, nullptr);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (int c = 0; c < a.cols(); ++c) {
        if (is_pivot[c]) continue;
        RatVector v(a.cols(), Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < c) v[pivots[r]] = -e.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return RatMatrix(a.cols(), 0);
    return RatMatrix::from_columns(basis);
}

RatVector solve(const RatMatrix& a, const RatVector& b) {
    if (!a.is_square() || a.rows() != static_cast<int>(b.size()))
        throw PreconditionError("solve shape mismatch");
    return a.inverse() * b;
}

bool is_integral(const RatVector& v) {
    for (const auto& x : v)
        if (!is_integer(x)) return false;
    return true;
}

bool is_zero(const RatVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace torcor
