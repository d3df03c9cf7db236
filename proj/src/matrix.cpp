#include "rankstab/matrix.hpp"

#include <algorithm>
#include <utility>

namespace rankstab {

Mat::Mat(const FieldSpec& f, int rows, int cols) : field_(f), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    e_.assign((std::size_t)rows * cols, Scalar::zero(f));
}

Mat Mat::identity(const FieldSpec& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Mat Mat::from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows) {
    int r = (int)rows.size();
    int c = r == 0 ? 0 : (int)rows[0].size();
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)rows[i].size() != c) throw DimensionError("ragged rows in matrix literal");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Mat Mat::from_int_rows(const FieldSpec& f, const std::vector<std::vector<long>>& rows) {
    int r = (int)rows.size();
    int c = r == 0 ? 0 : (int)rows[0].size();
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)rows[i].size() != c) throw DimensionError("ragged rows in matrix literal");
        for (int j = 0; j < c; ++j) m.set(i, j, Scalar::from_integer(f, rows[i][j]));
    }
    return m;
}

Mat Mat::diag(const FieldSpec& f, const std::vector<Scalar>& entries) {
    int n = (int)entries.size();
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, entries[i]);
    return m;
}

Mat Mat::column(const FieldSpec& f, const std::vector<Scalar>& entries) {
    Mat m(f, (int)entries.size(), 1);
    for (int i = 0; i < m.rows(); ++i) m.set(i, 0, entries[i]);
    return m;
}

void Mat::set(int r, int c, Scalar v) {
    field_.require_same(v.field());
    e_[(std::size_t)r * cols_ + c] = std::move(v);
}

Mat Mat::operator+(const Mat& o) const {
    field_.require_same(o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix addition shape mismatch");
    Mat m = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += o.e_[i];
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    field_.require_same(o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix subtraction shape mismatch");
    Mat m = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] -= o.e_[i];
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    field_.require_same(o.field_);
    if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
    Mat m(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                m.e_[(std::size_t)i * o.cols_ + j].add_mul(a, o.at(k, j));
        }
    return m;
}

Mat Mat::operator-() const {
    Mat m = *this;
    for (auto& s : m.e_) s = -s;
    return m;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat m = *this;
    for (auto& x : m.e_) x *= s;
    return m;
}

Mat Mat::transpose() const {
    Mat m(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
    return m;
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool Mat::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Scalar& s) { return s.is_zero(); });
}

void Mat::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j)
        std::swap(e_[(std::size_t)a * cols_ + j], e_[(std::size_t)b * cols_ + j]);
}

void Mat::scale_row(int r, const Scalar& s) {
    for (int j = 0; j < cols_; ++j) e_[(std::size_t)r * cols_ + j] *= s;
}

void Mat::add_scaled_row(int dst, int src, const Scalar& s) {
    for (int j = 0; j < cols_; ++j)
        e_[(std::size_t)dst * cols_ + j].add_mul(s, e_[(std::size_t)src * cols_ + j]);
}

Mat Mat::resized(int rows, int cols) const {
    Mat m(field_, rows, cols);
    for (int i = 0; i < std::min(rows, rows_); ++i)
        for (int j = 0; j < std::min(cols, cols_); ++j) m.set(i, j, at(i, j));
    return m;
}

Mat Mat::block(int r0, int c0, int rows, int cols) const {
    if (r0 < 0 || c0 < 0 || r0 + rows > rows_ || c0 + cols > cols_)
        throw DimensionError("block out of range");
    Mat m(field_, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, at(r0 + i, c0 + j));
    return m;
}

std::vector<int> rref_in_place(Mat& m) {
    std::vector<int> pivots;
    int lead = 0;
    for (int col = 0; col < m.cols() && lead < m.rows(); ++col) {
        int pr = -1;
        for (int r = lead; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) { pr = r; break; }
        if (pr < 0) continue;
        m.swap_rows(pr, lead);
        m.scale_row(lead, m.at(lead, col).inverse());
        for (int r = 0; r < m.rows(); ++r) {
            if (r == lead) continue;
            Scalar f = m.at(r, col);  // copy before mutating the row
            if (!f.is_zero()) m.add_scaled_row(r, lead, -f);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

long rank(const Mat& a) {
    Mat m = a;
    return (long)rref_in_place(m).size();
}

mpq_class normalized_rank(const Mat& a) {
    if (!a.is_square()) throw DimensionError("normalized rank requires a square matrix");
    if (a.rows() == 0) return 0;
    mpq_class q(rank(a), a.rows());
    q.canonicalize();
    return q;
}

Subspace Subspace::zero(const FieldSpec& f, int ambient) {
    return from_canonical(Mat(f, ambient, 0));
}

Subspace Subspace::full(const FieldSpec& f, int ambient) {
    return from_canonical(Mat::identity(f, ambient));
}

Subspace Subspace::from_canonical(Mat basis) {
    Subspace s;
    s.ambient_ = basis.rows();
    s.basis_ = std::move(basis);
    return s;
}

// Canonical form via RREF in reversed coordinates: pivot of each basis vector
// is its bottommost nonzero coordinate, scaled to 1, zero in the other
// vectors, pivots increasing left to right.
Subspace Subspace::span_of_columns(const Mat& columns) {
    int n = columns.rows();
    int k = columns.cols();
    Mat rev(columns.field(), k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) rev.set(i, j, columns.at(n - 1 - j, i));
    std::vector<int> pivots = rref_in_place(rev);
    int r = (int)pivots.size();
    Mat basis(columns.field(), n, r);
    // rows of rev have pivots at increasing reversed coordinate, i.e.
    // decreasing original coordinate; reverse row order
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) basis.set(n - 1 - j, r - 1 - i, rev.at(i, j));
    return from_canonical(std::move(basis));
}

bool Subspace::contains(const Mat& v) const {
    if (v.rows() != ambient_ || v.cols() != 1) throw DimensionError("vector/ambient mismatch");
    Mat aug(basis_.field(), ambient_, dim() + 1);
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) aug.set(i, j, basis_.at(i, j));
        aug.set(i, dim(), v.at(i, 0));
    }
    return rank(aug) == dim();
}

bool Subspace::contains_subspace(const Subspace& other) const {
    if (other.ambient_dim() != ambient_) throw DimensionError("ambient mismatch");
    if (other.dim() > dim()) return false;
    Mat aug(basis_.field(), ambient_, dim() + other.dim());
    for (int i = 0; i < ambient_; ++i) {
        for (int j = 0; j < dim(); ++j) aug.set(i, j, basis_.at(i, j));
        for (int j = 0; j < other.dim(); ++j) aug.set(i, dim() + j, other.basis().at(i, j));
    }
    return rank(aug) == dim();
}

Subspace kernel(const Mat& a) {
    Mat m = a;
    std::vector<int> pivots = rref_in_place(m);
    int n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Mat basis(a.field(), n, (int)free_cols.size());
    for (int idx = 0; idx < (int)free_cols.size(); ++idx) {
        int f = free_cols[idx];
        basis.set(f, idx, Scalar::one(a.field()));
        for (int pi = 0; pi < (int)pivots.size(); ++pi)
            basis.set(pivots[pi], idx, -m.at(pi, f));
    }
    // this construction is already in canonical form (free coordinate is the
    // bottommost nonzero entry of its vector)
    return Subspace::from_canonical(std::move(basis));
}

Subspace image(const Mat& a) {
    return Subspace::span_of_columns(a);
}

Mat annihilator_rows(const Subspace& u) {
    Subspace ann = kernel(u.basis().transpose());
    return ann.basis().transpose();
}

Subspace preimage(const Mat& b, const Subspace& u) {
    if (u.ambient_dim() != b.rows()) throw DimensionError("preimage: ambient/rows mismatch");
    u.field().require_same(b.field());
    return kernel(annihilator_rows(u) * b);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
    u.field().require_same(v.field());
    Mat au = annihilator_rows(u);
    Mat av = annihilator_rows(v);
    Mat stacked(u.field(), au.rows() + av.rows(), u.ambient_dim());
    for (int i = 0; i < au.rows(); ++i)
        for (int j = 0; j < au.cols(); ++j) stacked.set(i, j, au.at(i, j));
    for (int i = 0; i < av.rows(); ++i)
        for (int j = 0; j < av.cols(); ++j) stacked.set(au.rows() + i, j, av.at(i, j));
    return kernel(stacked);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw DimensionError("sum: ambient mismatch");
    u.field().require_same(v.field());
    Mat cols(u.field(), u.ambient_dim(), u.dim() + v.dim());
    for (int i = 0; i < u.ambient_dim(); ++i) {
        for (int j = 0; j < u.dim(); ++j) cols.set(i, j, u.basis().at(i, j));
        for (int j = 0; j < v.dim(); ++j) cols.set(i, u.dim() + j, v.basis().at(i, j));
    }
    return Subspace::span_of_columns(cols);
}

bool IncrementalSpan::add(std::vector<Scalar> v) {
    if ((int)v.size() != n_) throw DimensionError("span vector has wrong length");
    for (const auto& [pivot, row] : reduced_) {
        if (v[pivot].is_zero()) continue;
        Scalar f = v[pivot];
        for (int j = 0; j < n_; ++j) {
            Scalar t = row[j];
            t *= f;
            v[j] -= t;
        }
    }
    int pivot = -1;
    for (int j = 0; j < n_; ++j)
        if (!v[j].is_zero()) { pivot = j; break; }
    if (pivot < 0) return false;
    Scalar inv = v[pivot].inverse();
    for (int j = 0; j < n_; ++j) v[j] *= inv;
    reduced_.emplace_back(pivot, std::move(v));
    return true;
}

bool IncrementalSpan::add_column(const Mat& m, int j) {
    std::vector<Scalar> v;
    v.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
    return add(std::move(v));
}

Mat complete_basis(const Subspace& u) {
    int n = u.ambient_dim();
    const FieldSpec& f = u.field();
    Mat e(f, n, n);
    IncrementalSpan state(f, n);
    int col = 0;
    for (int j = 0; j < u.dim(); ++j) {
        if (!state.add_column(u.basis(), j))
            throw InternalError("canonical basis columns dependent");
        for (int i = 0; i < n; ++i) e.set(i, col, u.basis().at(i, j));
        ++col;
    }
    for (int i = 0; i < n && col < n; ++i) {
        std::vector<Scalar> std_vec(n, Scalar::zero(f));
        std_vec[i] = Scalar::one(f);
        if (state.add(std_vec)) {
            e.set(i, col, Scalar::one(f));
            ++col;
        }
    }
    if (col != n) throw InternalError("basis completion failed");
    return e;
}

Mat direct_sum(const Mat& a, const Mat& b) {
    a.field().require_same(b.field());
    Mat m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return m;
}

Mat kronecker(const Mat& a, const Mat& b) {
    a.field().require_same(b.field());
    Mat m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int ia = 0; ia < a.rows(); ++ia)
        for (int ja = 0; ja < a.cols(); ++ja) {
            const Scalar& s = a.at(ia, ja);
            if (s.is_zero()) continue;
            for (int ib = 0; ib < b.rows(); ++ib)
                for (int jb = 0; jb < b.cols(); ++jb) {
                    Scalar t = s;
                    t *= b.at(ib, jb);
                    m.set(ia * b.rows() + ib, ja * b.cols() + jb, std::move(t));
                }
        }
    return m;
}

Mat inverse(const Mat& a) {
    if (!a.is_square()) throw DimensionError("inverse requires a square matrix");
    int n = a.rows();
    Mat aug(a.field(), n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, n + i, Scalar::one(a.field()));
    }
    std::vector<int> pivots = rref_in_place(aug);
    // pivots escaping into the right half mean A itself is rank-deficient
    if ((int)pivots.size() != n || (n > 0 && pivots.back() >= n))
        throw SingularMatrixError("matrix is singular");
    return aug.block(0, n, n, n);
}

Mat hat_pad(const Mat& a, int n) {
    if (!a.is_square()) throw DimensionError("hat embedding requires a square matrix");
    if (n < a.rows()) throw DimensionError("hat padding cannot shrink");
    return a.resized(n, n);
}

long hat_dist(const Mat& a, const Mat& b) {
    a.field().require_same(b.field());
    if (!a.is_square() || !b.is_square()) throw DimensionError("hat distance requires square matrices");
    int n = std::max(a.rows(), b.rows());
    return rank(hat_pad(a, n) - hat_pad(b, n));
}

}  // namespace rankstab
