#pragma once

#include <vector>

#include "rankstab/field.hpp"

namespace rankstab {

/// Dense exact matrix over Q or F_p. Row-major, value semantics, immutable in
/// spirit: every operation returns a fresh matrix. 0x0 matrices are legal.
class Mat {
public:
    Mat() : field_(FieldSpec::rationals()), rows_(0), cols_(0) {}
    Mat(const FieldSpec& f, int rows, int cols);

    static Mat identity(const FieldSpec& f, int n);
    static Mat zeros(const FieldSpec& f, int rows, int cols) { return Mat(f, rows, cols); }
    static Mat from_rows(const FieldSpec& f, const std::vector<std::vector<Scalar>>& rows);
    /// Convenience for tests and fixtures: integer entries.
    static Mat from_int_rows(const FieldSpec& f, const std::vector<std::vector<long>>& rows);
    static Mat diag(const FieldSpec& f, const std::vector<Scalar>& entries);
    static Mat column(const FieldSpec& f, const std::vector<Scalar>& entries);

    const FieldSpec& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const Scalar& at(int r, int c) const { return e_[(std::size_t)r * cols_ + c]; }
    void set(int r, int c, Scalar v);

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& s) const;
    Mat transpose() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }
    bool is_zero() const;

    // in-place row operations used by the elimination engine
    void swap_rows(int a, int b);
    void scale_row(int r, const Scalar& s);
    void add_scaled_row(int dst, int src, const Scalar& s);

    /// Top-left block copy, or zero-padding when the target is larger.
    Mat resized(int rows, int cols) const;
    Mat block(int r0, int c0, int rows, int cols) const;

private:
    FieldSpec field_;
    int rows_, cols_;
    std::vector<Scalar> e_;
};

/// Subspace of F^n held through a canonical basis: reduced column echelon
/// form, pivot = bottommost nonzero coordinate scaled to 1, pivots increasing.
/// Equal subspaces always hold identical bases.
class Subspace {
public:
    Subspace() : ambient_(0) {}
    static Subspace zero(const FieldSpec& f, int ambient);
    static Subspace full(const FieldSpec& f, int ambient);
    /// Canonicalizes the span of the given columns (dependencies allowed).
    static Subspace span_of_columns(const Mat& columns);
    /// Trusted constructor for bases already in canonical form.
    static Subspace from_canonical(Mat basis);

    const FieldSpec& field() const { return basis_.field(); }
    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Mat& basis() const { return basis_; }

    bool contains(const Mat& column_vector) const;
    bool contains_subspace(const Subspace& other) const;
    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    Mat basis_;  // ambient x dim
    int ambient_;
};

/// Incremental linear-independence tracker over column vectors of F^n.
class IncrementalSpan {
public:
    IncrementalSpan(const FieldSpec& f, int n) : field_(f), n_(n) {}
    /// Adds v to the independent set; returns false (and discards) if v is
    /// already in the span.
    bool add(std::vector<Scalar> v);
    bool add_column(const Mat& m, int j);
    int dim() const { return (int)reduced_.size(); }

private:
    FieldSpec field_;
    int n_;
    std::vector<std::pair<int, std::vector<Scalar>>> reduced_;
};

long rank(const Mat& a);
/// rank(A)/n for square A.
mpq_class normalized_rank(const Mat& a);

Subspace kernel(const Mat& a);
Subspace image(const Mat& a);
/// {v : Bv in U}; requires U.ambient_dim == B.rows.
Subspace preimage(const Mat& b, const Subspace& u);
Subspace intersect(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
/// Invertible matrix whose first dim(U) columns are U's canonical basis,
/// completed by standard vectors chosen greedily by index.
Mat complete_basis(const Subspace& u);
/// Rows spanning the annihilator of U; kernel of the result is U.
Mat annihilator_rows(const Subspace& u);

Mat direct_sum(const Mat& a, const Mat& b);
Mat kronecker(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);

/// Zero-pads a square matrix to size n >= a.rows().
Mat hat_pad(const Mat& a, int n);
/// Rank of the difference of the hat embeddings of two square matrices.
long hat_dist(const Mat& a, const Mat& b);

/// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns
/// (leftmost column first, topmost row as pivot).
std::vector<int> rref_in_place(Mat& m);

}  // namespace rankstab
