#pragma once

#include "rankstab/approx.hpp"

namespace rankstab {

struct CompressAlignResult {
    Mat e;              // invertible n' x n'
    MatTuple compressed;  // size floor((1 + eps*d) * n)
    std::vector<long> k_counts;  // per-generator appended dimensions
    long kept = 0;      // |S_d|
};

/// Aligns a larger tuple B against A: returns invertible E with
/// hat(E^-1) hat(A_i) hat(E) = hat(A_i) and the last n' - floor((1+eps d) n)
/// columns of E^-1 B_i E zero; `compressed` is the kept top-left block tuple.
/// Requires n' > (1 + eps*d) * n and hat_dist(A_i, B_i) < eps*n for all i.
CompressAlignResult compress_align(const MatTuple& a, const MatTuple& b, const mpq_class& eps);

enum class ResizeCase { PassThrough, Compressed, ZeroPadded };

struct ResizeResult {
    MatTuple tuple;
    ResizeCase case_taken = ResizeCase::PassThrough;
    mpq_class delta_measured = 0;  // max defect of A, the band's delta
};

/// Resizes the exact solution B into the band
/// (1-delta)/(1+eps d) * n <= m <= (1+eps d) * n while staying exact and an
/// eps-approximation of A. delta is the measured max defect of A.
ResizeResult resize_solution(const Presentation& p, const MatTuple& a, const MatTuple& b,
                             const mpq_class& eps);

/// floor of a nonnegative exact rational.
long floor_mpq(const mpq_class& q);

}  // namespace rankstab
