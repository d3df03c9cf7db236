#pragma once

#include <vector>

#include "rankstab/rng.hpp"
#include "rankstab/stabilize.hpp"

namespace rankstab::testing {

inline FieldSpec Q() { return FieldSpec::rationals(); }
inline FieldSpec F101() { return FieldSpec::prime_field(101); }

inline Mat mq(const std::vector<std::vector<long>>& rows) { return Mat::from_int_rows(Q(), rows); }

inline Mat diag_q(const std::vector<long>& entries) {
    std::vector<Scalar> s;
    for (long e : entries) s.push_back(Scalar::from_integer(Q(), e));
    return Mat::diag(Q(), s);
}

inline Mat col_q(const std::vector<long>& entries) {
    std::vector<Scalar> s;
    for (long e : entries) s.push_back(Scalar::from_integer(Q(), e));
    return Mat::column(Q(), s);
}

// Independent rank oracle: largest k with a nonzero k x k minor. Exponential;
// only for small fixtures.
inline Scalar det_laplace(const Mat& m) {
    int n = m.rows();
    if (n == 0) return Scalar::one(m.field());
    if (n == 1) return m.at(0, 0);
    Scalar acc = Scalar::zero(m.field());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Mat minor(m.field(), n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.set(r - 1, cc++, m.at(r, c));
            }
        }
        Scalar term = m.at(0, j);
        term *= det_laplace(minor);
        if (j % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

inline long rank_by_minors(const Mat& m) {
    int maxk = std::min(m.rows(), m.cols());
    for (int k = maxk; k >= 1; --k) {
        std::vector<int> rsel(k), csel(k);
        // enumerate k-subsets of rows and columns
        std::vector<int> ridx(k);
        for (int i = 0; i < k; ++i) ridx[i] = i;
        while (true) {
            std::vector<int> cidx(k);
            for (int i = 0; i < k; ++i) cidx[i] = i;
            while (true) {
                Mat sub(m.field(), k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub.set(i, j, m.at(ridx[i], cidx[j]));
                if (!det_laplace(sub).is_zero()) return k;
                int pos = k - 1;
                while (pos >= 0 && cidx[pos] == m.cols() - k + pos) --pos;
                if (pos < 0) break;
                ++cidx[pos];
                for (int i = pos + 1; i < k; ++i) cidx[i] = cidx[i - 1] + 1;
            }
            int pos = k - 1;
            while (pos >= 0 && ridx[pos] == m.rows() - k + pos) --pos;
            if (pos < 0) break;
            ++ridx[pos];
            for (int i = pos + 1; i < k; ++i) ridx[i] = ridx[i - 1] + 1;
        }
    }
    return 0;
}

// exact solution of the pure matrix-unit presentation of M_m(F) at size m*q
inline MatTuple unit_tuple(const FieldSpec& f, int m, int q) {
    Mat id_q = Mat::identity(f, q);
    std::vector<Mat> mats;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat e(f, m, m);
            e.set(i, j, Scalar::one(f));
            mats.push_back(kronecker(e, id_q));
        }
    return MatTuple(f, m * q, std::move(mats));
}

inline MatTuple conjugate_tuple(const MatTuple& t, const Mat& p) {
    Mat p_inv = inverse(p);
    std::vector<Mat> mats;
    for (const Mat& m : t.mats()) mats.push_back(p * m * p_inv);
    return MatTuple(t.field(), t.n(), std::move(mats));
}

// F[x]/(x^2) fixtures: square-zero solutions built from 2x2 Jordan blocks
inline Presentation square_zero_presentation(const FieldSpec& f) {
    NcPoly rel = NcPoly::monomial(f, 1, Scalar::one(f), {0, 0});
    return Presentation::associative(f, {"x"}, {rel});
}

inline MatTuple jordan2_tuple(const FieldSpec& f) {
    Mat j(f, 2, 2);
    j.set(0, 1, Scalar::one(f));
    return MatTuple(f, 2, {j});
}

inline MatTuple square_zero_solution(const FieldSpec& f, int blocks, int zeros) {
    Mat j(f, 2, 2);
    j.set(0, 1, Scalar::one(f));
    Mat acc(f, 0, 0);
    for (int i = 0; i < blocks; ++i) acc = direct_sum(acc, j);
    acc = direct_sum(acc, Mat::zeros(f, zeros, zeros));
    return MatTuple(f, 2 * blocks + zeros, {acc});
}

}  // namespace rankstab::testing
