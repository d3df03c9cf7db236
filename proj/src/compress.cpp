#include "rankstab/compress.hpp"

namespace rankstab {

long floor_mpq(const mpq_class& q) {
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return z.get_si();
}

CompressAlignResult compress_align(const MatTuple& a, const MatTuple& b, const mpq_class& eps) {
    if (a.arity() != b.arity()) throw DimensionError("compress_align: arity mismatch");
    a.field().require_same(b.field());
    const FieldSpec& f = a.field();
    int d = a.arity();
    long n = a.n(), np = b.n();
    mpq_class window_q = (1 + eps * d) * n;
    if (!(mpq_class(np) > window_q))
        throw PreconditionError("compress_align requires n' > (1 + eps*d) * n");
    mpq_class eps_n = eps * n;
    for (int i = 0; i < d; ++i)
        if (!(mpq_class(hat_dist(a.mat(i), b.mat(i))) < eps_n))
            throw PreconditionError("compress_align requires hat_dist(A_i, B_i) < eps*n");

    // W = span{e_{n+1}, ..., e_{n'}}
    Mat w_basis(f, (int)np, (int)(np - n));
    for (long j = 0; j < np - n; ++j) w_basis.set((int)(n + j), (int)j, Scalar::one(f));
    Subspace k_space = Subspace::from_canonical(w_basis);

    // ordered basis S, starting from e_1..e_n
    std::vector<std::vector<Scalar>> s_columns;
    IncrementalSpan span(f, (int)np);
    for (long i = 0; i < n; ++i) {
        std::vector<Scalar> e_i((std::size_t)np, Scalar::zero(f));
        e_i[i] = Scalar::one(f);
        span.add(e_i);
        s_columns.push_back(std::move(e_i));
    }

    CompressAlignResult res;
    for (int i = 0; i < d; ++i) {
        // image of B_i restricted to the current intersection-of-kernels in W
        Mat m = k_space.basis();
        Mat bm = b.mat(i) * m;
        IncrementalSpan image_span(f, (int)np);
        long k_i = 0;
        for (int j = 0; j < bm.cols(); ++j) {
            if (!image_span.add_column(bm, j)) continue;
            ++k_i;
            std::vector<Scalar> w((std::size_t)np, Scalar::zero(f));
            for (long r = 0; r < np; ++r) w[r] = m.at((int)r, j);
            if (span.add(w)) s_columns.push_back(std::move(w));
        }
        res.k_counts.push_back(k_i);
        if (!(mpq_class(k_i) <= eps_n))
            throw InternalError("compress_align: k_i exceeds eps*n");
        k_space = intersect(k_space, kernel(b.mat(i)));
    }

    res.kept = (long)s_columns.size();
    long window = floor_mpq(window_q);
    if (res.kept > window) throw InternalError("compress_align: |S_d| exceeds the kept window");

    // complete with vectors from the final kernel intersection
    const Mat& tail = k_space.basis();
    for (int j = 0; j < tail.cols() && (long)s_columns.size() < np; ++j) {
        std::vector<Scalar> v((std::size_t)np, Scalar::zero(f));
        for (long r = 0; r < np; ++r) v[r] = tail.at((int)r, j);
        if (span.add(v)) s_columns.push_back(std::move(v));
    }
    if ((long)s_columns.size() != np)
        throw InternalError("compress_align: completion from the kernel intersection failed");

    Mat e(f, (int)np, (int)np);
    for (long j = 0; j < np; ++j)
        for (long r = 0; r < np; ++r) e.set((int)r, (int)j, s_columns[j][r]);
    Mat e_inv = inverse(e);

    std::vector<Mat> kept_blocks;
    for (int i = 0; i < d; ++i) {
        Mat conj = e_inv * b.mat(i) * e;
        for (long c = window; c < np; ++c)
            for (long r = 0; r < np; ++r)
                if (!conj.at((int)r, (int)c).is_zero())
                    throw InternalError("compress_align: trailing columns not annihilated");
        kept_blocks.push_back(conj.block(0, 0, (int)window, (int)window));
    }
    res.e = std::move(e);
    res.compressed = MatTuple(f, (int)window, std::move(kept_blocks));
    return res;
}

ResizeResult resize_solution(const Presentation& p, const MatTuple& a, const MatTuple& b,
                             const mpq_class& eps) {
    DefectReport b_defect = defect(p, b);
    if (b_defect.max_defect != 0)
        throw PreconditionError("resize_solution: B is not an exact solution");
    if (!is_eps_approx(a, b, eps).ok)
        throw PreconditionError("resize_solution: B does not eps-approximate A");

    long n = a.n(), np = b.n();
    int d = a.arity();
    mpq_class delta = defect(p, a).max_defect;
    mpq_class hi = (1 + eps * d) * n;
    mpq_class lo = (1 - delta) / (1 + eps * d) * n;

    ResizeResult res;
    res.delta_measured = delta;
    if (lo <= np && mpq_class(np) <= hi) {
        res.tuple = b;
        res.case_taken = ResizeCase::PassThrough;
    } else if (mpq_class(np) > hi) {
        res.tuple = compress_align(a, b, eps).compressed;
        res.case_taken = ResizeCase::Compressed;
    } else {
        // n' below the band: zero-padding works only when every relator
        // annihilates the zero tuple; otherwise the proof derives a
        // contradiction from the measured data
        for (const NcPoly& rel : p.relators())
            if (rel.has_constant_term())
                throw ImpossibleInputError(
                    "resize_solution: undersized exact solution with nonzero-constant relator "
                    "(n'=" + std::to_string(np) + ", band lower bound " + lo.get_str() +
                    ", delta " + delta.get_str() + ")");
        std::vector<Mat> padded;
        for (int i = 0; i < d; ++i) padded.push_back(hat_pad(b.mat(i), (int)n));
        res.tuple = MatTuple(a.field(), (int)n, std::move(padded));
        res.case_taken = ResizeCase::ZeroPadded;
    }

    // re-check the promised guarantees on the way out
    long m = res.tuple.n();
    if (!(lo <= m && mpq_class(m) <= hi))
        throw InternalError("resize_solution: output size escapes the band");
    if (defect(p, res.tuple).max_defect != 0)
        throw InternalError("resize_solution: output is not exact");
    if (!is_eps_approx(a, res.tuple, eps).ok)
        throw InternalError("resize_solution: output does not eps-approximate A");
    return res;
}

}  // namespace rankstab
