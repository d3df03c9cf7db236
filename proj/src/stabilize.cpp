#include "rankstab/stabilize.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rankstab {

namespace {

std::string join_longs(const std::vector<long>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    return os.str();
}

MatTuple slice_tuple(const MatTuple& t, int from, int count) {
    std::vector<Mat> mats(t.mats().begin() + from, t.mats().begin() + from + count);
    return MatTuple(t.field(), t.n(), std::move(mats));
}

Presentation trivial_presentation(const FieldSpec& f) {
    return Presentation::associative(f, {}, {});
}

bool all_relators_kill_zero(const Presentation& p) {
    for (const NcPoly& r : p.relators())
        if (r.has_constant_term()) return false;
    return true;
}

MatTuple zero_pad_tuple(const MatTuple& t, int n) {
    std::vector<Mat> mats;
    for (const Mat& m : t.mats()) mats.push_back(hat_pad(m, n));
    return MatTuple(t.field(), n, std::move(mats));
}

// Component solvers receive the caller's absolute distance budget eps*n
// rescaled to their own input size; the final a-posteriori verification is
// what enforces the outer contract.
mpq_class inner_eps(const mpq_class& eps, long outer_n, long inner_n) {
    if (inner_n <= 0) return eps;
    mpq_class e = eps * outer_n / inner_n;
    e.canonicalize();
    return e;
}

// D^-1 columns = [image basis | kernel basis] of an exact idempotent, so that
// D E D^-1 = Id_r + 0.
struct IdempotentFrame {
    Mat d, d_inv;
    long r = 0;
};

IdempotentFrame idempotent_frame(const Mat& e) {
    if (!e.is_square()) throw DimensionError("idempotent must be square");
    if (e * e != e) throw PreconditionError("matrix is not idempotent");
    Subspace im = image(e);
    Subspace ker_e = kernel(e);
    int n = e.rows();
    if (im.dim() + ker_e.dim() != n)
        throw InternalError("idempotent image/kernel do not complement");
    Mat d_inv(e.field(), n, n);
    for (int j = 0; j < im.dim(); ++j)
        for (int i = 0; i < n; ++i) d_inv.set(i, j, im.basis().at(i, j));
    for (int j = 0; j < ker_e.dim(); ++j)
        for (int i = 0; i < n; ++i) d_inv.set(i, im.dim() + j, ker_e.basis().at(i, j));
    IdempotentFrame fr;
    fr.d_inv = d_inv;
    fr.d = inverse(d_inv);
    fr.r = im.dim();
    return fr;
}

Mat permutation_from_old_indices(const FieldSpec& f, const std::vector<int>& sigma) {
    // column j of the result is e_{sigma[j]}
    int n = (int)sigma.size();
    Mat p(f, n, n);
    for (int j = 0; j < n; ++j) p.set(sigma[j], j, Scalar::one(f));
    return p;
}

}  // namespace

StabilizeOutcome verify_outcome(const Presentation& p, const MatTuple& input,
                                const MatTuple& solution, const mpq_class& eps,
                                std::map<std::string, std::string> diagnostics) {
    diagnostics["input_size"] = std::to_string(input.n());
    diagnostics["solution_size"] = std::to_string(solution.n());
    DefectReport rep = defect(p, solution);
    EpsApproxReport app = is_eps_approx(input, solution, eps);
    diagnostics["distances"] = join_longs(app.distances);
    if (rep.max_defect != 0) {
        diagnostics["solution_max_defect"] = rep.max_defect.get_str();
        throw NotStabilizedError("stabilization failed: candidate solution is not exact",
                                 std::move(diagnostics));
    }
    if (!app.ok) {
        diagnostics["eps_times_n"] = mpq_class(eps * input.n()).get_str();
        throw NotStabilizedError("stabilization failed: distance bound eps*n exceeded",
                                 std::move(diagnostics));
    }
    StabilizeOutcome out;
    out.solution = solution;
    out.distances = app.distances;
    out.verified = true;
    out.diagnostics = std::move(diagnostics);
    return out;
}

// ---------------------------------------------------------------------------
// finite-dimensional repair

FindimAttempt stabilize_findim_attempt(const Presentation& p, long m, const MatTuple& c,
                                       const MatTuple& a, const mpq_class& eps) {
    constexpr long kDegreeCap = 6;
    if (p.arity() != a.arity() || p.arity() != c.arity())
        throw DimensionError("stabilize_findim: arity mismatch");
    p.field().require_same(a.field());
    p.field().require_same(c.field());
    long s = c.n();
    if (s < 1) throw PreconditionError("stabilize_findim: reference solution must be nonempty");
    if (defect(p, c).max_defect != 0)
        throw PreconditionError("stabilize_findim: reference tuple is not an exact solution");
    if (m < 0) throw PreconditionError("stabilize_findim: m must be nonnegative");

    FindimAttempt att;
    const FieldSpec& f = a.field();
    long n = a.n();
    int d = a.arity();

    // U = intersection of relator kernels
    Subspace u = Subspace::full(f, (int)n);
    long rank_sum = 0;
    for (const NcPoly& rel : p.relators()) {
        Subspace ker_rel = kernel(eval(rel, a));
        rank_sum += n - ker_rel.dim();
        u = intersect(u, ker_rel);
    }

    // W = intersection over word lengths 0..m of iterated preimages
    Subspace w = u;
    Subspace level = u;
    for (long l = 1; l <= m; ++l) {
        Subspace next = Subspace::full(f, (int)n);
        for (int i = 0; i < d; ++i) next = intersect(next, preimage(a.mat(i), level));
        level = next;
        w = intersect(w, level);
    }
    long k = w.dim();

    long word_count = 0, pw = 1;
    for (long l = 0; l <= m; ++l) {
        word_count += pw;
        pw *= d;
    }
    att.diagnostics["dim_w"] = std::to_string(k);
    att.diagnostics["dim_u"] = std::to_string(u.dim());
    att.diagnostics["dim_w_lower_bound"] =
        std::to_string(std::max(0L, n - word_count * rank_sum));
    if (k < n - word_count * rank_sum)
        throw InternalError("stabilize_findim: dim W fell below its provable lower bound");

    // the action must restrict to W; checked rather than assumed
    Mat ann_w = annihilator_rows(w);
    for (int i = 0; i < d; ++i) {
        if (!(ann_w * (a.mat(i) * w.basis())).is_zero()) {
            att.ok = false;
            att.reason = "candidate subspace W is not invariant under the tuple";
            att.diagnostics["failed_generator"] = std::to_string(i);
            att.diagnostics["hint"] =
                m < kDegreeCap
                    ? "increase m (retry with m+1)"
                    : "degree cap reached; generators may not span, or the defect is too large";
            return att;
        }
    }

    Mat e = complete_basis(w);
    Mat e_inv = inverse(e);

    long npr = n;
    while ((npr - k) % s != 0) ++npr;
    long copies = (npr - k) / s;
    att.diagnostics["padding"] = std::to_string(npr - n);
    att.diagnostics["reference_copies"] = std::to_string(copies);
    att.diagnostics["case"] = "findim";

    std::vector<Mat> sol;
    Mat e_big = direct_sum(e, Mat::identity(f, (int)(npr - n)));
    Mat e_big_inv = direct_sum(e_inv, Mat::identity(f, (int)(npr - n)));
    for (int i = 0; i < d; ++i) {
        Mat block = (e_inv * a.mat(i) * e).block(0, 0, (int)k, (int)k);
        for (long t = 0; t < copies; ++t) block = direct_sum(block, c.mat(i));
        sol.push_back(e_big * block * e_big_inv);
    }
    MatTuple solution(f, (int)npr, std::move(sol));

    try {
        att.outcome = verify_outcome(p, a, solution, eps, att.diagnostics);
        att.ok = true;
        att.diagnostics = att.outcome.diagnostics;
    } catch (const NotStabilizedError& err) {
        att.ok = false;
        att.reason = err.what();
        att.diagnostics = err.diagnostics();
        if (att.diagnostics.count("solution_max_defect")) {
            att.diagnostics["hint"] = m < kDegreeCap
                                          ? "increase m (retry with m+1)"
                                          : "degree cap reached; generators may not span";
        } else {
            att.diagnostics["hint"] = "defect too large for the requested eps";
        }
    }
    return att;
}

StabilizeOutcome stabilize_findim(const Presentation& p, long m, const MatTuple& c,
                                  const MatTuple& a, const mpq_class& eps) {
    FindimAttempt att = stabilize_findim_attempt(p, m, c, a, eps);
    if (!att.ok) throw NotStabilizedError(att.reason, att.diagnostics);
    return att.outcome;
}

ExactSolver make_findim_solver(long m, MatTuple c) {
    return [m, c = std::move(c)](const Presentation& p, const MatTuple& a,
                                 const mpq_class& eps) {
        return stabilize_findim(p, m, c, a, eps);
    };
}

// ---------------------------------------------------------------------------
// warm-up: zero products

ZeroProductResult stabilize_zero_product(const Mat& a1, const Mat& a2) {
    a1.field().require_same(a2.field());
    if (!a1.is_square() || !a2.is_square() || a1.rows() != a2.rows())
        throw DimensionError("stabilize_zero_product: square same-size matrices required");
    const FieldSpec& f = a1.field();
    int n = a1.rows();
    Mat m = a1 * a2;
    ZeroProductResult res;
    if (m.is_zero()) {
        res.b1 = a1;
        res.b2 = a2;
        return res;
    }

    // basis A2 v_i of Image A2 with v_i standard vectors at the pivot columns
    IncrementalSpan img(f, n);
    std::vector<int> pivots;
    for (int j = 0; j < n; ++j)
        if (img.add_column(a2, j)) pivots.push_back(j);

    // T = [A2 v_1 .. A2 v_r | completion], D T = [-M v_1 .. -M v_r | 0]
    Mat t(f, n, n), rhs(f, n, n);
    IncrementalSpan span(f, n);
    int col = 0;
    for (int j : pivots) {
        for (int i = 0; i < n; ++i) {
            t.set(i, col, a2.at(i, j));
            rhs.set(i, col, -m.at(i, j));
        }
        span.add_column(a2, j);
        ++col;
    }
    for (int i = 0; i < n && col < n; ++i) {
        std::vector<Scalar> e_i(n, Scalar::zero(f));
        e_i[i] = Scalar::one(f);
        if (span.add(e_i)) {
            t.set(i, col, Scalar::one(f));
            ++col;
        }
    }
    Mat d = rhs * inverse(t);
    res.b1 = a1 + d;
    res.b2 = a2;
    res.moved_rank = rank(d);
    if (!(res.b1 * res.b2).is_zero())
        throw InternalError("stabilize_zero_product: product did not vanish");
    if (res.moved_rank > rank(m))
        throw InternalError("stabilize_zero_product: correction rank exceeds rank(A1*A2)");
    return res;
}

// ---------------------------------------------------------------------------
// idempotent and matrix-unit rounding

Mat round_idempotent(const Mat& c) {
    if (!c.is_square()) throw DimensionError("round_idempotent: square matrix required");
    const FieldSpec& f = c.field();
    int n = c.rows();
    Subspace fix = kernel(c - Mat::identity(f, n));
    Subspace ker0 = kernel(c);
    int r = fix.dim();

    Mat d(f, n, n);
    IncrementalSpan span(f, n);
    int col = 0;
    for (int j = 0; j < fix.dim(); ++j) {
        if (!span.add_column(fix.basis(), j)) throw InternalError("dependent canonical basis");
        for (int i = 0; i < n; ++i) d.set(i, col, fix.basis().at(i, j));
        ++col;
    }
    for (int j = 0; j < ker0.dim(); ++j) {
        if (span.add_column(ker0.basis(), j)) {
            for (int i = 0; i < n; ++i) d.set(i, col, ker0.basis().at(i, j));
            ++col;
        }
    }
    for (int i = 0; i < n && col < n; ++i) {
        std::vector<Scalar> e_i(n, Scalar::zero(f));
        e_i[i] = Scalar::one(f);
        if (span.add(e_i)) {
            d.set(i, col, Scalar::one(f));
            ++col;
        }
    }
    if (col != n) throw InternalError("round_idempotent: basis completion failed");

    Mat block = Mat::zeros(f, n, n);
    for (int i = 0; i < r; ++i) block.set(i, i, Scalar::one(f));
    Mat e = d * block * inverse(d);
    if (e * e != e) throw InternalError("round_idempotent: output not idempotent");
    if (rank(e - c) > rank(c * c - c))
        throw InternalError("round_idempotent: distance bound violated");
    return e;
}

SplitIdempotentResult split_idempotent_block(const Mat& e, const Mat& m) {
    e.field().require_same(m.field());
    if (e.rows() != m.rows() || !m.is_square())
        throw DimensionError("split_idempotent_block: size mismatch");
    IdempotentFrame fr = idempotent_frame(e);
    int n = e.rows();
    SplitIdempotentResult res;
    res.d = fr.d;
    res.r = fr.r;
    Mat conj = fr.d * m * fr.d_inv;
    res.m_corner = conj.block(0, 0, (int)fr.r, (int)fr.r);
    Mat replaced = fr.d_inv * hat_pad(res.m_corner, n) * fr.d;
    res.distance = rank(m - replaced);
    return res;
}

RoundUnitsResult round_matrix_units(const std::vector<Mat>& units, const Mat& a) {
    if (units.empty()) throw DimensionError("round_matrix_units: no units given");
    int m = 0;
    while (m * m < (int)units.size()) ++m;
    if (m * m != (int)units.size())
        throw DimensionError("round_matrix_units: unit count is not a perfect square");
    const FieldSpec& f = a.field();
    int np = units[0].rows();
    for (const Mat& u : units) {
        f.require_same(u.field());
        if (u.rows() != np || u.cols() != np)
            throw DimensionError("round_matrix_units: units must be square of a common size");
    }
    // exactness of the unit system is a precondition
    Mat sum = Mat::zeros(f, np, np);
    for (int i = 0; i < m; ++i) sum = sum + units[i * m + i];
    if (sum != Mat::identity(f, np))
        throw PreconditionError("round_matrix_units: unit diagonal does not sum to identity");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    Mat prod = units[i * m + j] * units[k * m + l];
                    Mat expect = j == k ? units[i * m + l] : Mat::zeros(f, np, np);
                    if (prod != expect)
                        throw PreconditionError("round_matrix_units: unit relations not exact");
                }
    if (np % m != 0) throw PreconditionError("round_matrix_units: m does not divide the size");

    RoundUnitsResult res;
    res.q = np / m;
    Subspace im11 = image(units[0]);
    if (im11.dim() != res.q) throw InternalError("round_matrix_units: corner image has wrong rank");
    Mat d_inv(f, np, np);
    for (int i = 0; i < m; ++i) {
        Mat blockcols = units[i * m + 0] * im11.basis();
        for (int jc = 0; jc < res.q; ++jc)
            for (int r = 0; r < np; ++r) d_inv.set(r, i * (int)res.q + jc, blockcols.at(r, jc));
    }
    res.d = inverse(d_inv);

    int n = a.rows();
    res.size_gap = std::labs((long)np - (long)n);
    Mat a_resized = a.resized(np, np);
    Mat conj = res.d * a_resized * d_inv;
    res.a_corner = conj.block(0, 0, (int)res.q, (int)res.q);
    res.c = d_inv * kronecker(Mat::identity(f, m), res.a_corner) * res.d;

    int hat_n = std::max(n, np);
    Mat a_hat = hat_pad(a, hat_n);
    for (const Mat& u : units) {
        Mat u_hat = hat_pad(u, hat_n);
        res.lambda = std::max(res.lambda, rank(a_hat * u_hat - u_hat * a_hat));
    }
    res.distance = hat_dist(a, res.c);
    if (res.distance > (long)m * m * (res.lambda + 2 * res.size_gap))
        throw InternalError("round_matrix_units: m^2(lambda+2N) bound violated");
    return res;
}

// ---------------------------------------------------------------------------
// invertible rounding (Section 6)

Mat round_invertible(const Mat& a) {
    if (!a.is_square()) throw DimensionError("round_invertible: square matrix required");
    const FieldSpec& f = a.field();
    int n = a.rows();
    Subspace ker_a = kernel(a);
    int t = ker_a.dim();
    if (t == 0) return a;

    Mat ker_completion = complete_basis(ker_a);          // kernel basis first
    Mat im_completion = complete_basis(image(a));        // image basis first
    // T = [complement-of-kernel | kernel basis], U T = [A*complement | image complement]
    Mat tmat(f, n, n), rhs(f, n, n);
    for (int j = 0; j < n - t; ++j) {
        for (int i = 0; i < n; ++i) tmat.set(i, j, ker_completion.at(i, t + j));
        Mat av = a * ker_completion.block(0, t + j, n, 1);
        for (int i = 0; i < n; ++i) rhs.set(i, j, av.at(i, 0));
    }
    for (int j = 0; j < t; ++j) {
        for (int i = 0; i < n; ++i) {
            tmat.set(i, n - t + j, ker_a.basis().at(i, j));
            rhs.set(i, n - t + j, im_completion.at(i, n - t + j));
        }
    }
    Mat u = rhs * inverse(tmat);
    if (rank(u) != n) throw InternalError("round_invertible: output is singular");
    if (rank(u - a) > t) throw InternalError("round_invertible: moved more than the corank");
    return u;
}

RoundInvertibleResult round_invertible(const Mat& a, const Mat& b) {
    RoundInvertibleResult res;
    res.u = round_invertible(a);
    res.ab_defect = rank(a * b - Mat::identity(a.field(), a.rows()));
    return res;
}

// ---------------------------------------------------------------------------
// presentation transport

StabilizeOutcome transport_solution(const Presentation& src, const Presentation& dst,
                                    const std::vector<NcPoly>& g, const std::vector<NcPoly>& f,
                                    const ExactSolver& solver, const MatTuple& a,
                                    const mpq_class& eps) {
    if ((int)g.size() != src.arity() || (int)f.size() != dst.arity())
        throw DimensionError("transport_solution: isomorphism data arity mismatch");
    for (const NcPoly& gi : g)
        if (gi.arity() != dst.arity()) throw DimensionError("G polynomials must use dst generators");
    for (const NcPoly& fj : f)
        if (fj.arity() != src.arity()) throw DimensionError("F polynomials must use src generators");
    if (a.arity() != dst.arity()) throw DimensionError("transport_solution: tuple arity mismatch");

    std::vector<Mat> translated;
    for (const NcPoly& gi : g) translated.push_back(eval(gi, a));
    MatTuple src_input(a.field(), a.n(), std::move(translated));

    long s_len = 0, s_cnt = 0;
    for (const NcPoly& fj : f) {
        s_len = std::max(s_len, fj.max_degree());
        s_cnt = std::max(s_cnt, fj.monomial_count());
    }
    long s_bound = s_len * s_cnt;
    mpq_class eps_inner = eps;

    StabilizeOutcome src_out = solver(src, src_input, eps_inner);

    std::vector<Mat> back;
    for (const NcPoly& fj : f) back.push_back(eval(fj, src_out.solution));
    MatTuple candidate(a.field(), src_out.solution.n(), std::move(back));

    std::map<std::string, std::string> diag;
    diag["case"] = "transport";
    diag["inner_eps"] = eps_inner.get_str();
    mpq_class logged = mpq_class(s_bound) * eps_inner * a.n() +
                       std::labs((long)src_out.solution.n() - (long)a.n());
    diag["polyrank_bound_log"] = logged.get_str();
    try {
        return verify_outcome(dst, a, candidate, eps, std::move(diag));
    } catch (NotStabilizedError& err) {
        auto d2 = err.diagnostics();
        d2["hint"] = "verify the isomorphism data (G, F); transport assumes they define inverse maps";
        throw NotStabilizedError(err.what(), std::move(d2));
    }
}

// ---------------------------------------------------------------------------
// group algebras

StabilizeOutcome stabilize_group_algebra(const Presentation& fg_pres,
                                         const ExactSolver& solver_grp, const MatTuple& a,
                                         const mpq_class& eps) {
    int d2 = fg_pres.arity();
    if (d2 % 2 != 0) throw DimensionError("group-algebra presentation must have 2d generators");
    int d = d2 / 2;
    if (a.arity() != d2) throw DimensionError("stabilize_group_algebra: tuple arity mismatch");
    const FieldSpec& f = a.field();
    long n = a.n();

    mpq_class delta = defect(fg_pres, a).max_defect;
    std::vector<Mat> rounded;
    for (int j = 0; j < d; ++j) {
        Mat u = round_invertible(a.mat(j));
        Mat u_prime = round_invertible(a.mat(d + j));
        if (mpq_class(rank(u_prime - inverse(u))) > 4 * delta * n)
            throw InternalError("stabilize_group_algebra: 4-delta inverse chain violated");
        rounded.push_back(std::move(u));
    }
    std::vector<Mat> paired = rounded;
    for (int j = 0; j < d; ++j) paired.push_back(inverse(rounded[j]));
    MatTuple u_tuple(f, (int)n, std::move(paired));

    StabilizeOutcome inner = solver_grp(fg_pres, u_tuple, eps);

    std::map<std::string, std::string> diag;
    diag["case"] = "group-algebra";
    diag["rounded_delta"] = delta.get_str();
    return verify_outcome(fg_pres, a, inner.solution, eps, std::move(diag));
}

StabilizeOutcome stabilize_group_from_algebra(const Presentation& fg_pres,
                                              const ExactSolver& solver_alg, const MatTuple& a,
                                              const mpq_class& eps) {
    int d2 = fg_pres.arity();
    if (d2 % 2 != 0) throw DimensionError("group-algebra presentation must have 2d generators");
    int d = d2 / 2;
    if (a.arity() != d) throw DimensionError("stabilize_group_from_algebra: expected d-tuple");
    const FieldSpec& f = a.field();

    std::vector<Mat> doubled = a.mats();
    for (int j = 0; j < d; ++j) doubled.push_back(inverse(a.mat(j)));  // throws if singular
    MatTuple t(f, a.n(), std::move(doubled));

    StabilizeOutcome inner = solver_alg(fg_pres, t, eps);
    if (defect(fg_pres, inner.solution).max_defect != 0)
        throw NotStabilizedError("solver returned a non-exact group-algebra solution",
                                 inner.diagnostics);

    MatTuple group_side = slice_tuple(inner.solution, 0, d);
    std::map<std::string, std::string> diag;
    diag["case"] = "group-from-algebra";
    diag["solution_size"] = std::to_string(group_side.n());
    EpsApproxReport app = is_eps_approx(a, group_side, eps);
    diag["distances"] = join_longs(app.distances);
    if (!app.ok)
        throw NotStabilizedError("group-side distances exceed eps*n", std::move(diag));
    StabilizeOutcome out;
    out.solution = std::move(group_side);
    out.distances = app.distances;
    out.verified = true;
    out.diagnostics = std::move(diag);
    return out;
}

// ---------------------------------------------------------------------------
// free products

BezoutPair compute_bezout(long g, long gprime) {
    if (g < 1 || gprime < 1) throw DimensionArithmeticError("compute_bezout: moduli must be >= 1");
    long old_r = g, r = gprime;
    long old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    BezoutPair out;
    out.gcd = old_r;
    long period = gprime / out.gcd;
    long k = ((old_s % period) + period) % period;
    // k*g ≡ gcd (mod g'); bump until k' = (k*g - gcd)/g' is nonnegative
    while (k * g < out.gcd) k += period;
    out.k = k;
    out.kprime = (k * g - out.gcd) / gprime;
    if (out.k * g - out.kprime * gprime != out.gcd)
        throw InternalError("compute_bezout: identity check failed");
    return out;
}

MatTuple stabilize_free_product(const Presentation& pres_a, const Presentation& pres_b,
                                const MatTuple& sol_a, const MatTuple& sol_b,
                                const MatTuple& rep_a, const MatTuple& rep_b, long g,
                                long gprime) {
    const FieldSpec& f = sol_a.field();
    f.require_same(sol_b.field());
    f.require_same(rep_a.field());
    f.require_same(rep_b.field());
    if (g < 1 || gprime < 1) throw DimensionArithmeticError("free product: moduli must be >= 1");
    long c = std::gcd(g, gprime);
    if (rep_a.n() % g != 0)
        throw DimensionArithmeticError("free product: rep size " + std::to_string(rep_a.n()) +
                                       " is not a multiple of g=" + std::to_string(g));
    if (rep_b.n() % gprime != 0)
        throw DimensionArithmeticError("free product: rep' size " + std::to_string(rep_b.n()) +
                                       " is not a multiple of g'=" + std::to_string(gprime));
    long k = rep_a.n() / g, kprime = rep_b.n() / gprime;
    if (k * g - kprime * gprime != c)
        throw DimensionArithmeticError("free product: k*g - k'*g' = " +
                                       std::to_string(k * g - kprime * gprime) +
                                       " differs from gcd " + std::to_string(c));
    long m = sol_a.n(), mprime = sol_b.n();
    if (m % g != 0)
        throw DimensionArithmeticError("free product: solution size " + std::to_string(m) +
                                       " violates m ≡ 0 (mod g)");
    if (mprime % gprime != 0)
        throw DimensionArithmeticError("free product: solution size " + std::to_string(mprime) +
                                       " violates m' ≡ 0 (mod g')");
    if (m > mprime)
        throw DimensionArithmeticError("free product: requires m <= m' (swap the factors)");
    if ((mprime - m) % c != 0)
        throw DimensionArithmeticError("free product: gcd " + std::to_string(c) +
                                       " does not divide m' - m = " + std::to_string(mprime - m));
    long q = (mprime - m) / c;
    long total = m + q * k * g;
    if (total != mprime + q * kprime * gprime)
        throw InternalError("free product: assembled sizes disagree");

    Mat id_q = Mat::identity(f, (int)q);
    std::vector<Mat> combined;
    for (int i = 0; i < sol_a.arity(); ++i)
        combined.push_back(direct_sum(sol_a.mat(i), kronecker(rep_a.mat(i), id_q)));
    for (int j = 0; j < sol_b.arity(); ++j)
        combined.push_back(direct_sum(sol_b.mat(j), kronecker(rep_b.mat(j), id_q)));
    MatTuple out(f, (int)total, std::move(combined));

    Presentation product = free_product_presentation(pres_a, pres_b);
    if (out.arity() != product.arity())
        throw DimensionError("free product: tuple arities do not match the presentations");
    if (defect(product, out).max_defect != 0)
        throw InternalError("free product: assembled tuple does not satisfy the relators");
    return out;
}

// ---------------------------------------------------------------------------
// direct products

StabilizeOutcome stabilize_direct_product(const Presentation& pres_a, const Presentation& pres_b,
                                          const ExactSolver& solver_a, const ExactSolver& solver_b,
                                          const MatTuple& t, const mpq_class& eps) {
    Presentation product = direct_product_presentation(pres_a, pres_b);
    int d = pres_a.arity(), dt = pres_b.arity();
    if (t.arity() != d + dt + 2)
        throw DimensionError("stabilize_direct_product: tuple must list x..., y..., e1, e2");
    const FieldSpec& f = t.field();
    long n = t.n();

    MatTuple a_part = slice_tuple(t, 0, d);
    MatTuple b_part = slice_tuple(t, d, dt);
    const Mat& c1 = t.mat(d + dt);

    Mat e1 = round_idempotent(c1);
    long k = rank(e1);
    std::map<std::string, std::string> diag;
    diag["k"] = std::to_string(k);

    mpq_class half_eps_n = eps / 2 * n;
    MatTuple solution;
    if (mpq_class(k) <= half_eps_n) {
        diag["case"] = "I";
        StabilizeOutcome out_b = solver_b(pres_b, b_part, eps);
        long npr = out_b.solution.n();
        std::vector<Mat> mats;
        for (int i = 0; i < d; ++i) mats.push_back(Mat::zeros(f, (int)npr, (int)npr));
        for (int i = 0; i < dt; ++i) mats.push_back(out_b.solution.mat(i));
        mats.push_back(Mat::zeros(f, (int)npr, (int)npr));
        mats.push_back(Mat::identity(f, (int)npr));
        solution = MatTuple(f, (int)npr, std::move(mats));
    } else if (mpq_class(k) >= (1 - eps / 2) * n) {
        diag["case"] = "II";
        StabilizeOutcome out_a = solver_a(pres_a, a_part, eps);
        long npr = out_a.solution.n();
        std::vector<Mat> mats;
        for (int i = 0; i < d; ++i) mats.push_back(out_a.solution.mat(i));
        for (int i = 0; i < dt; ++i) mats.push_back(Mat::zeros(f, (int)npr, (int)npr));
        mats.push_back(Mat::identity(f, (int)npr));
        mats.push_back(Mat::zeros(f, (int)npr, (int)npr));
        solution = MatTuple(f, (int)npr, std::move(mats));
    } else {
        diag["case"] = "III";
        if (!all_relators_kill_zero(pres_a) || !all_relators_kill_zero(pres_b))
            throw NotStabilizedError(
                "direct product case III reached with a constant-term relator", diag);
        IdempotentFrame fr = idempotent_frame(e1);
        if (fr.r != k) throw InternalError("idempotent frame rank mismatch");

        std::vector<Mat> a_blocks, b_blocks;
        for (int i = 0; i < d; ++i)
            a_blocks.push_back((fr.d * a_part.mat(i) * fr.d_inv).block(0, 0, (int)k, (int)k));
        for (int i = 0; i < dt; ++i)
            b_blocks.push_back(
                (fr.d * b_part.mat(i) * fr.d_inv).block((int)k, (int)k, (int)(n - k), (int)(n - k)));
        MatTuple a_corner(f, (int)k, std::move(a_blocks));
        MatTuple b_corner(f, (int)(n - k), std::move(b_blocks));

        StabilizeOutcome out_a = solver_a(pres_a, a_corner, inner_eps(eps, n, k));
        StabilizeOutcome out_b = solver_b(pres_b, b_corner, inner_eps(eps, n, n - k));
        MatTuple sol_a = out_a.solution, sol_b = out_b.solution;
        if (sol_a.n() < k) sol_a = zero_pad_tuple(sol_a, (int)k);
        if (sol_b.n() < n - k) sol_b = zero_pad_tuple(sol_b, (int)(n - k));
        long k1 = sol_a.n(), k2 = sol_b.n();
        long npr = k1 + k2;
        diag["k1"] = std::to_string(k1);
        diag["k2"] = std::to_string(k2);

        // permutation moving rows/cols k+1..k1 to positions n+1..n+(k1-k)
        std::vector<int> sigma;
        for (long i = 0; i < k; ++i) sigma.push_back((int)i);
        for (long i = 0; i < n - k; ++i) sigma.push_back((int)(k1 + i));
        for (long i = k; i < k1; ++i) sigma.push_back((int)i);
        for (long i = k1 + (n - k); i < npr; ++i) sigma.push_back((int)i);
        Mat dperm = permutation_from_old_indices(f, sigma);
        Mat dperm_inv = dperm.transpose();

        Mat dtil = direct_sum(fr.d_inv, Mat::identity(f, (int)(npr - n)));
        Mat dtil_inv = direct_sum(fr.d, Mat::identity(f, (int)(npr - n)));
        auto conj = [&](const Mat& x) { return dtil * (dperm * x * dperm_inv) * dtil_inv; };

        std::vector<Mat> mats;
        Mat zero_k2 = Mat::zeros(f, (int)k2, (int)k2);
        Mat zero_k1 = Mat::zeros(f, (int)k1, (int)k1);
        for (int i = 0; i < d; ++i) mats.push_back(conj(direct_sum(sol_a.mat(i), zero_k2)));
        for (int i = 0; i < dt; ++i) mats.push_back(conj(direct_sum(zero_k1, sol_b.mat(i))));
        Mat e1_new = conj(direct_sum(Mat::identity(f, (int)k1), zero_k2));
        mats.push_back(e1_new);
        mats.push_back(Mat::identity(f, (int)npr) - e1_new);
        solution = MatTuple(f, (int)npr, std::move(mats));
    }
    return verify_outcome(product, t, solution, eps, std::move(diag));
}

// ---------------------------------------------------------------------------
// matrix algebras over A

StabilizeOutcome stabilize_matrix_algebra(const Presentation& pres_a, int m,
                                          const ExactSolver& solver_a, const MatTuple& t,
                                          const mpq_class& eps) {
    if (m < 1) throw DimensionError("matrix algebra degree must be >= 1");
    Presentation full = matrix_algebra_presentation(pres_a, m);
    int d = pres_a.arity();
    if (t.arity() != d + m * m)
        throw DimensionError("stabilize_matrix_algebra: tuple must list x..., then m^2 units");
    const FieldSpec& f = t.field();
    long n = t.n();

    MatTuple a_part = slice_tuple(t, 0, d);
    MatTuple unit_part = slice_tuple(t, d, m * m);

    // exact matrix units near the unit images, via the finite-dimensional repair
    Presentation units_pres = matrix_algebra_presentation(trivial_presentation(f), m);
    std::vector<Mat> std_units;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat u(f, m, m);
            u.set(i, j, Scalar::one(f));
            std_units.push_back(std::move(u));
        }
    MatTuple std_units_tuple(f, m, std_units);
    StabilizeOutcome units_out =
        stabilize_findim(units_pres, 2, std_units_tuple, unit_part, eps);
    const std::vector<Mat>& exact_units = units_out.solution.mats();

    std::map<std::string, std::string> diag;
    diag["case"] = "matrix-algebra";
    diag["units_size"] = std::to_string(units_out.solution.n());

    // extract the commutant corners of the x-images
    std::vector<Mat> corners;
    long q = 0;
    Mat frame_d, frame_d_inv;
    for (int kx = 0; kx < d; ++kx) {
        RoundUnitsResult ru = round_matrix_units(exact_units, a_part.mat(kx));
        if (kx == 0) {
            q = ru.q;
            frame_d = ru.d;
            frame_d_inv = inverse(ru.d);
        }
        corners.push_back(ru.a_corner);
    }
    if (d == 0) {
        RoundUnitsResult ru = round_matrix_units(exact_units, Mat::zeros(f, (int)n, (int)n));
        q = ru.q;
        frame_d = ru.d;
        frame_d_inv = inverse(ru.d);
    }
    diag["q"] = std::to_string(q);

    MatTuple corner_tuple(f, (int)q, std::move(corners));
    MatTuple base_solution(f, (int)q, {});
    long qprime = q;
    if (d > 0) {
        StabilizeOutcome out_a = solver_a(pres_a, corner_tuple, inner_eps(eps, n, q));
        base_solution = out_a.solution;
        qprime = base_solution.n();
        if (qprime < q) {
            if (!all_relators_kill_zero(pres_a))
                throw NotStabilizedError(
                    "base solver shrank the size and relators do not kill zero", diag);
            base_solution = zero_pad_tuple(base_solution, (int)q);
            qprime = q;
        }
    }
    diag["q_prime"] = std::to_string(qprime);

    // interleave: move the last q'-q rows/cols of each q' block to the end
    long npr = (long)m * qprime;
    std::vector<int> sigma;
    for (int i = 0; i < m; ++i)
        for (long j = 0; j < q; ++j) sigma.push_back((int)(i * qprime + j));
    for (int i = 0; i < m; ++i)
        for (long j = q; j < qprime; ++j) sigma.push_back((int)(i * qprime + j));
    Mat dperm = permutation_from_old_indices(f, sigma);
    Mat dperm_inv = dperm.transpose();
    Mat dtil = direct_sum(frame_d_inv, Mat::identity(f, (int)(npr - (long)m * q)));
    Mat dtil_inv = direct_sum(frame_d, Mat::identity(f, (int)(npr - (long)m * q)));
    auto conj = [&](const Mat& x) { return dtil * (dperm * x * dperm_inv) * dtil_inv; };

    std::vector<Mat> mats;
    Mat id_m = Mat::identity(f, m);
    for (int kx = 0; kx < d; ++kx) mats.push_back(conj(kronecker(id_m, base_solution.mat(kx))));
    Mat id_qprime = Mat::identity(f, (int)qprime);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat e_ij(f, m, m);
            e_ij.set(i, j, Scalar::one(f));
            mats.push_back(conj(kronecker(e_ij, id_qprime)));
        }
    MatTuple solution(f, (int)npr, std::move(mats));
    return verify_outcome(full, t, solution, eps, std::move(diag));
}

StabilizeOutcome demote_matrix_algebra(const Presentation& pres_a, int m,
                                       const ExactSolver& solver_m, const MatTuple& a,
                                       const mpq_class& eps) {
    if (m < 1) throw DimensionError("matrix algebra degree must be >= 1");
    Presentation full = matrix_algebra_presentation(pres_a, m);
    int d = pres_a.arity();
    if (a.arity() != d) throw DimensionError("demote_matrix_algebra: tuple arity mismatch");
    const FieldSpec& f = a.field();
    long n = a.n();

    Mat id_m = Mat::identity(f, m);
    Mat id_n = Mat::identity(f, (int)n);
    std::vector<Mat> lifted;
    for (int k = 0; k < d; ++k) lifted.push_back(kronecker(id_m, a.mat(k)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Mat e_ij(f, m, m);
            e_ij.set(i, j, Scalar::one(f));
            lifted.push_back(kronecker(e_ij, id_n));
        }
    MatTuple t(f, (int)(m * n), std::move(lifted));

    StabilizeOutcome out = solver_m(full, t, inner_eps(eps, n, (long)m * n));
    long npr = out.solution.n();
    if (npr % m != 0)
        throw InternalError("demote_matrix_algebra: solver size is not a multiple of m");
    long q = npr / m;

    std::vector<Mat> units(out.solution.mats().begin() + d, out.solution.mats().end());
    Subspace im11 = image(units[0]);
    if (im11.dim() != q) throw InternalError("demote_matrix_algebra: corner image rank mismatch");
    Mat d_inv(f, (int)npr, (int)npr);
    for (int i = 0; i < m; ++i) {
        Mat blockcols = units[i * m + 0] * im11.basis();
        for (long jc = 0; jc < q; ++jc)
            for (long r = 0; r < npr; ++r)
                d_inv.set((int)r, (int)(i * q + jc), blockcols.at((int)r, (int)jc));
    }
    Mat frame_d = inverse(d_inv);

    std::map<std::string, std::string> diag;
    diag["case"] = "demote-matrix-algebra";
    diag["q"] = std::to_string(q);
    std::vector<Mat> corners;
    for (int k = 0; k < d; ++k) {
        Mat conj = frame_d * out.solution.mat(k) * d_inv;
        Mat corner = conj.block(0, 0, (int)q, (int)q);
        if (conj != kronecker(id_m, corner))
            throw InternalError("demote_matrix_algebra: solution is not in commutant form");
        corners.push_back(std::move(corner));
    }
    MatTuple candidate(f, (int)q, std::move(corners));
    return verify_outcome(pres_a, a, candidate, eps, std::move(diag));
}

}  // namespace rankstab
