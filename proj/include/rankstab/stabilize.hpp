#pragma once

#include <functional>

#include "rankstab/compress.hpp"

namespace rankstab {

/// Result of a stabilizer run. Construction goes through verify_outcome, so a
/// returned outcome always has verified = true with defect exactly 0;
/// failures surface as NotStabilizedError instead.
struct StabilizeOutcome {
    MatTuple solution;
    std::vector<long> distances;  // per-generator hat distance to the input
    bool verified = false;
    std::map<std::string, std::string> diagnostics;
};

/// Callable contract shared by all stabilizer compositions:
/// (presentation, approximate tuple, eps) -> verified outcome or throw.
using ExactSolver =
    std::function<StabilizeOutcome(const Presentation&, const MatTuple&, const mpq_class&)>;

/// Measures distances and exactness of `solution` against `input`; returns a
/// verified outcome or throws NotStabilizedError carrying the diagnostics.
StabilizeOutcome verify_outcome(const Presentation& p, const MatTuple& input,
                                const MatTuple& solution, const mpq_class& eps,
                                std::map<std::string, std::string> diagnostics);

/// Finite-dimensional repair: compresses onto an invariant subspace and
/// pads with reference blocks. P must present the algebra with spanning
/// generators; m bounds the rewriting degree; C is any exact solution (the
/// reference block used for padding); eps is the target approximation level.
StabilizeOutcome stabilize_findim(const Presentation& p, long m, const MatTuple& c,
                                  const MatTuple& a, const mpq_class& eps);

struct FindimAttempt {
    bool ok = false;
    std::string reason;
    StabilizeOutcome outcome;  // meaningful only when ok
    std::map<std::string, std::string> diagnostics;
};

/// Non-throwing variant used by sweeps and searches.
FindimAttempt stabilize_findim_attempt(const Presentation& p, long m, const MatTuple& c,
                                       const MatTuple& a, const mpq_class& eps);

/// Wraps stabilize_findim into an ExactSolver with fixed degree bound and
/// reference solution.
ExactSolver make_findim_solver(long m, MatTuple c);

struct ZeroProductResult {
    Mat b1, b2;
    long moved_rank = 0;  // rank(B1 - A1)
};

/// Repairs (A1, A2) into an exact zero-product pair: B1*B2 = 0, B2 = A2,
/// rank(B1 - A1) <= rank(A1*A2).
ZeroProductResult stabilize_zero_product(const Mat& a1, const Mat& a2);

/// Nearest idempotent in the rank metric: E^2 = E and
/// rank(E - C) <= rank(C^2 - C).
Mat round_idempotent(const Mat& c);

struct SplitIdempotentResult {
    Mat d;        // invertible, D E D^-1 = Id_r + 0
    long r = 0;   // rank of E
    Mat m_corner; // r x r corner block of D M D^-1
    long distance = 0;  // rank(M - D^-1 (M_corner + 0) D)
};

/// Simultaneous block form of an exact idempotent and an almost-compatible M.
SplitIdempotentResult split_idempotent_block(const Mat& e, const Mat& m);

struct RoundUnitsResult {
    long q = 0;
    Mat d;        // invertible, D E_ij D^-1 = e_ij (x) Id_q
    Mat a_corner; // q x q
    Mat c;        // n' x n', commutant-form replacement for A
    long distance = 0;  // hat_dist(A, C)
    long lambda = 0;    // max commutator hat-rank
    long size_gap = 0;  // |n' - n|
};

/// Commutant rounding: given exact matrix units E_ij (m^2 of them, size n')
/// and any A (size n), produces C = D^-1 (Id_m (x) A_corner) D with
/// hat_dist(A, C) <= m^2 (lambda + 2|n'-n|).
RoundUnitsResult round_matrix_units(const std::vector<Mat>& units, const Mat& a);

struct RoundInvertibleResult {
    Mat u;             // invertible, rank(U - A) <= n - rank(A)
    long ab_defect = 0;  // rank(A*B - Id), the measured quality
};

/// Extends A from a complement of its kernel to an invertible matrix; B is an
/// approximate inverse used only to measure quality.
RoundInvertibleResult round_invertible(const Mat& a, const Mat& b);
Mat round_invertible(const Mat& a);

/// Presentation transport: moves an approximate solution of dst through caller-supplied
/// isomorphism data (x_i -> g[i](dst gens), y_j -> f[j](src gens)), solves in
/// src, and maps back. Correctness is verified a-posteriori.
StabilizeOutcome transport_solution(const Presentation& src, const Presentation& dst,
                                    const std::vector<NcPoly>& g, const std::vector<NcPoly>& f,
                                    const ExactSolver& solver, const MatTuple& a,
                                    const mpq_class& eps);

/// Group-algebra stabilizer: rounds the 2d-tuple for the group-algebra
/// presentation to invertible pairs, delegates, returns (V, V^-1).
StabilizeOutcome stabilize_group_algebra(const Presentation& fg_pres,
                                         const ExactSolver& solver_grp, const MatTuple& a,
                                         const mpq_class& eps);

/// Converse direction: stabilizes an invertible tuple against the group
/// relators using a solver for the full group-algebra presentation.
StabilizeOutcome stabilize_group_from_algebra(const Presentation& fg_pres,
                                              const ExactSolver& solver_alg, const MatTuple& a,
                                              const mpq_class& eps);

struct BezoutPair {
    long k = 0, kprime = 0, gcd = 0;  // k*g - k'*g' = gcd
};

/// Minimal nonnegative (k, k') with k*g - k'*g' = gcd(g, g').
BezoutPair compute_bezout(long g, long gprime);

/// Free-product assembly: pads two component exact solutions to a common
/// size using exact representations of sizes k*g and k'*g'. Returns the
/// combined exact tuple for the free-product presentation of pres_a * pres_b
/// (all relators re-verified).
MatTuple stabilize_free_product(const Presentation& pres_a, const Presentation& pres_b,
                                const MatTuple& sol_a, const MatTuple& sol_b,
                                const MatTuple& rep_a, const MatTuple& rep_b, long g,
                                long gprime);

/// Direct-product stabilizer: stabilizes a tuple for the product presentation
/// (components ordered x..., y..., e1, e2) with component solvers.
StabilizeOutcome stabilize_direct_product(const Presentation& pres_a, const Presentation& pres_b,
                                          const ExactSolver& solver_a, const ExactSolver& solver_b,
                                          const MatTuple& t, const mpq_class& eps);

/// Matrix-algebra stabilizer: stabilizes a tuple for the M_m(A) presentation
/// (components ordered x..., then m^2 unit images row-major).
StabilizeOutcome stabilize_matrix_algebra(const Presentation& pres_a, int m,
                                          const ExactSolver& solver_a, const MatTuple& t,
                                          const mpq_class& eps);

/// Converse direction: stabilizes a tuple for A using a solver for M_m(A).
StabilizeOutcome demote_matrix_algebra(const Presentation& pres_a, int m,
                                       const ExactSolver& solver_m, const MatTuple& a,
                                       const mpq_class& eps);

}  // namespace rankstab
