#pragma once

#include "rankstab/freealg.hpp"

namespace rankstab {

/// Per-relator normalized ranks of a tuple against a presentation.
struct DefectReport {
    long n = 0;
    mpq_class max_defect = 0;
    std::vector<std::pair<int, mpq_class>> per_relator;
};

DefectReport defect(const Presentation& p, const MatTuple& t);

struct EpsApproxReport {
    bool ok = false;
    std::vector<long> distances;  // per-generator hat distances
    explicit operator bool() const { return ok; }
};

/// True iff hat_dist(A_i, B_i) < eps * n for every i (strict).
EpsApproxReport is_eps_approx(const MatTuple& a, const MatTuple& b, const mpq_class& eps);

struct PolyrankBoundReport {
    bool precondition_ok = false;
    long max_input_dist = 0;
    long lhs_rank = 0;
    long bound = 0;           // l*m*lambda + |n - n'|
    bool bound_holds = false;
    bool refined_applicable = false;  // zero constant term
    long refined_bound = 0;           // l*m*lambda
    bool refined_holds = false;
    explicit operator bool() const { return precondition_ok && bound_holds; }
};

/// Checks Rank(f^(A) - f^(B)) < l*m*lambda + |n - n'| given per-generator hat
/// distances below lambda; reports the zero-constant-term refinement too.
PolyrankBoundReport check_polyrank_bound(const NcPoly& f, const MatTuple& a, const MatTuple& b,
                                         long lambda);

}  // namespace rankstab
