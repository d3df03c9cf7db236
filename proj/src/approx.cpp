#include "rankstab/approx.hpp"

#include <algorithm>

namespace rankstab {

DefectReport defect(const Presentation& p, const MatTuple& t) {
    if (p.arity() != t.arity()) throw DimensionError("defect: presentation/tuple arity mismatch");
    p.field().require_same(t.field());
    DefectReport rep;
    rep.n = t.n();
    for (int j = 0; j < (int)p.relators().size(); ++j) {
        mpq_class r = normalized_rank(eval(p.relators()[j], t));
        rep.per_relator.emplace_back(j, r);
        rep.max_defect = std::max(rep.max_defect, r);
    }
    return rep;
}

EpsApproxReport is_eps_approx(const MatTuple& a, const MatTuple& b, const mpq_class& eps) {
    if (a.arity() != b.arity()) throw DimensionError("eps-approximation: arity mismatch");
    a.field().require_same(b.field());
    EpsApproxReport rep;
    rep.ok = true;
    mpq_class threshold = eps * a.n();
    for (int i = 0; i < a.arity(); ++i) {
        long d = hat_dist(a.mat(i), b.mat(i));
        rep.distances.push_back(d);
        if (!(mpq_class(d) < threshold)) rep.ok = false;
    }
    return rep;
}

PolyrankBoundReport check_polyrank_bound(const NcPoly& f, const MatTuple& a, const MatTuple& b,
                                         long lambda) {
    if (a.arity() != b.arity() || f.arity() != a.arity())
        throw DimensionError("polyrank bound: arity mismatch");
    a.field().require_same(b.field());
    PolyrankBoundReport rep;
    rep.precondition_ok = true;
    for (int i = 0; i < a.arity(); ++i) {
        long d = hat_dist(a.mat(i), b.mat(i));
        rep.max_input_dist = std::max(rep.max_input_dist, d);
        if (!(d < lambda)) rep.precondition_ok = false;
    }
    rep.lhs_rank = hat_dist(eval(f, a), eval(f, b));
    long size_gap = std::labs((long)a.n() - (long)b.n());
    // m may be any upper bound on monomial lengths; clamp to 1 so the bound
    // stays meaningful for constant polynomials
    rep.refined_bound = f.monomial_count() * std::max(1L, f.max_degree()) * lambda;
    rep.bound = rep.refined_bound + size_gap;
    rep.bound_holds = rep.lhs_rank < rep.bound;
    rep.refined_applicable = !f.has_constant_term();
    if (rep.refined_applicable) rep.refined_holds = rep.lhs_rank < rep.refined_bound;
    return rep;
}

}  // namespace rankstab
