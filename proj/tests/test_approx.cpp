#include <doctest.h>

#include "helpers.hpp"
#include "rankstab/witness.hpp"

using namespace rankstab;
using namespace rankstab::testing;

namespace {

MatTuple random_tuple(Rng& rng, const FieldSpec& f, int arity, int n) {
    std::vector<Mat> mats;
    for (int i = 0; i < arity; ++i) mats.push_back(random_mat(rng, f, n, n));
    return MatTuple(f, n, std::move(mats));
}

}  // namespace

TEST_CASE("defect fixtures") {
    DefectReport weyl2 = defect(weyl_presentation(), weyl_witness(2));
    CHECK(weyl2.max_defect == mpq_class(1, 2));
    CHECK(weyl2.per_relator.size() == 1);
    CHECK(weyl2.n == 2);

    // an exact representation has defect zero
    Presentation z2 = group_algebra_presentation({"a", "b"}, {{1, 2, -1, -2}});
    Mat a = diag_q({2, 3}), b = diag_q({5, 7});
    MatTuple rep(Q(), 2, {a, b, inverse(a), inverse(b)});
    CHECK(defect(z2, rep).max_defect == 0);

    // k=2, n=1 size-3 unit-like tuple against the 17-relator presentation
    DefectReport msw = defect(matrix_units_presentation(2), matrix_size_witness(2, 1));
    CHECK(msw.max_defect == mpq_class(1, 3));
    CHECK(msw.per_relator.size() == 17);
}

TEST_CASE("defect requires matching arity and field") {
    MatTuple t(Q(), 2, {Mat::identity(Q(), 2)});
    CHECK_THROWS_AS(defect(weyl_presentation(), t), DimensionError);
}

TEST_CASE("defect is invariant under simultaneous conjugation") {
    Rng rng(31);
    Presentation pres = weyl_presentation();
    for (int t = 0; t < 10; ++t) {
        int n = (int)rng.int_in(2, 6);
        MatTuple tup = random_tuple(rng, Q(), 2, n);
        MatTuple conj = conjugate_tuple(tup, random_invertible(rng, Q(), n));
        DefectReport r1 = defect(pres, tup), r2 = defect(pres, conj);
        CHECK(r1.max_defect == r2.max_defect);
        for (std::size_t i = 0; i < r1.per_relator.size(); ++i)
            CHECK(r1.per_relator[i].second == r2.per_relator[i].second);
    }
}

TEST_CASE("defect of a direct sum is at most the max of the component defects") {
    Rng rng(37);
    Presentation pres = weyl_presentation();
    for (int t = 0; t < 10; ++t) {
        int n1 = (int)rng.int_in(1, 4), n2 = (int)rng.int_in(1, 4);
        MatTuple t1 = random_tuple(rng, Q(), 2, n1);
        MatTuple t2 = random_tuple(rng, Q(), 2, n2);
        MatTuple sum(Q(), n1 + n2,
                     {direct_sum(t1.mat(0), t2.mat(0)), direct_sum(t1.mat(1), t2.mat(1))});
        mpq_class d1 = defect(pres, t1).max_defect;
        mpq_class d2 = defect(pres, t2).max_defect;
        CHECK(defect(pres, sum).max_defect <= std::max(d1, d2));
    }
    // equality when the components carry equal defect: two copies of a witness
    MatTuple w = weyl_witness(4);
    MatTuple doubled(Q(), 8,
                     {direct_sum(w.mat(0), w.mat(0)), direct_sum(w.mat(1), w.mat(1))});
    CHECK(defect(pres, doubled).max_defect == mpq_class(1, 4));
}

TEST_CASE("small-n degeneracy: defect below 1/n forces exact vanishing") {
    Rng rng(41);
    Presentation pres = weyl_presentation();
    int hits = 0;
    for (int t = 0; t < 30; ++t) {
        int n = (int)rng.int_in(1, 5);
        MatTuple tup = random_tuple(rng, Q(), 2, n);
        DefectReport rep = defect(pres, tup);
        if (rep.max_defect < mpq_class(1, n)) {
            ++hits;
            for (const auto& [idx, val] : rep.per_relator) CHECK(val == 0);
        }
    }
    // exact representations are guaranteed hits
    Presentation sq = square_zero_presentation(Q());
    DefectReport rep = defect(sq, square_zero_solution(Q(), 2, 1));
    CHECK(rep.max_defect < mpq_class(1, 5));
    CHECK(rep.max_defect == 0);
}

TEST_CASE("eps-approximation fixtures pin strictness") {
    MatTuple t(Q(), 3, {Mat::identity(Q(), 3), diag_q({1, 2, 3})});
    CHECK(is_eps_approx(t, t, mpq_class(1, 1000)).ok);

    int n = 4;
    MatTuple id_n(Q(), n, {Mat::identity(Q(), n)});
    MatTuple id_n1(Q(), n + 1, {Mat::identity(Q(), n + 1)});
    EpsApproxReport r = is_eps_approx(id_n, id_n1, mpq_class(2, n));
    CHECK(r.ok);
    CHECK(r.distances == std::vector<long>{1});

    MatTuple zero_n(Q(), n, {Mat::zeros(Q(), n, n)});
    CHECK_FALSE(is_eps_approx(id_n, zero_n, 1).ok);  // distance n is not < n
}

TEST_CASE("polyrank bound fixtures") {
    FieldSpec f = Q();
    // constant polynomial, identical tuples
    NcPoly c = NcPoly::constant(f, 1, Scalar::from_integer(f, 5));
    MatTuple t(f, 3, {diag_q({1, 2, 3})});
    PolyrankBoundReport r = check_polyrank_bound(c, t, t, 1);
    CHECK(r.precondition_ok);
    CHECK(r.bound_holds);
    CHECK(r.lhs_rank == 0);

    // f = x1*x2 under rank-one perturbations: bound 2*lambda
    Rng rng(43);
    NcPoly x1x2 = NcPoly::monomial(f, 2, Scalar::one(f), {0, 1});
    for (int trial = 0; trial < 20; ++trial) {
        int n = (int)rng.int_in(2, 6);
        MatTuple a(f, n, {random_mat(rng, f, n, n), random_mat(rng, f, n, n)});
        MatTuple b(f, n,
                   {a.mat(0) + random_rank_one(rng, f, n), a.mat(1) + random_rank_one(rng, f, n)});
        PolyrankBoundReport rep = check_polyrank_bound(x1x2, a, b, 2);
        CHECK(rep.precondition_ok);
        CHECK(rep.bound == 2 * 2);
        CHECK(rep.bound_holds);
    }

    // zero constant term with different sizes: the |n-n'| summand is redundant
    for (int trial = 0; trial < 20; ++trial) {
        int n = (int)rng.int_in(2, 5);
        int np = n + (int)rng.int_in(1, 3);
        MatTuple a(f, n, {random_mat(rng, f, n, n), random_mat(rng, f, n, n)});
        MatTuple b(f, np,
                   {hat_pad(a.mat(0), np) + random_rank_one(rng, f, np),
                    hat_pad(a.mat(1), np) + random_rank_one(rng, f, np)});
        NcPoly p = x1x2 + NcPoly::generator(f, 2, 0).scaled(rng.scalar(f));
        PolyrankBoundReport rep = check_polyrank_bound(p, a, b, 2);
        CHECK(rep.precondition_ok);
        CHECK(rep.refined_applicable);
        CHECK(rep.refined_holds);
    }

    // precondition violations are reported distinctly from bound violations
    MatTuple far(f, 3, {Mat::zeros(f, 3, 3)});
    MatTuple id3(f, 3, {Mat::identity(f, 3)});
    PolyrankBoundReport bad = check_polyrank_bound(NcPoly::generator(f, 1, 0), id3, far, 2);
    CHECK_FALSE(bad.precondition_ok);
    CHECK(bad.max_input_dist == 3);
}
