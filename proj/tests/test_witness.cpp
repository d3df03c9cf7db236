#include <doctest.h>

#include "helpers.hpp"
#include "rankstab/witness.hpp"

using namespace rankstab;
using namespace rankstab::testing;

TEST_CASE("weyl witness fixtures") {
    MatTuple w2 = weyl_witness(2);
    CHECK(w2.mat(0) == mq({{0, 1}, {0, 0}}));
    CHECK(w2.mat(1) == mq({{0, 0}, {1, 0}}));
    CHECK(eval(weyl_presentation().relators()[0], w2) == diag_q({0, -2}));
    CHECK(defect(weyl_presentation(), w2).max_defect == mpq_class(1, 2));
    CHECK(defect(weyl_presentation(), weyl_witness(3)).max_defect == mpq_class(1, 3));
    CHECK_THROWS_AS(weyl_witness(1), PreconditionError);
}

TEST_CASE("weyl commutator is diag(1,...,1,-(n-1)) and defect is 1/n") {
    for (long n = 2; n <= 20; ++n) {
        MatTuple w = weyl_witness(n);
        Mat comm = w.mat(0) * w.mat(1) - w.mat(1) * w.mat(0);
        std::vector<long> expect((std::size_t)n, 1);
        expect.back() = -(n - 1);
        CHECK(comm == diag_q(expect));
        CHECK(defect(weyl_presentation(), w).max_defect == mpq_class(1, n));
    }
}

TEST_CASE("matrix-size witness fixtures") {
    // the k=2, n=1 tuple: three-dimensional unit-like matrices, defect 1/3
    MatTuple t = matrix_size_witness(2, 1);
    CHECK(t.n() == 3);
    CHECK(t.arity() == 4);
    DefectReport rep = defect(matrix_units_presentation(2), t);
    CHECK(rep.max_defect == mpq_class(1, 3));

    for (int k : {2, 3}) {
        Presentation pres = matrix_units_presentation(k);
        for (long n = 1; n <= 4; ++n) {
            mpq_class d = defect(pres, matrix_size_witness(k, n)).max_defect;
            CHECK(d <= mpq_class(1, n * k + 1));
            CHECK(d == mpq_class(1, n * k + 1));  // regression-pinned exact value
        }
    }
    CHECK_THROWS_AS(matrix_size_witness(1, 1), PreconditionError);
}

TEST_CASE("folner witness fixtures") {
    MatTuple t2 = folner_witness(2);
    CHECK(t2.n() == 6);
    CHECK(folner_dimension(2) == 6);
    DefectReport rep = defect(folner_presentation(), t2);
    CHECK(rep.max_defect == mpq_class(1, 3));

    // monotone decay spot-check
    mpq_class w4 = defect(folner_presentation(), folner_witness(4)).max_defect;
    mpq_class w10 = defect(folner_presentation(), folner_witness(10)).max_defect;
    CHECK(w10 < w4);
}

TEST_CASE("folner witness: S^2-interior lies inside every relator kernel") {
    Presentation pres = folner_presentation();
    for (long i : {2, 3, 5}) {
        MatTuple t = folner_witness(i);
        long interior_dim = folner_dimension(i - 2);  // monomials of degree <= i-2
        Mat interior(Q(), (int)t.n(), (int)interior_dim);
        for (long j = 0; j < interior_dim; ++j) interior.set((int)j, (int)j, Scalar::one(Q()));
        for (const NcPoly& rel : pres.relators()) CHECK((eval(rel, t) * interior).is_zero());
    }
}

TEST_CASE("folner witness: generators act as multiplication on the S-interior") {
    // at i = 2 the action on 1, x, y is pinned by the rewriting y x = x y - 1
    MatTuple t = folner_witness(2);
    const Mat& ax = t.mat(0);
    const Mat& ay = t.mat(1);
    const Mat& at = t.mat(2);
    // basis order: 1, x, y, x^2, xy, y^2
    Mat one = col_q({1, 0, 0, 0, 0, 0});
    Mat x = col_q({0, 1, 0, 0, 0, 0});
    Mat y = col_q({0, 0, 1, 0, 0, 0});
    CHECK(ax * one == x);
    CHECK(ay * x == col_q({-1, 0, 0, 0, 1, 0}));  // y*x = xy - 1
    CHECK(at * y == y);
    CHECK((ax * col_q({0, 0, 0, 1, 0, 0})).is_zero());  // top degree is annihilated
}

TEST_CASE("vacuous certifier fixtures") {
    FieldSpec f = Q();
    MatTuple ids(f, 4, {Mat::identity(f, 4), Mat::identity(f, 4), Mat::identity(f, 4)});
    CHECK(vacuous_certify(ids) == VacuousVerdict::ImplicationHolds);

    MatTuple zeros(f, 4,
                   {Mat::zeros(f, 4, 4), Mat::identity(f, 4), Mat::identity(f, 4)});
    CHECK(vacuous_certify(zeros) == VacuousVerdict::NotApproximate);

    Rng rng(59);
    for (int t = 0; t < 20; ++t) {
        int n = (int)rng.int_in(4, 8);
        Mat x = random_invertible(rng, f, n);
        Mat y = random_invertible(rng, f, n);
        Mat z = inverse(x * y);
        if (rng.below(2) == 0) {
            Mat noise = random_rank_one(rng, f, n);
            z = z + noise;  // keeps rank(XYZ - Id) <= n/4 for n >= 8... measured anyway
        }
        MatTuple tup(f, n, {x, y, z});
        mpq_class first = normalized_rank(x * y * z - Mat::identity(f, n));
        VacuousVerdict v = vacuous_certify(tup);
        if (first < mpq_class(1, 4))
            CHECK(v == VacuousVerdict::ImplicationHolds);
        else
            CHECK(v == VacuousVerdict::NotApproximate);
    }
}

TEST_CASE("folner witness: the monomial interior matches an exact membership test") {
    // independent oracle: build the multiplication operators into the larger
    // degree-(i+1) space and intersect the kernels of the outside projections
    FieldSpec f = Q();
    auto offset = [](long deg) { return deg * (deg + 1) / 2; };
    for (long i : {2, 3, 4}) {
        long n_i = folner_dimension(i);
        long n_big = folner_dimension(i + 1);
        Mat mul_x(f, (int)n_big, (int)n_i), mul_y(f, (int)n_big, (int)n_i);
        for (long deg = 0; deg <= i; ++deg)
            for (long b = 0; b <= deg; ++b) {
                long a = deg - b;
                long col = offset(deg) + b;
                mul_x.set((int)(offset(deg + 1) + b), (int)col, Scalar::one(f));
                mul_y.set((int)(offset(deg + 1) + b + 1), (int)col, Scalar::one(f));
                if (a > 0)
                    mul_y.set((int)(offset(deg - 1) + b), (int)col,
                              Scalar::from_integer(f, -a));
            }
        // rows selecting the degree-(i+1) coordinates
        Mat outside(f, (int)(n_big - n_i), (int)n_big);
        for (long r = 0; r < n_big - n_i; ++r)
            outside.set((int)r, (int)(n_i + r), Scalar::one(f));
        Subspace interior =
            intersect(kernel(outside * mul_x), kernel(outside * mul_y));
        // multiplication by t is the identity in the quotient: no constraint
        long expect = folner_dimension(i - 1);
        CHECK(interior.dim() == expect);
        Mat expected_basis(f, (int)n_i, (int)expect);
        for (long j = 0; j < expect; ++j) expected_basis.set((int)j, (int)j, Scalar::one(f));
        CHECK(interior.basis() == expected_basis);
    }
}
