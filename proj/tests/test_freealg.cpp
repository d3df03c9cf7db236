#include <doctest.h>

#include "helpers.hpp"
#include "rankstab/witness.hpp"

using namespace rankstab;
using namespace rankstab::testing;

namespace {

NcPoly weyl_relator() {
    FieldSpec f = Q();
    return NcPoly::monomial(f, 2, Scalar::one(f), {0, 1}) -
           NcPoly::monomial(f, 2, Scalar::one(f), {1, 0}) - NcPoly::constant(f, 2, Scalar::one(f));
}

MatTuple random_tuple(Rng& rng, const FieldSpec& f, int arity, int n) {
    std::vector<Mat> mats;
    for (int i = 0; i < arity; ++i) mats.push_back(random_mat(rng, f, n, n));
    return MatTuple(f, n, std::move(mats));
}

}  // namespace

TEST_CASE("eval fixtures") {
    MatTuple w = weyl_witness(2);
    CHECK(eval(weyl_relator(), w) == diag_q({0, -2}));

    MatTuple any(Q(), 3, {mq({{0, 1, 0}, {0, 0, 0}, {1, 0, 2}})});
    CHECK(eval(NcPoly::constant(Q(), 1, Scalar::one(Q())), any) == Mat::identity(Q(), 3));

    MatTuple idzero(Q(), 2, {Mat::identity(Q(), 2), Mat::zeros(Q(), 2, 2)});
    NcPoly xy = NcPoly::monomial(Q(), 2, Scalar::one(Q()), {0, 1});
    CHECK(eval(xy, idzero).is_zero());

    CHECK_THROWS_AS(eval(xy, any), DimensionError);
}

TEST_CASE("monomial statistics") {
    NcPoly p = weyl_relator();
    CHECK(p.monomial_count() == 3);
    CHECK(p.max_degree() == 2);
    CHECK(p.has_constant_term());
    CHECK((p + NcPoly::constant(Q(), 2, Scalar::one(Q()))).constant_term().is_zero());
}

TEST_CASE("lie bracket expansion fixtures") {
    FieldSpec f = Q();
    NcPoly x = NcPoly::generator(f, 3, 0), y = NcPoly::generator(f, 3, 1),
           z = NcPoly::generator(f, 3, 2);
    NcPoly xy = lie_bracket(x, y);
    CHECK(xy == x * y - y * x);
    CHECK(lie_bracket(x, x).is_zero());

    NcPoly xyz = lie_bracket(lie_bracket(x, y), z);
    NcPoly expected = x * y * z - y * x * z - z * x * y + z * y * x;
    CHECK(xyz == expected);

    // the same through the pre-expansion encoding
    LiePoly lp(f, 3);
    lp.add_term(LieMono::bracket(LieMono::bracket(LieMono::leaf(0), LieMono::leaf(1)),
                                 LieMono::leaf(2)),
                Scalar::one(f));
    CHECK(lie_expand(lp) == expected);

    LiePoly self(f, 3);
    self.add_term(LieMono::bracket(LieMono::leaf(0), LieMono::leaf(0)), Scalar::one(f));
    CHECK(lie_expand(self).is_zero());
}

TEST_CASE("expanded brackets evaluate as matrix commutators") {
    Rng rng(23);
    for (FieldSpec f : {Q(), F101()}) {
        for (int t = 0; t < 10; ++t) {
            MatTuple tup = random_tuple(rng, f, 3, 3);
            LiePoly lp(f, 3);
            lp.add_term(LieMono::bracket(LieMono::bracket(LieMono::leaf(0), LieMono::leaf(1)),
                                         LieMono::leaf(2)),
                        Scalar::one(f));
            Mat via_poly = eval(lie_expand(lp), tup);
            Mat ab = tup.mat(0) * tup.mat(1) - tup.mat(1) * tup.mat(0);
            Mat direct = ab * tup.mat(2) - tup.mat(2) * ab;
            CHECK(via_poly == direct);
        }
    }
}

TEST_CASE("eval is linear and multiplicative on words") {
    Rng rng(29);
    for (FieldSpec f : {Q(), F101()}) {
        for (int t = 0; t < 10; ++t) {
            int arity = 2, n = 3;
            MatTuple tup = random_tuple(rng, f, arity, n);
            NcPoly p(f, arity), q(f, arity);
            for (int k = 0; k < 3; ++k) {
                Word w;
                for (int l = (int)rng.int_in(0, 3); l > 0; --l)
                    w.push_back((int)rng.below(arity));
                p.add_term(w, rng.scalar(f));
                Word w2;
                for (int l = (int)rng.int_in(0, 3); l > 0; --l)
                    w2.push_back((int)rng.below(arity));
                q.add_term(w2, rng.scalar(f));
            }
            Scalar c = rng.scalar(f);
            CHECK(eval(p + q, tup) == eval(p, tup) + eval(q, tup));
            CHECK(eval(p.scaled(c), tup) == eval(p, tup).scaled(c));
            CHECK(eval(p * q, tup) == eval(p, tup) * eval(q, tup));
        }
    }
}

TEST_CASE("tuple invariants") {
    CHECK_THROWS_AS(MatTuple(Q(), 2, {Mat::identity(Q(), 3)}), DimensionError);
    CHECK_THROWS_AS(MatTuple(Q(), 2, {Mat::identity(F101(), 2)}), FieldMismatchError);
    MatTuple empty_ok(Q(), 4, {});
    CHECK(empty_ok.arity() == 0);
}
