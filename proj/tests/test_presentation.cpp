#include <doctest.h>

#include "helpers.hpp"
#include "rankstab/witness.hpp"

using namespace rankstab;
using namespace rankstab::testing;

TEST_CASE("parser: weyl presentation") {
    Presentation p = parse_presentation("algebra Q; gens x,y; rels x*y - y*x - 1;");
    CHECK(p == weyl_presentation());
    CHECK(p.arity() == 2);
    CHECK(p.relators().size() == 1);
}

TEST_CASE("parser: free algebra and empty clauses") {
    Presentation p = parse_presentation("algebra Q; gens x; rels ;");
    CHECK(p.arity() == 1);
    CHECK(p.relators().empty());

    Presentation none = parse_presentation("algebra Q; gens ; rels ;");
    CHECK(none.arity() == 0);
}

TEST_CASE("parser: sl2 as a lie presentation, checked at the defining representation") {
    Presentation sl2 =
        parse_presentation("lie Q; gens e,f,h; rels [e,f]-h, [h,e]-2*e, [h,f]+2*f;");
    CHECK(sl2.flavor() == Flavor::Lie);
    CHECK(sl2.lie_relators().size() == 3);

    MatTuple rep(Q(), 2,
                 {mq({{0, 1}, {0, 0}}), mq({{0, 0}, {1, 0}}), mq({{1, 0}, {0, -1}})});
    Presentation env = enveloping_presentation(sl2);
    CHECK(env.flavor() == Flavor::Associative);
    for (const NcPoly& rel : env.relators()) CHECK(eval(rel, rep).is_zero());
}

TEST_CASE("parser: scalar literal k denotes k times the identity") {
    Presentation p = parse_presentation("algebra Q; gens x; rels 3;");
    MatTuple t(Q(), 2, {mq({{5, 0}, {0, 7}})});
    CHECK(eval(p.relators()[0], t) == diag_q({3, 3}));

    Presentation fp = parse_presentation("algebra Fp(5); gens x; rels x*x - 7;");
    CHECK(fp.relators()[0].constant_term() == Scalar::from_integer(FieldSpec::prime_field(5), -7));
}

TEST_CASE("parser: rational scalars, powers, parens and brackets in associative mode") {
    Presentation p =
        parse_presentation("algebra Q; gens x, y; rels 1/2*(x + y)^2 - [x, y] - 3/4;");
    CHECK(p.relators().size() == 1);
    NcPoly x = NcPoly::generator(Q(), 2, 0), y = NcPoly::generator(Q(), 2, 1);
    NcPoly expected = ((x + y) * (x + y)).scaled(Scalar::parse(Q(), "1/2")) - lie_bracket(x, y) -
                      NcPoly::constant(Q(), 2, Scalar::parse(Q(), "3/4"));
    CHECK(p.relators()[0] == expected);
}

TEST_CASE("parser errors carry positions") {
    CHECK_THROWS_AS(parse_presentation("algebra Q; gens x,y; rels x*z;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("algebra Q gens x; rels ;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("algebra R; gens x; rels ;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("lie Q; gens x,y; rels [x,y] - 1;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("lie Q; gens x,y; rels x*y;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("algebra Fp(6); gens x; rels ;"), ParseError);
    CHECK_THROWS_AS(parse_presentation("algebra Q; gens x, x; rels ;"), ParseError);

    try {
        parse_presentation("algebra Q; gens x,y;\nrels x*y - y*w;");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 14);
    }
}

TEST_CASE("pretty-print round trip") {
    std::vector<std::string> sources = {
        "algebra Q; gens x, y; rels x*y - y*x - 1;",
        "algebra Q; gens x; rels ;",
        "algebra Fp(101); gens a, b; rels a*b - 7, b^2;",
        "lie Q; gens e, f, h; rels [e,f]-h, [h,e]-2*e, [h,f]+2*f;",
    };
    for (const std::string& src : sources) {
        Presentation p = parse_presentation(src);
        Presentation q = parse_presentation(p.pretty());
        CHECK(p == q);
        CHECK(q.pretty() == p.pretty());  // printing is idempotent
    }
    CHECK(parse_presentation("algebra Q; gens x, y; rels x*y - y*x - 1;").pretty() ==
          "algebra Q;\ngens x, y;\nrels x*y - y*x - 1;\n");
    CHECK(parse_presentation("lie Q; gens e, f; rels [e,f]-e;").pretty() ==
          "lie Q;\ngens e, f;\nrels [e,f] - e;\n");
}

TEST_CASE("group algebra presentation fixtures") {
    // Z = <x | >: two generators and the two inverse relators
    Presentation z = group_algebra_presentation({"x"}, {});
    CHECK(z.arity() == 2);
    CHECK(z.generator_names() == std::vector<std::string>{"x", "x'"});
    REQUIRE(z.relators().size() == 2);
    NcPoly one = NcPoly::constant(Q(), 2, Scalar::one(Q()));
    CHECK(z.relators()[0] == NcPoly::monomial(Q(), 2, Scalar::one(Q()), {0, 1}) - one);
    CHECK(z.relators()[1] == NcPoly::monomial(Q(), 2, Scalar::one(Q()), {1, 0}) - one);

    // Z^2 = <a, b | a b a^-1 b^-1>
    Presentation z2 = group_algebra_presentation({"a", "b"}, {{1, 2, -1, -2}});
    CHECK(z2.arity() == 4);
    REQUIRE(z2.relators().size() == 5);
    NcPoly one4 = NcPoly::constant(Q(), 4, Scalar::one(Q()));
    CHECK(z2.relators()[0] ==
          NcPoly::monomial(Q(), 4, Scalar::one(Q()), {0, 1, 2, 3}) - one4);

    // trivial group <x | x>
    Presentation triv = group_algebra_presentation({"x"}, {{1}});
    REQUIRE(triv.relators().size() == 3);
    CHECK(triv.relators()[0] == NcPoly::generator(Q(), 2, 0) - one);

    // an exact representation of F[Z^2] satisfies everything
    Mat a = diag_q({2, 3}), b = diag_q({5, 7});
    MatTuple rep(Q(), 2, {a, b, inverse(a), inverse(b)});
    for (const NcPoly& rel : z2.relators()) CHECK(eval(rel, rep).is_zero());
}

TEST_CASE("direct product presentation fixtures") {
    FieldSpec f = Q();
    NcPoly xr = NcPoly::generator(f, 1, 0);
    Presentation fx = Presentation::associative(f, {"x"}, {xr});  // F[x]/(x)
    Presentation fy = Presentation::associative(f, {"y"}, {NcPoly::generator(f, 1, 0)});
    Presentation prod = direct_product_presentation(fx, fy);
    CHECK(prod.arity() == 4);
    CHECK(prod.generator_names() == std::vector<std::string>{"x", "y", "e1", "e2"});
    // e1*P, e2*Q, four unit-compatibility relators, e1+e2-1 and two idempotents
    CHECK(prod.relators().size() == 9);

    Presentation degenerate =
        direct_product_presentation(fx, Presentation::associative(f, {}, {}));
    CHECK(degenerate.arity() == 3);
    CHECK(degenerate.relators().size() == 1 + 2 + 3);

    // assembled exact representation: x^2 relator left, y^2-y right
    Presentation px = square_zero_presentation(f);
    NcPoly y = NcPoly::generator(f, 1, 0);
    Presentation py = Presentation::associative(f, {"y"}, {y * y - y});
    Presentation prod2 = direct_product_presentation(px, py);
    Mat x_img = direct_sum(jordan2_tuple(f).mat(0), Mat::zeros(f, 2, 2));
    Mat y_img = direct_sum(Mat::zeros(f, 2, 2), diag_q({1, 0}));
    Mat e1 = direct_sum(Mat::identity(f, 2), Mat::zeros(f, 2, 2));
    Mat e2 = direct_sum(Mat::zeros(f, 2, 2), Mat::identity(f, 2));
    MatTuple rep(f, 4, {x_img, y_img, e1, e2});
    for (const NcPoly& rel : prod2.relators()) CHECK(eval(rel, rep).is_zero());
}

TEST_CASE("matrix algebra presentation fixtures") {
    FieldSpec f = Q();
    Presentation base = square_zero_presentation(f);

    Presentation m1 = matrix_algebra_presentation(base, 1);
    CHECK(m1.arity() == 2);
    CHECK(m1.relators().size() == 1 + 1 + 1 + 2);  // r + m^4 + sum + 2*d*m^2

    Presentation m2_pure = matrix_units_presentation(2);
    CHECK(m2_pure.arity() == 4);
    CHECK(m2_pure.relators().size() == 17);

    Presentation m2 = matrix_algebra_presentation(base, 2);
    CHECK(m2.relators().size() == 1 + 16 + 1 + 8);

    // exact representation: x -> Id_2 (x) J, units -> e_ij (x) Id_2
    MatTuple jordan = jordan2_tuple(f);
    MatTuple units = unit_tuple(f, 2, 2);
    std::vector<Mat> mats{kronecker(Mat::identity(f, 2), jordan.mat(0))};
    for (const Mat& u : units.mats()) mats.push_back(u);
    MatTuple rep(f, 4, std::move(mats));
    for (const NcPoly& rel : m2.relators()) CHECK(eval(rel, rep).is_zero());
}

TEST_CASE("free product presentation fixtures") {
    FieldSpec f = Q();
    Presentation free1 = Presentation::associative(f, {"x"}, {});
    Presentation free2 = Presentation::associative(f, {"y"}, {});
    Presentation ff = free_product_presentation(free1, free2);
    CHECK(ff.arity() == 2);
    CHECK(ff.relators().empty());

    Presentation weyl = weyl_presentation();
    Presentation ww = free_product_presentation(weyl, weyl);
    CHECK(ww.arity() == 4);
    CHECK(ww.relators().size() == 2);
    CHECK(ww.generator_names() == std::vector<std::string>{"x", "y", "q_x", "q_y"});

    // mixed case evaluates to zero at a juxtaposed exact representation
    Presentation px = square_zero_presentation(f);
    NcPoly y = NcPoly::generator(f, 1, 0);
    Presentation py = Presentation::associative(f, {"y"}, {y * y - y});
    Presentation mix = free_product_presentation(px, py);
    Mat x_img = direct_sum(jordan2_tuple(f).mat(0), Mat::zeros(f, 1, 1));
    Mat y_img = diag_q({1, 0, 0});
    MatTuple rep(f, 3, {x_img, y_img});
    for (const NcPoly& rel : mix.relators()) CHECK(eval(rel, rep).is_zero());
}

TEST_CASE("direct product relator shapes, printed") {
    FieldSpec f = Q();
    Presentation px = square_zero_presentation(f);
    NcPoly y = NcPoly::generator(f, 1, 0);
    Presentation py = Presentation::associative(f, {"y"}, {y * y - y});
    Presentation prod = direct_product_presentation(px, py);
    const auto& names = prod.generator_names();
    std::vector<std::string> shapes;
    for (const NcPoly& rel : prod.relators()) shapes.push_back(rel.pretty(names));
    std::vector<std::string> expected = {
        "e1*x*x",
        "e2*y*y - e2*y",
        "e1*x - x",
        "x*e1 - x",
        "e2*y - y",
        "y*e2 - y",
        "e1 + e2 - 1",
        "e1*e1 - e1",
        "e2*e2 - e2",
    };
    CHECK(shapes == expected);

    Presentation sl2 = parse_presentation("lie Q; gens e,f,h; rels [e,f]-h;");
    CHECK_THROWS_AS(direct_product_presentation(sl2, sl2), Error);
    CHECK_THROWS_AS(matrix_algebra_presentation(sl2, 2), Error);
    CHECK_THROWS_AS(free_product_presentation(sl2, sl2), Error);
}
