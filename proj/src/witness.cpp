#include "rankstab/witness.hpp"

namespace rankstab {

Presentation weyl_presentation() {
    FieldSpec f = FieldSpec::rationals();
    NcPoly rel = NcPoly::monomial(f, 2, Scalar::one(f), {0, 1}) -
                 NcPoly::monomial(f, 2, Scalar::one(f), {1, 0}) -
                 NcPoly::constant(f, 2, Scalar::one(f));
    return Presentation::associative(f, {"x", "y"}, {rel});
}

MatTuple weyl_witness(long n) {
    if (n < 2) throw PreconditionError("weyl_witness requires n >= 2");
    FieldSpec f = FieldSpec::rationals();
    Mat x(f, (int)n, (int)n), y(f, (int)n, (int)n);
    for (long i = 0; i + 1 < n; ++i) {
        x.set((int)i, (int)(i + 1), Scalar::one(f));
        y.set((int)(i + 1), (int)i, Scalar::from_integer(f, i + 1));
    }
    return MatTuple(f, (int)n, {x, y});
}

WitnessFamily weyl_family() {
    WitnessFamily fam;
    fam.presentation = weyl_presentation();
    fam.generator = [](long n) { return weyl_witness(n); };
    fam.defect_formula = "1/n";
    return fam;
}

Presentation matrix_units_presentation(int k, const FieldSpec& f) {
    return matrix_algebra_presentation(Presentation::associative(f, {}, {}), k);
}

MatTuple matrix_size_witness(int k, long n) {
    if (k < 2) throw PreconditionError("matrix_size_witness requires k >= 2");
    if (n < 1) throw PreconditionError("matrix_size_witness requires n >= 1");
    FieldSpec f = FieldSpec::rationals();
    Mat id_n = Mat::identity(f, (int)n);
    Mat id_1 = Mat::identity(f, 1);
    std::vector<Mat> mats;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Mat e_ij(f, k, k);
            e_ij.set(i, j, Scalar::one(f));
            mats.push_back(direct_sum(kronecker(e_ij, id_n), id_1));
        }
    return MatTuple(f, (int)(n * k + 1), std::move(mats));
}

WitnessFamily matrix_size_family(int k) {
    WitnessFamily fam;
    fam.presentation = matrix_units_presentation(k);
    fam.generator = [k](long n) { return matrix_size_witness(k, n); };
    fam.defect_formula = "<= 1/(n*k+1)";
    return fam;
}

Presentation folner_presentation() {
    FieldSpec f = FieldSpec::rationals();
    Scalar one = Scalar::one(f);
    auto mono = [&](Word w) { return NcPoly::monomial(f, 3, one, std::move(w)); };
    // generators 0=x, 1=y, 2=t
    NcPoly r1 = mono({0, 2}) - mono({2, 0});
    NcPoly r2 = mono({1, 2}) - mono({2, 1});
    NcPoly r3 = mono({0, 1}) - mono({1, 0}) - mono({2, 2});
    return Presentation::associative(f, {"x", "y", "t"}, {r1, r2, r3});
}

long folner_dimension(long i) { return (i + 1) * (i + 2) / 2; }

MatTuple folner_witness(long i) {
    if (i < 2) throw PreconditionError("folner_witness requires i >= 2");
    FieldSpec f = FieldSpec::rationals();
    long n = folner_dimension(i);
    // monomial x^a y^b at index offset(a+b) + b, ordered by total degree
    auto offset = [](long deg) { return deg * (deg + 1) / 2; };
    auto index = [&](long a, long b) { return offset(a + b) + b; };

    Mat ax(f, (int)n, (int)n), ay(f, (int)n, (int)n), at(f, (int)n, (int)n);
    for (long deg = 0; deg + 1 <= i; ++deg) {
        // monomials of degree <= i-1 form the S-interior; generators act as in
        // the quotient by <t - 1>, with y x^a = x^a y - a x^{a-1}
        for (long b = 0; b <= deg; ++b) {
            long a = deg - b;
            long col = index(a, b);
            ax.set((int)index(a + 1, b), (int)col, Scalar::one(f));
            ay.set((int)index(a, b + 1), (int)col, Scalar::one(f));
            if (a > 0) ay.set((int)index(a - 1, b), (int)col, Scalar::from_integer(f, -a));
            at.set((int)col, (int)col, Scalar::one(f));
        }
    }
    return MatTuple(f, (int)n, {ax, ay, at});
}

WitnessFamily folner_family() {
    WitnessFamily fam;
    fam.presentation = folner_presentation();
    fam.generator = [](long i) { return folner_witness(i); };
    fam.defect_formula = "omega_i -> 0 (measured exactly)";
    return fam;
}

Presentation vacuous_presentation() {
    FieldSpec f = FieldSpec::rationals();
    Scalar one = Scalar::one(f);
    NcPoly r1 = NcPoly::monomial(f, 3, one, {0, 1, 2}) - NcPoly::constant(f, 3, one);
    NcPoly r2 = NcPoly::monomial(f, 3, one, {0, 2, 1});
    return Presentation::associative(f, {"x", "y", "z"}, {r1, r2});
}

VacuousVerdict vacuous_certify(const MatTuple& t) {
    if (t.arity() != 3) throw DimensionError("vacuous_certify expects a 3-tuple (X, Y, Z)");
    const Mat& x = t.mat(0);
    const Mat& y = t.mat(1);
    const Mat& z = t.mat(2);
    long n = t.n();
    mpq_class quarter(1, 4);
    mpq_class first = normalized_rank(x * y * z - Mat::identity(t.field(), (int)n));
    if (first >= quarter) return VacuousVerdict::NotApproximate;
    mpq_class second = normalized_rank(x * z * y);
    if (!(second > quarter))
        throw InternalError(
            "vacuous_certify: COUNTEREXAMPLE to the no-approximate-representation bound: "
            "rank(XYZ-1) = " + first.get_str() + " < 1/4 but rank(XZY) = " + second.get_str() +
            " <= 1/4. This would falsify the underlying result; please report the tuple.");
    return VacuousVerdict::ImplicationHolds;
}

}  // namespace rankstab
