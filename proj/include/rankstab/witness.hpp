#pragma once

#include <functional>

#include "rankstab/approx.hpp"

namespace rankstab {

/// A parametrized family of approximate representations together with its
/// presentation and the documented defect value where a closed form is known.
struct WitnessFamily {
    Presentation presentation;
    std::function<MatTuple(long)> generator;
    std::string defect_formula;
};

/// <x, y | xy - yx - 1> over Q.
Presentation weyl_presentation();
/// X = superdiagonal ones, Y = subdiagonal 1..n-1; relator defect is 1/n.
MatTuple weyl_witness(long n);
WitnessFamily weyl_family();

/// Pure matrix-unit presentation of M_k(F) (trivial base, k^4 + 1 relators).
Presentation matrix_units_presentation(int k, const FieldSpec& f = FieldSpec::rationals());
/// E_ij = (e_ij (x) Id_n) + Id_1 at size nk+1; max defect is 1/(nk+1).
MatTuple matrix_size_witness(int k, long n);
WitnessFamily matrix_size_family(int k);

/// <x, y, t | xt - tx, yt - ty, xy - yx - t^2> over Q.
Presentation folner_presentation();
/// Multiplication operators on the degree-<=i monomial space of the Weyl
/// algebra, zero on the top-degree complement; defects shrink as i grows.
MatTuple folner_witness(long i);
WitnessFamily folner_family();
/// Dimension of the space of normal-ordered monomials of degree <= i.
long folner_dimension(long i);

/// <x, y, z | xyz - 1, xzy> over Q.
Presentation vacuous_presentation();

enum class VacuousVerdict { NotApproximate, ImplicationHolds };

/// Example-2.4 certifier: tuples with rank(XYZ - Id) < n/4 must satisfy
/// rank(XZY) > n/4; a violation would falsify the underlying argument and
/// raises InternalError with a loud report.
VacuousVerdict vacuous_certify(const MatTuple& t);

}  // namespace rankstab
