#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankstab/matrix.hpp"

namespace rankstab {

/// Word over generator indices; empty word is the constant monomial.
using Word = std::vector<int>;

struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Noncommutative polynomial over d named generators: a finite map from words
/// to nonzero coefficients.
class NcPoly {
public:
    NcPoly() : field_(FieldSpec::rationals()), arity_(0) {}
    NcPoly(const FieldSpec& f, int arity) : field_(f), arity_(arity) {}

    static NcPoly zero(const FieldSpec& f, int arity) { return NcPoly(f, arity); }
    static NcPoly constant(const FieldSpec& f, int arity, const Scalar& c);
    static NcPoly generator(const FieldSpec& f, int arity, int index);
    static NcPoly monomial(const FieldSpec& f, int arity, const Scalar& c, Word w);

    const FieldSpec& field() const { return field_; }
    int arity() const { return arity_; }
    const std::map<Word, Scalar, WordOrder>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Number of monomials with nonzero coefficient (the bound's l).
    long monomial_count() const { return (long)terms_.size(); }
    /// Maximal word length (the bound's m); 0 for constants and zero.
    long max_degree() const;
    Scalar constant_term() const;
    bool has_constant_term() const;

    NcPoly operator+(const NcPoly& o) const;
    NcPoly operator-(const NcPoly& o) const;
    NcPoly operator*(const NcPoly& o) const;
    NcPoly operator-() const;
    NcPoly scaled(const Scalar& s) const;
    bool operator==(const NcPoly& o) const;
    bool operator!=(const NcPoly& o) const { return !(*this == o); }

    void add_term(const Word& w, const Scalar& c);

    std::string pretty(const std::vector<std::string>& names) const;

private:
    FieldSpec field_;
    int arity_;
    std::map<Word, Scalar, WordOrder> terms_;
};

/// [a, b] = ab - ba.
NcPoly lie_bracket(const NcPoly& a, const NcPoly& b);

/// Bracket monomial as a binary tree in postorder encoding: generator index
/// for a leaf, -1 for a bracket node (children precede it).
struct LieMono {
    std::vector<int> post;
    bool operator<(const LieMono& o) const {
        if (post.size() != o.post.size()) return post.size() < o.post.size();
        return post < o.post;
    }
    bool operator==(const LieMono& o) const { return post == o.post; }
    static LieMono leaf(int gen) { return LieMono{{gen}}; }
    static LieMono bracket(const LieMono& a, const LieMono& b);
};

/// Lie polynomial kept pre-expansion: a sum of scalar multiples of bracket
/// monomials. Cannot carry a constant term by construction.
class LiePoly {
public:
    LiePoly() : field_(FieldSpec::rationals()), arity_(0) {}
    LiePoly(const FieldSpec& f, int arity) : field_(f), arity_(arity) {}

    const FieldSpec& field() const { return field_; }
    int arity() const { return arity_; }
    const std::map<LieMono, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const LieMono& m, const Scalar& c);
    LiePoly operator+(const LiePoly& o) const;
    LiePoly operator-(const LiePoly& o) const;
    LiePoly scaled(const Scalar& s) const;
    bool operator==(const LiePoly& o) const;

    std::string pretty(const std::vector<std::string>& names) const;

private:
    FieldSpec field_;
    int arity_;
    std::map<LieMono, Scalar> terms_;
};

/// Associative expansion of the bracket encoding via [a,b] = ab - ba.
NcPoly lie_expand(const LiePoly& p);

/// Ordered d-tuple of square matrices of a common size.
class MatTuple {
public:
    MatTuple() : field_(FieldSpec::rationals()), n_(0) {}
    MatTuple(const FieldSpec& f, int n, std::vector<Mat> mats);

    const FieldSpec& field() const { return field_; }
    int n() const { return n_; }
    int arity() const { return (int)mats_.size(); }
    const std::vector<Mat>& mats() const { return mats_; }
    const Mat& mat(int i) const { return mats_[i]; }

    bool operator==(const MatTuple& o) const;

private:
    FieldSpec field_;
    int n_;
    std::vector<Mat> mats_;
};

enum class Flavor { Associative, Lie };

/// Finite presentation: named generators plus relator polynomials. Lie-flavor
/// presentations keep the bracket-encoded relators alongside their
/// associative expansions; evaluation always uses the expansions.
class Presentation {
public:
    Presentation() : flavor_(Flavor::Associative), field_(FieldSpec::rationals()) {}
    static Presentation associative(const FieldSpec& f, std::vector<std::string> names,
                                    std::vector<NcPoly> relators);
    static Presentation lie(const FieldSpec& f, std::vector<std::string> names,
                            std::vector<LiePoly> relators);

    Flavor flavor() const { return flavor_; }
    const FieldSpec& field() const { return field_; }
    int arity() const { return (int)names_.size(); }
    const std::vector<std::string>& generator_names() const { return names_; }
    /// Associative relator polynomials (Lie relators already expanded).
    const std::vector<NcPoly>& relators() const { return relators_; }
    const std::vector<LiePoly>& lie_relators() const { return lie_relators_; }

    bool operator==(const Presentation& o) const;

    std::string pretty() const;

private:
    Flavor flavor_;
    FieldSpec field_;
    std::vector<std::string> names_;
    std::vector<NcPoly> relators_;
    std::vector<LiePoly> lie_relators_;
};

/// Evaluation at a matrix tuple; the empty word acts as the identity matrix.
Mat eval(const NcPoly& p, const MatTuple& t);

/// Parses the presentation DSL; see the README for the grammar.
Presentation parse_presentation(const std::string& text);

Presentation enveloping_presentation(const Presentation& lie_pres);

/// Group word over generators 1..d: positive entry i means x_i, negative -i
/// means x_i^{-1}.
using GroupWord = std::vector<int>;

Presentation group_algebra_presentation(const std::vector<std::string>& gens,
                                        const std::vector<GroupWord>& relator_words,
                                        const FieldSpec& f = FieldSpec::rationals());
Presentation direct_product_presentation(const Presentation& p, const Presentation& q);
Presentation matrix_algebra_presentation(const Presentation& p, int m);
Presentation free_product_presentation(const Presentation& p, const Presentation& q);

}  // namespace rankstab
