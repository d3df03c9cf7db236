#include "rankstab/freealg.hpp"

#include <algorithm>
#include <set>

namespace rankstab {

NcPoly NcPoly::constant(const FieldSpec& f, int arity, const Scalar& c) {
    NcPoly p(f, arity);
    p.add_term({}, c);
    return p;
}

NcPoly NcPoly::generator(const FieldSpec& f, int arity, int index) {
    if (index < 0 || index >= arity) throw DimensionError("generator index out of range");
    NcPoly p(f, arity);
    p.add_term({index}, Scalar::one(f));
    return p;
}

NcPoly NcPoly::monomial(const FieldSpec& f, int arity, const Scalar& c, Word w) {
    for (int g : w)
        if (g < 0 || g >= arity) throw DimensionError("generator index out of range");
    NcPoly p(f, arity);
    p.add_term(w, c);
    return p;
}

void NcPoly::add_term(const Word& w, const Scalar& c) {
    field_.require_same(c.field());
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

long NcPoly::max_degree() const {
    long m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, (long)w.size());
    return m;
}

Scalar NcPoly::constant_term() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

bool NcPoly::has_constant_term() const { return terms_.count(Word{}) != 0; }

NcPoly NcPoly::operator+(const NcPoly& o) const {
    field_.require_same(o.field_);
    if (arity_ != o.arity_) throw DimensionError("polynomial arity mismatch");
    NcPoly p = *this;
    for (const auto& [w, c] : o.terms_) p.add_term(w, c);
    return p;
}

NcPoly NcPoly::operator-(const NcPoly& o) const { return *this + (-o); }

NcPoly NcPoly::operator-() const {
    NcPoly p(field_, arity_);
    for (const auto& [w, c] : terms_) p.terms_.emplace(w, -c);
    return p;
}

NcPoly NcPoly::scaled(const Scalar& s) const {
    NcPoly p(field_, arity_);
    if (s.is_zero()) return p;
    for (const auto& [w, c] : terms_) {
        Scalar t = c;
        t *= s;
        p.terms_.emplace(w, std::move(t));
    }
    return p;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
    field_.require_same(o.field_);
    if (arity_ != o.arity_) throw DimensionError("polynomial arity mismatch");
    NcPoly p(field_, arity_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            Scalar c = ca;
            c *= cb;
            p.add_term(w, c);
        }
    return p;
}

bool NcPoly::operator==(const NcPoly& o) const {
    return field_ == o.field_ && arity_ == o.arity_ && terms_ == o.terms_;
}

NcPoly lie_bracket(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

namespace {

// scalar rendering for pretty-printers; |c| is taken for rationals only
struct RenderedCoef {
    bool negative;
    std::string magnitude;  // empty when |c| == 1
};

RenderedCoef render_coef(const Scalar& c) {
    RenderedCoef r{false, ""};
    if (c.field().is_rationals()) {
        mpq_class q = c.rational();
        if (q < 0) {
            r.negative = true;
            q = -q;
        }
        if (q != 1) r.magnitude = q.get_str();
    } else {
        if (!c.is_one()) r.magnitude = c.to_string();
    }
    return r;
}

std::string join_terms(const std::vector<std::pair<RenderedCoef, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [coef, body] = parts[i];
        if (i == 0) {
            if (coef.negative) out += "-";
        } else {
            out += coef.negative ? " - " : " + ";
        }
        if (body.empty()) {
            out += coef.magnitude.empty() ? "1" : coef.magnitude;
        } else {
            if (!coef.magnitude.empty()) out += coef.magnitude + "*";
            out += body;
        }
    }
    return out;
}

}  // namespace

std::string NcPoly::pretty(const std::vector<std::string>& names) const {
    // order: degree descending, then word lexicographic ascending
    std::vector<std::pair<Word, Scalar>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        return a.first < b.first;
    });
    std::vector<std::pair<RenderedCoef, std::string>> parts;
    for (const auto& [w, c] : ordered) {
        std::string body;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) body += "*";
            body += names.at(w[i]);
        }
        parts.emplace_back(render_coef(c), body);
    }
    return join_terms(parts);
}

LieMono LieMono::bracket(const LieMono& a, const LieMono& b) {
    LieMono m;
    m.post = a.post;
    m.post.insert(m.post.end(), b.post.begin(), b.post.end());
    m.post.push_back(-1);
    return m;
}

void LiePoly::add_term(const LieMono& m, const Scalar& c) {
    field_.require_same(c.field());
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LiePoly LiePoly::operator+(const LiePoly& o) const {
    field_.require_same(o.field_);
    if (arity_ != o.arity_) throw DimensionError("polynomial arity mismatch");
    LiePoly p = *this;
    for (const auto& [m, c] : o.terms_) p.add_term(m, c);
    return p;
}

LiePoly LiePoly::operator-(const LiePoly& o) const { return *this + o.scaled(-Scalar::one(field_)); }

LiePoly LiePoly::scaled(const Scalar& s) const {
    LiePoly p(field_, arity_);
    if (s.is_zero()) return p;
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        t *= s;
        p.terms_.emplace(m, std::move(t));
    }
    return p;
}

bool LiePoly::operator==(const LiePoly& o) const {
    return field_ == o.field_ && arity_ == o.arity_ && terms_ == o.terms_;
}

namespace {

std::string render_lie_mono(const LieMono& m, const std::vector<std::string>& names) {
    std::vector<std::string> stack;
    for (int t : m.post) {
        if (t >= 0) {
            stack.push_back(names.at(t));
        } else {
            std::string b = stack.back();
            stack.pop_back();
            std::string a = stack.back();
            stack.pop_back();
            stack.push_back("[" + a + "," + b + "]");
        }
    }
    return stack.back();
}

}  // namespace

std::string LiePoly::pretty(const std::vector<std::string>& names) const {
    // deeper bracket monomials first, mirroring the degree-descending order
    // used for associative polynomials
    std::vector<std::pair<LieMono, Scalar>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.post.size() != b.first.post.size())
            return a.first.post.size() > b.first.post.size();
        return a.first.post < b.first.post;
    });
    std::vector<std::pair<RenderedCoef, std::string>> parts;
    for (const auto& [m, c] : ordered)
        parts.emplace_back(render_coef(c), render_lie_mono(m, names));
    return join_terms(parts);
}

NcPoly lie_expand(const LiePoly& p) {
    NcPoly out(p.field(), p.arity());
    for (const auto& [m, c] : p.terms()) {
        std::vector<NcPoly> stack;
        for (int t : m.post) {
            if (t >= 0) {
                stack.push_back(NcPoly::generator(p.field(), p.arity(), t));
            } else {
                NcPoly b = std::move(stack.back());
                stack.pop_back();
                NcPoly a = std::move(stack.back());
                stack.pop_back();
                stack.push_back(lie_bracket(a, b));
            }
        }
        out = out + stack.back().scaled(c);
    }
    return out;
}

MatTuple::MatTuple(const FieldSpec& f, int n, std::vector<Mat> mats)
    : field_(f), n_(n), mats_(std::move(mats)) {
    if (n < 0) throw DimensionError("negative tuple size");
    for (const Mat& m : mats_) {
        f.require_same(m.field());
        if (m.rows() != n || m.cols() != n)
            throw DimensionError("tuple matrices must be square of the declared size");
    }
}

bool MatTuple::operator==(const MatTuple& o) const {
    return field_ == o.field_ && n_ == o.n_ && mats_ == o.mats_;
}

Presentation Presentation::associative(const FieldSpec& f, std::vector<std::string> names,
                                       std::vector<NcPoly> relators) {
    Presentation p;
    p.flavor_ = Flavor::Associative;
    p.field_ = f;
    p.names_ = std::move(names);
    for (const NcPoly& r : relators) {
        f.require_same(r.field());
        if (r.arity() != (int)p.names_.size())
            throw DimensionError("relator arity does not match generator count");
    }
    p.relators_ = std::move(relators);
    return p;
}

Presentation Presentation::lie(const FieldSpec& f, std::vector<std::string> names,
                               std::vector<LiePoly> relators) {
    Presentation p;
    p.flavor_ = Flavor::Lie;
    p.field_ = f;
    p.names_ = std::move(names);
    for (const LiePoly& r : relators) {
        f.require_same(r.field());
        if (r.arity() != (int)p.names_.size())
            throw DimensionError("relator arity does not match generator count");
        p.relators_.push_back(lie_expand(r));
    }
    p.lie_relators_ = std::move(relators);
    return p;
}

bool Presentation::operator==(const Presentation& o) const {
    return flavor_ == o.flavor_ && field_ == o.field_ && names_ == o.names_ &&
           relators_ == o.relators_ && lie_relators_ == o.lie_relators_;
}

std::string Presentation::pretty() const {
    std::string out = flavor_ == Flavor::Lie ? "lie " : "algebra ";
    out += field_.to_string() + ";\ngens ";
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) out += ", ";
        out += names_[i];
    }
    out += ";\nrels ";
    if (flavor_ == Flavor::Lie) {
        for (std::size_t i = 0; i < lie_relators_.size(); ++i) {
            if (i) out += ", ";
            out += lie_relators_[i].pretty(names_);
        }
    } else {
        for (std::size_t i = 0; i < relators_.size(); ++i) {
            if (i) out += ", ";
            out += relators_[i].pretty(names_);
        }
    }
    out += ";\n";
    return out;
}

Mat eval(const NcPoly& p, const MatTuple& t) {
    if (p.arity() != t.arity()) throw DimensionError("eval: polynomial/tuple arity mismatch");
    p.field().require_same(t.field());
    Mat acc(t.field(), t.n(), t.n());
    for (const auto& [w, c] : p.terms()) {
        if (w.empty()) {
            acc = acc + Mat::identity(t.field(), t.n()).scaled(c);
            continue;
        }
        Mat prod = t.mat(w[0]);
        for (std::size_t i = 1; i < w.size(); ++i) prod = prod * t.mat(w[i]);
        acc = acc + prod.scaled(c);
    }
    return acc;
}

Presentation enveloping_presentation(const Presentation& lie_pres) {
    if (lie_pres.flavor() != Flavor::Lie)
        throw Error("enveloping_presentation expects a Lie presentation");
    return Presentation::associative(lie_pres.field(), lie_pres.generator_names(),
                                     lie_pres.relators());
}

Presentation group_algebra_presentation(const std::vector<std::string>& gens,
                                        const std::vector<GroupWord>& relator_words,
                                        const FieldSpec& f) {
    int d = (int)gens.size();
    std::vector<std::string> names = gens;
    for (const std::string& g : gens) names.push_back(g + "'");
    auto one = NcPoly::constant(f, 2 * d, Scalar::one(f));
    std::vector<NcPoly> rels;
    for (const GroupWord& w : relator_words) {
        Word q;
        for (int letter : w) {
            if (letter == 0 || letter > d || letter < -d)
                throw DimensionError("group word letter out of range");
            q.push_back(letter > 0 ? letter - 1 : d + (-letter - 1));
        }
        rels.push_back(NcPoly::monomial(f, 2 * d, Scalar::one(f), q) - one);
    }
    for (int j = 0; j < d; ++j) {
        rels.push_back(NcPoly::monomial(f, 2 * d, Scalar::one(f), {j, d + j}) - one);
        rels.push_back(NcPoly::monomial(f, 2 * d, Scalar::one(f), {d + j, j}) - one);
    }
    return Presentation::associative(f, std::move(names), std::move(rels));
}

namespace {

NcPoly reindex(const NcPoly& p, int new_arity, int offset, const FieldSpec& f) {
    NcPoly out(f, new_arity);
    for (const auto& [w, c] : p.terms()) {
        Word nw;
        nw.reserve(w.size());
        for (int g : w) nw.push_back(g + offset);
        out.add_term(nw, c);
    }
    return out;
}

}  // namespace

Presentation direct_product_presentation(const Presentation& p, const Presentation& q) {
    if (p.flavor() != Flavor::Associative || q.flavor() != Flavor::Associative)
        throw Error("direct product requires associative presentations");
    p.field().require_same(q.field());
    const FieldSpec& f = p.field();
    int d = p.arity(), t = q.arity();
    int arity = d + t + 2;
    int e1 = d + t, e2 = d + t + 1;

    std::vector<std::string> names = p.generator_names();
    names.insert(names.end(), q.generator_names().begin(), q.generator_names().end());
    std::set<std::string> used(names.begin(), names.end());
    std::string n1 = "e1", n2 = "e2";
    while (used.count(n1)) n1 = "q_" + n1;
    used.insert(n1);
    while (used.count(n2)) n2 = "q_" + n2;
    names.push_back(n1);
    names.push_back(n2);

    Scalar one = Scalar::one(f);
    auto gen = [&](int i) { return NcPoly::generator(f, arity, i); };
    std::vector<NcPoly> rels;
    for (const NcPoly& pj : p.relators()) rels.push_back(gen(e1) * reindex(pj, arity, 0, f));
    for (const NcPoly& qj : q.relators()) rels.push_back(gen(e2) * reindex(qj, arity, d, f));
    for (int i = 0; i < d; ++i) {
        rels.push_back(gen(e1) * gen(i) - gen(i));
        rels.push_back(gen(i) * gen(e1) - gen(i));
    }
    for (int i = 0; i < t; ++i) {
        rels.push_back(gen(e2) * gen(d + i) - gen(d + i));
        rels.push_back(gen(d + i) * gen(e2) - gen(d + i));
    }
    rels.push_back(gen(e1) + gen(e2) - NcPoly::constant(f, arity, one));
    rels.push_back(gen(e1) * gen(e1) - gen(e1));
    rels.push_back(gen(e2) * gen(e2) - gen(e2));
    return Presentation::associative(f, std::move(names), std::move(rels));
}

Presentation matrix_algebra_presentation(const Presentation& p, int m) {
    if (m < 1) throw DimensionError("matrix algebra degree must be at least 1");
    if (p.flavor() != Flavor::Associative)
        throw Error("matrix algebra construction requires an associative presentation");
    const FieldSpec& f = p.field();
    int d = p.arity();
    int arity = d + m * m;

    std::vector<std::string> names = p.generator_names();
    std::set<std::string> used(names.begin(), names.end());
    std::vector<int> unit_index(m * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::string nm = "e" + std::to_string(i + 1) + std::to_string(j + 1);
            while (used.count(nm)) nm = "q_" + nm;
            used.insert(nm);
            unit_index[i * m + j] = (int)names.size();
            names.push_back(nm);
        }

    auto gen = [&](int i) { return NcPoly::generator(f, arity, i); };
    auto unit = [&](int i, int j) { return gen(unit_index[i * m + j]); };
    std::vector<NcPoly> rels;
    for (const NcPoly& pj : p.relators()) rels.push_back(reindex(pj, arity, 0, f));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    NcPoly r = unit(i, j) * unit(k, l);
                    if (j == k) r = r - unit(i, l);
                    rels.push_back(std::move(r));
                }
    NcPoly sum = NcPoly::zero(f, arity);
    for (int i = 0; i < m; ++i) sum = sum + unit(i, i);
    rels.push_back(sum - NcPoly::constant(f, arity, Scalar::one(f)));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                rels.push_back(unit(i, j) * gen(k) - gen(k) * unit(i, j));
                rels.push_back(gen(k) * unit(i, j) - unit(i, j) * gen(k));
            }
    return Presentation::associative(f, std::move(names), std::move(rels));
}

Presentation free_product_presentation(const Presentation& p, const Presentation& q) {
    if (p.flavor() != Flavor::Associative || q.flavor() != Flavor::Associative)
        throw Error("free product requires associative presentations");
    p.field().require_same(q.field());
    const FieldSpec& f = p.field();
    int d = p.arity();
    int arity = d + q.arity();

    std::vector<std::string> names = p.generator_names();
    std::set<std::string> used(names.begin(), names.end());
    for (const std::string& g : q.generator_names()) {
        std::string nm = g;
        while (used.count(nm)) nm = "q_" + nm;
        used.insert(nm);
        names.push_back(nm);
    }
    std::vector<NcPoly> rels;
    for (const NcPoly& pj : p.relators()) rels.push_back(reindex(pj, arity, 0, f));
    for (const NcPoly& qj : q.relators()) rels.push_back(reindex(qj, arity, d, f));
    return Presentation::associative(f, std::move(names), std::move(rels));
}

}  // namespace rankstab
