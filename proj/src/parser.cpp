#include <cctype>
#include <optional>

#include "rankstab/freealg.hpp"

namespace rankstab {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= src_.size()) return {Tok::End, "", line, col};
        char c = src_[pos_];
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::string t;
            while (pos_ < src_.size() &&
                   (std::isalnum((unsigned char)src_[pos_]) || src_[pos_] == '_' || src_[pos_] == '\''))
                t += advance();
            return {Tok::Ident, t, line, col};
        }
        if (std::isdigit((unsigned char)c)) {
            std::string t;
            while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) t += advance();
            return {Tok::Int, t, line, col};
        }
        static const std::string punct = ";,*+-/()[]^";
        if (punct.find(c) != std::string::npos) {
            advance();
            return {Tok::Punct, std::string(1, c), line, col};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {  // comment to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace((unsigned char)c)) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { cur_ = lex_.next(); }

    Presentation parse() {
        Token head = expect_ident();
        bool lie_flavor;
        if (head.text == "algebra")
            lie_flavor = false;
        else if (head.text == "lie")
            lie_flavor = true;
        else
            throw ParseError("expected 'algebra' or 'lie'", head.line, head.col);
        field_ = parse_field();
        expect_punct(";");

        Token g = expect_ident();
        if (g.text != "gens") throw ParseError("expected 'gens'", g.line, g.col);
        if (!is_punct(";")) {
            while (true) {
                Token nm = expect_ident();
                if (index_of_.count(nm.text))
                    throw ParseError("duplicate generator '" + nm.text + "'", nm.line, nm.col);
                index_of_[nm.text] = (int)names_.size();
                names_.push_back(nm.text);
                if (is_punct(",")) {
                    consume();
                    continue;
                }
                break;
            }
        }
        expect_punct(";");

        Token r = expect_ident();
        if (r.text != "rels") throw ParseError("expected 'rels'", r.line, r.col);
        std::vector<NcPoly> rels;
        std::vector<LiePoly> lie_rels;
        if (!is_punct(";")) {
            while (true) {
                if (lie_flavor)
                    lie_rels.push_back(parse_lie_poly());
                else
                    rels.push_back(parse_poly());
                if (is_punct(",")) {
                    consume();
                    continue;
                }
                break;
            }
        }
        expect_punct(";");
        if (cur_.kind != Tok::End)
            throw ParseError("trailing input after final ';'", cur_.line, cur_.col);

        if (lie_flavor) return Presentation::lie(*field_, names_, lie_rels);
        return Presentation::associative(*field_, names_, rels);
    }

private:
    FieldSpec parse_field() {
        Token t = expect_ident();
        if (t.text == "Q") return FieldSpec::rationals();
        if (t.text == "Fp") {
            expect_punct("(");
            Token p = expect_int();
            expect_punct(")");
            try {
                return FieldSpec::prime_field(std::stoull(p.text));
            } catch (const Error& e) {
                throw ParseError(e.what(), p.line, p.col);
            }
        }
        throw ParseError("expected field 'Q' or 'Fp(p)'", t.line, t.col);
    }

    // associative expression grammar:
    //   poly := ["+"|"-"] term (("+"|"-") term)*
    //   term := factor ("*" factor)*
    //   factor := atom ("^" INT)*
    //   atom := scalar | IDENT | "(" poly ")" | "[" poly "," poly "]"
    NcPoly parse_poly() {
        bool neg = false;
        if (is_punct("+") || is_punct("-")) {
            neg = cur_.text == "-";
            consume();
        }
        NcPoly acc = parse_term();
        if (neg) acc = -acc;
        while (is_punct("+") || is_punct("-")) {
            bool minus = cur_.text == "-";
            consume();
            NcPoly t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    NcPoly parse_term() {
        NcPoly acc = parse_factor();
        while (is_punct("*")) {
            consume();
            acc = acc * parse_factor();
        }
        return acc;
    }

    NcPoly parse_factor() {
        NcPoly acc = parse_atom();
        while (is_punct("^")) {
            consume();
            Token e = expect_int();
            long exp = std::stol(e.text);
            NcPoly base = acc;
            acc = NcPoly::constant(*field_, arity(), Scalar::one(*field_));
            for (long i = 0; i < exp; ++i) acc = acc * base;
        }
        return acc;
    }

    NcPoly parse_atom() {
        if (cur_.kind == Tok::Int) return NcPoly::constant(*field_, arity(), parse_scalar());
        if (cur_.kind == Tok::Ident) {
            Token t = consume();
            return NcPoly::generator(*field_, arity(), gen_index(t));
        }
        if (is_punct("(")) {
            consume();
            NcPoly p = parse_poly();
            expect_punct(")");
            return p;
        }
        if (is_punct("[")) {
            consume();
            NcPoly a = parse_poly();
            expect_punct(",");
            NcPoly b = parse_poly();
            expect_punct("]");
            return lie_bracket(a, b);
        }
        throw ParseError("expected a polynomial atom", cur_.line, cur_.col);
    }

    // Lie relators: sums of optional-scalar multiples of bracket monomials;
    // raw products, powers, parentheses and bare constants are rejected.
    LiePoly parse_lie_poly() {
        LiePoly acc(*field_, arity());
        bool first = true;
        while (true) {
            bool neg = false;
            if (is_punct("+") || is_punct("-")) {
                neg = cur_.text == "-";
                consume();
            } else if (!first) {
                break;
            }
            Scalar coef = Scalar::one(*field_);
            if (cur_.kind == Tok::Int) {
                Token at = cur_;
                coef = parse_scalar();
                if (!is_punct("*"))
                    throw ParseError("Lie relator with constant term", at.line, at.col);
                consume();
            }
            if (neg) coef = -coef;
            LiePoly atom = parse_lie_atom();
            acc = acc + atom.scaled(coef);
            first = false;
            if (is_punct("*") || is_punct("^"))
                throw ParseError("products are not Lie monomials; use brackets", cur_.line, cur_.col);
            if (!is_punct("+") && !is_punct("-")) break;
        }
        return acc;
    }

    LiePoly parse_lie_atom() {
        if (cur_.kind == Tok::Ident) {
            Token t = consume();
            LiePoly p(*field_, arity());
            p.add_term(LieMono::leaf(gen_index(t)), Scalar::one(*field_));
            return p;
        }
        if (is_punct("[")) {
            consume();
            LiePoly a = parse_lie_poly();
            expect_punct(",");
            LiePoly b = parse_lie_poly();
            expect_punct("]");
            LiePoly out(*field_, arity());
            for (const auto& [ma, ca] : a.terms())
                for (const auto& [mb, cb] : b.terms()) {
                    Scalar c = ca;
                    c *= cb;
                    out.add_term(LieMono::bracket(ma, mb), c);
                }
            return out;
        }
        if (cur_.kind == Tok::Int)
            throw ParseError("Lie relator with constant term", cur_.line, cur_.col);
        throw ParseError("expected a generator or bracket", cur_.line, cur_.col);
    }

    Scalar parse_scalar() {
        Token num = expect_int();
        if (is_punct("/")) {
            consume();
            Token den = expect_int();
            try {
                return Scalar::from_mpq(*field_, mpq_class(mpz_class(num.text), mpz_class(den.text)));
            } catch (const Error& e) {
                throw ParseError(e.what(), den.line, den.col);
            }
        }
        return Scalar::from_mpz(*field_, mpz_class(num.text));
    }

    int gen_index(const Token& t) {
        auto it = index_of_.find(t.text);
        if (it == index_of_.end())
            throw ParseError("undeclared generator '" + t.text + "'", t.line, t.col);
        return it->second;
    }

    int arity() const { return (int)names_.size(); }

    bool is_punct(const std::string& s) const { return cur_.kind == Tok::Punct && cur_.text == s; }

    Token consume() {
        Token t = cur_;
        cur_ = lex_.next();
        return t;
    }

    Token expect_ident() {
        if (cur_.kind != Tok::Ident) throw ParseError("expected identifier", cur_.line, cur_.col);
        return consume();
    }

    Token expect_int() {
        if (cur_.kind != Tok::Int) throw ParseError("expected integer", cur_.line, cur_.col);
        return consume();
    }

    void expect_punct(const std::string& s) {
        if (!is_punct(s)) throw ParseError("expected '" + s + "'", cur_.line, cur_.col);
        consume();
    }

    Lexer lex_;
    Token cur_;
    std::optional<FieldSpec> field_;
    std::vector<std::string> names_;
    std::map<std::string, int> index_of_;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace rankstab
