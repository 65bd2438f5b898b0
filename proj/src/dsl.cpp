#include "tbcalc/dsl.hpp"

#include "tbcalc/errors.hpp"

#include <algorithm>
#include <cctype>

namespace tbcalc {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : end_pos_(text.size()) {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
            s_.push_back(text[i]);
            where_.push_back(i);
        }
    }

    bool done() const { return i_ == s_.size(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, here()); }

    std::size_t here() const { return i_ < where_.size() ? where_[i_] : end_pos_; }

    bool accept(std::string_view tok) {
        if (s_.compare(i_, tok.size(), tok) != 0) return false;
        i_ += tok.size();
        return true;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    char peek(std::size_t ahead = 0) const { return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0'; }

    DslValue expr() {
        DslValue v = atom();
        if (peek() == '.') {
            auto* c = std::get_if<Closure12>(&v);
            if (!c) fail("projection applies only to c12");
            if (accept(".plus")) return c->plus;
            if (accept(".minus")) return c->minus;
            if (accept(".full")) return c->full;
            fail("expected plus, minus or full");
        }
        return v;
    }

    IndexSet set_expr() {
        std::size_t start = here();
        DslValue v = expr();
        if (auto* s = std::get_if<IndexSet>(&v)) return *s;
        if (std::holds_alternative<Closure12>(v)) throw ParseError("c12 needs .plus, .minus or .full here", start);
        throw ParseError("trunc yields a point list and cannot be nested", start);
    }

    DslValue atom() {
        if (accept("empty")) return IndexSet();
        if (accept("N0")) return IndexSet::n0();
        if (accept("gen[")) {
            std::vector<IndexPoint> pts;
            if (!accept("]")) {
                do {
                    pts.push_back(point());
                } while (accept(","));
                expect("]");
            }
            return IndexSet::normalize(std::move(pts));
        }
        std::size_t start = here();
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek()))) name.push_back(s_[i_++]);
        if (name.empty()) fail("expected an index-set expression");
        static const std::vector<std::string> known = {"add", "eu", "cup", "shift", "c0", "trunc", "px0", "c12"};
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ParseError("unknown operation '" + name + "'", start);
        }
        expect("(");
        if (name == "add" || name == "eu" || name == "cup") {
            IndexSet a = set_expr();
            expect(",");
            IndexSet b = set_expr();
            expect(")");
            if (name == "add") return add(a, b);
            if (name == "eu") return extended_union(a, b);
            return set_union(a, b);
        }
        if (name == "shift") {
            IndexSet a = set_expr();
            expect(",");
            Exponent c = exponent();
            expect(")");
            return shift(a, c);
        }
        if (name == "c0" || name == "trunc") {
            IndexSet a = set_expr();
            expect(",");
            Surd c = real();
            expect(")");
            if (name == "c0") return closure0(a, c);
            return a.truncate(c);
        }
        // px0 and c12
        IndexSet a = set_expr();
        expect(",");
        IndexSet b = set_expr();
        expect(",");
        Surd c = real();
        expect(")");
        if (name == "px0") return pxind0(a, b, c);
        return closure12(a, b, c);
    }

    IndexPoint point() {
        expect("(");
        Exponent z = exponent();
        expect(",");
        std::size_t start = here();
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(s_[i_++]);
        if (digits.empty() || digits.size() > 9) throw ParseError("expected a log order", start);
        expect(")");
        return {z, std::stoi(digits)};
    }

    Exponent exponent() {
        if (peek() == '(') return {Surd(), imaginary()};
        Surd re = real();
        if ((peek() == '+' || peek() == '-') && peek(1) == '(') {
            bool neg = s_[i_++] == '-';
            Surd im = imaginary();
            return {re, neg ? -im : im};
        }
        return {re};
    }

    Surd imaginary() {
        expect("(");
        Surd im = real();
        expect(")i");
        return im;
    }

    Surd real() {
        Surd out = term(true);
        while ((peek() == '+' || peek() == '-') && peek(1) != '(') out += term(false);
        return out;
    }

    // A signed rational, optionally times sqrt(rational), or a bare sqrt.
    Surd term(bool first) {
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++i_;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        Surd out;
        if (accept("sqrt(")) {
            out = Surd::sqrt_of(rational());
            expect(")");
        } else {
            Rational q = rational();
            if (accept("*")) {
                expect("sqrt(");
                out = Surd::sqrt_of(rational()) * q;
                expect(")");
            } else {
                out = Surd(q);
            }
        }
        return neg ? -out : out;
    }

    Rational rational() {
        std::size_t start = here();
        std::size_t j = i_;
        while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.' || s_[j] == '/')) ++j;
        auto q = parse_rational(std::string_view(s_).substr(i_, j - i_));
        if (!q) throw ParseError("expected a number", start);
        i_ = j;
        return *q;
    }

private:
    std::string s_;
    std::vector<std::size_t> where_;
    std::size_t end_pos_;
    std::size_t i_ = 0;
};

template <class F>
auto parse_whole(std::string_view text, F&& f) {
    Parser p(text);
    auto v = f(p);
    if (!p.done()) p.fail("unexpected trailing input");
    return v;
}

} // namespace

DslValue evaluate_dsl(std::string_view text) {
    return parse_whole(text, [](Parser& p) { return p.expr(); });
}

Surd parse_real(std::string_view text) {
    return parse_whole(text, [](Parser& p) { return p.real(); });
}

Exponent parse_exponent(std::string_view text) {
    return parse_whole(text, [](Parser& p) { return p.exponent(); });
}

std::string render(const DslValue& v) {
    if (auto* s = std::get_if<IndexSet>(&v)) return s->to_string();
    if (auto* c = std::get_if<Closure12>(&v)) {
        return "plus: " + c->plus.to_string() + "\nminus: " + c->minus.to_string() + "\nfull: " + c->full.to_string();
    }
    return points_to_string(std::get<std::vector<IndexPoint>>(v));
}

} // namespace tbcalc
