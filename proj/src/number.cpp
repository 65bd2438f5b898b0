#include "tbcalc/number.hpp"

#include "tbcalc/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <charconv>
#include <cmath>

namespace tbcalc {

Rational make_rational(std::int64_t num, std::int64_t den) { return Rational(Int(num), Int(den)); }

std::int64_t num_of(const Rational& q) { return static_cast<std::int64_t>(q.numerator()); }
std::int64_t den_of(const Rational& q) { return static_cast<std::int64_t>(q.denominator()); }

std::strong_ordering rational_cmp(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(num_of(a)) * den_of(b);
    __int128 r = static_cast<__int128>(num_of(b)) * den_of(a);
    return l <=> r;
}

Rational floor_of(const Rational& q) {
    std::int64_t n = num_of(q), d = den_of(q);
    std::int64_t f = n / d;
    if (n % d != 0 && n < 0) --f;
    return make_rational(f);
}

Rational frac_of(const Rational& q) { return q - floor_of(q); }

double to_double(const Rational& q) {
    return static_cast<double>(num_of(q)) / static_cast<double>(den_of(q));
}

std::string to_string(const Rational& q) {
    if (den_of(q) == 1) return std::to_string(num_of(q));
    return std::to_string(num_of(q)) + "/" + std::to_string(den_of(q));
}

static std::optional<std::int64_t> parse_int(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool neg = false;
    std::string_view s = text;
    if (s.front() == '+' || s.front() == '-') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
    try {
        Rational out;
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            auto n = parse_int(s.substr(0, slash));
            auto d = parse_int(s.substr(slash + 1));
            if (!n || !d || *d == 0) return std::nullopt;
            out = make_rational(*n, *d);
        } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
            if (ip.empty() && fp.empty()) return std::nullopt;
            std::int64_t i = 0;
            if (!ip.empty()) {
                auto v = parse_int(ip);
                if (!v) return std::nullopt;
                i = *v;
            }
            out = make_rational(i);
            if (!fp.empty()) {
                auto f = parse_int(fp);
                if (!f || fp.size() > 17) return std::nullopt;
                std::int64_t scale = 1;
                for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
                out += make_rational(*f, scale);
            }
        } else {
            auto n = parse_int(s);
            if (!n) return std::nullopt;
            out = make_rational(*n);
        }
        return neg ? -out : out;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::int64_t squarefree_part(std::int64_t n, std::int64_t* root) {
    std::int64_t sq = 1, rest = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) sq *= p;
        if (e % 2) rest *= p;
    }
    rest *= n;
    if (root) *root = sq;
    return rest;
}

Surd Surd::sqrt_of(const Rational& x) {
    if (x < 0) throw DomainError("square root of a negative rational");
    if (x == Rational()) return Surd();
    std::int64_t p = num_of(x), q = den_of(x);
    std::int64_t pq = static_cast<std::int64_t>(Int(p) * Int(q));
    std::int64_t root = 1;
    std::int64_t s = squarefree_part(pq, &root);
    Rational c = make_rational(root, q);
    Surd out;
    if (s == 1) {
        out.q_ = c;
    } else {
        out.terms_.push_back({s, c});
    }
    return out;
}

Surd Surd::irrational_part() const {
    Surd out;
    out.terms_ = terms_;
    return out;
}

long double Surd::to_long_double() const {
    long double v = static_cast<long double>(num_of(q_)) / static_cast<long double>(den_of(q_));
    for (const auto& t : terms_) {
        v += static_cast<long double>(num_of(t.coef)) / static_cast<long double>(den_of(t.coef)) *
             std::sqrt(static_cast<long double>(t.rad));
    }
    return v;
}

int Surd::sign() const {
    if (terms_.empty()) return q_ > 0 ? 1 : (q_ < 0 ? -1 : 0);
    long double v = to_long_double();
    long double mag = std::fabs(static_cast<long double>(tbcalc::to_double(q_)));
    for (const auto& t : terms_) mag += std::fabs(static_cast<long double>(tbcalc::to_double(t.coef))) * std::sqrt(static_cast<long double>(t.rad));
    if (std::fabs(v) > 1e-14L * mag) return v > 0 ? 1 : -1;

    using F = boost::multiprecision::cpp_bin_float_100;
    F s = F(num_of(q_)) / F(den_of(q_));
    for (const auto& t : terms_) s += F(num_of(t.coef)) / F(den_of(t.coef)) * boost::multiprecision::sqrt(F(t.rad));
    if (boost::multiprecision::abs(s) < F(1e-80) * F(static_cast<double>(mag))) {
        throw DomainError("cannot resolve the sign of " + to_string());
    }
    return s > 0 ? 1 : -1;
}

std::string Surd::to_string() const {
    std::string out;
    if (q_ != Rational() || terms_.empty()) out = tbcalc::to_string(q_);
    for (const auto& t : terms_) {
        Rational c = t.coef;
        bool neg = c < 0;
        if (neg) c = -c;
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        if (c != make_rational(1)) out += tbcalc::to_string(c) + "*";
        out += "sqrt(" + std::to_string(t.rad) + ")";
    }
    return out;
}

Surd Surd::operator-() const {
    Surd out = *this;
    out.q_ = -out.q_;
    for (auto& t : out.terms_) t.coef = -t.coef;
    return out;
}

Surd& Surd::accumulate(const Surd& o, bool negate) {
    if (negate) q_ -= o.q_;
    else q_ += o.q_;
    if (o.terms_.empty()) return *this;
    Terms merged;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].rad < o.terms_[j].rad)) {
            merged.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].rad < terms_[i].rad) {
            merged.push_back({o.terms_[j].rad, negate ? -o.terms_[j].coef : o.terms_[j].coef});
            ++j;
        } else {
            Rational c = negate ? terms_[i].coef - o.terms_[j].coef : terms_[i].coef + o.terms_[j].coef;
            if (c != Rational()) merged.push_back({terms_[i].rad, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Surd& Surd::operator+=(const Surd& o) { return accumulate(o, false); }
Surd& Surd::operator-=(const Surd& o) { return accumulate(o, true); }

Surd& Surd::operator*=(const Rational& c) {
    if (c == Rational()) {
        q_ = 0;
        terms_.clear();
        return *this;
    }
    q_ *= c;
    for (auto& t : terms_) t.coef *= c;
    return *this;
}

bool operator==(const Surd& a, const Surd& b) {
    if (a.q_ != b.q_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].rad != b.terms_[i].rad || a.terms_[i].coef != b.terms_[i].coef) return false;
    }
    return true;
}

std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    // Same irrational part: only the rational parts differ.
    if (a.terms_.size() == b.terms_.size()) {
        bool same = true;
        for (std::size_t i = 0; i < a.terms_.size() && same; ++i) {
            same = a.terms_[i].rad == b.terms_[i].rad && a.terms_[i].coef == b.terms_[i].coef;
        }
        if (same) return rational_cmp(a.q_, b.q_);
    }
    long double va = a.to_long_double(), vb = b.to_long_double();
    long double scale = std::fabs(va) + std::fabs(vb) + 1.0L;
    if (std::fabs(va - vb) > 1e-12L * scale) return va < vb ? std::strong_ordering::less : std::strong_ordering::greater;
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering Surd::structural_compare(const Surd& a, const Surd& b) {
    if (auto c = rational_cmp(a.q_, b.q_); c != 0) return c;
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.terms_[i].rad <=> b.terms_[i].rad; c != 0) return c;
        if (auto c = rational_cmp(a.terms_[i].coef, b.terms_[i].coef); c != 0) return c;
    }
    return a.terms_.size() <=> b.terms_.size();
}

Surd min(const Surd& a, const Surd& b) { return b < a ? b : a; }
Surd max(const Surd& a, const Surd& b) { return a < b ? b : a; }

ExtSurd ext_min(const ExtSurd& a, const ExtSurd& b) {
    if (!a) return b;
    if (!b) return a;
    return min(*a, *b);
}

ExtSurd ext_add(const ExtSurd& a, const ExtSurd& b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

bool ext_less(const ExtSurd& a, const ExtSurd& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

bool ext_less_eq(const ExtSurd& a, const ExtSurd& b) { return !ext_less(b, a); }

std::string ext_to_string(const ExtSurd& a) { return a ? a->to_string() : std::string("inf"); }

} // namespace tbcalc
