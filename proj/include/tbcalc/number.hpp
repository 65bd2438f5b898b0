#pragma once

#include <boost/container/small_vector.hpp>
#include <boost/rational.hpp>
#include <boost/safe_numerics/safe_integer.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tbcalc {

// Overflow throws std::exception-derived errors instead of wrapping.
using Int = boost::safe_numerics::safe<std::int64_t>;
using Rational = boost::rational<Int>;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

} // namespace tbcalc

// boost::rational's mixed (int, rational) equality recurses forever under
// C++20 reversed-operator rewriting; exact overloads take precedence.
namespace boost {
inline bool operator==(const rational<tbcalc::Int>& a, int b) { return a == tbcalc::make_rational(b); }
inline bool operator!=(const rational<tbcalc::Int>& a, int b) { return !(a == tbcalc::make_rational(b)); }
} // namespace boost

namespace tbcalc {

std::int64_t num_of(const Rational& q);
std::int64_t den_of(const Rational& q);

// Three-way comparison by cross multiplication; much cheaper than Rational's operator<.
std::strong_ordering rational_cmp(const Rational& a, const Rational& b);
Rational floor_of(const Rational& q);
Rational frac_of(const Rational& q);
double to_double(const Rational& q);
std::string to_string(const Rational& q);

// Accepts "3", "-3/4", "0.25", "-1.5".
std::optional<Rational> parse_rational(std::string_view text);

struct SurdTerm {
    std::int64_t rad; // squarefree, >= 2
    Rational coef;    // nonzero
};

// q + sum_i c_i sqrt(r_i) with distinct squarefree r_i. The representation is
// canonical, so structural equality is numeric equality.
class Surd {
public:
    using Terms = boost::container::small_vector<SurdTerm, 2>;

    Surd() = default;
    Surd(const Rational& q) : q_(q) {}
    Surd(std::int64_t v) : q_(make_rational(v)) {}

    static Surd sqrt_of(const Rational& x);

    const Rational& rational_part() const { return q_; }
    const Terms& terms() const { return terms_; }
    bool is_rational() const { return terms_.empty(); }
    Surd irrational_part() const;

    int sign() const;
    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    std::string to_string() const;

    Surd operator-() const;
    Surd& operator+=(const Surd& o);
    Surd& operator-=(const Surd& o);
    Surd& operator*=(const Rational& c);

    friend Surd operator+(Surd a, const Surd& b) { return a += b; }
    friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
    friend Surd operator*(Surd a, const Rational& c) { return a *= c; }
    friend Surd operator*(const Rational& c, Surd a) { return a *= c; }

    friend bool operator==(const Surd& a, const Surd& b);
    friend std::strong_ordering operator<=>(const Surd& a, const Surd& b);

    // Cheap representation order, used for grouping keys.
    static std::strong_ordering structural_compare(const Surd& a, const Surd& b);

private:
    Surd& accumulate(const Surd& o, bool negate);

    Rational q_{0};
    Terms terms_;
};

Surd min(const Surd& a, const Surd& b);
Surd max(const Surd& a, const Surd& b);

// Extended reals restricted to (-inf, +inf]; nullopt means +infinity.
using ExtSurd = std::optional<Surd>;
ExtSurd ext_min(const ExtSurd& a, const ExtSurd& b);
ExtSurd ext_add(const ExtSurd& a, const ExtSurd& b);
bool ext_less(const ExtSurd& a, const ExtSurd& b);
bool ext_less_eq(const ExtSurd& a, const ExtSurd& b);
std::string ext_to_string(const ExtSurd& a);

std::int64_t squarefree_part(std::int64_t n, std::int64_t* square_root_of_rest);

} // namespace tbcalc
