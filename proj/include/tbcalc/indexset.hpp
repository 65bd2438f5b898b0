#pragma once

#include "tbcalc/number.hpp"

#include <string>
#include <vector>

namespace tbcalc {

struct Exponent {
    Surd re;
    Surd im;

    Exponent() = default;
    Exponent(Surd r, Surd i = Surd()) : re(std::move(r)), im(std::move(i)) {}
    Exponent(std::int64_t r) : re(r) {}

    Exponent conj() const { return {re, -im}; }
    std::string to_string() const;

    friend Exponent operator+(const Exponent& a, const Exponent& b) { return {a.re + b.re, a.im + b.im}; }
    friend Exponent operator-(const Exponent& a, const Exponent& b) { return {a.re - b.re, a.im - b.im}; }
    friend Exponent operator-(const Exponent& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Exponent& a, const Exponent& b) { return a.re == b.re && a.im == b.im; }
};

// Lexicographic (re, im).
bool exponent_less(const Exponent& a, const Exponent& b);

struct IndexPoint {
    Exponent z;
    int k = 0;

    std::string to_string() const;
    friend bool operator==(const IndexPoint& a, const IndexPoint& b) { return a.k == b.k && a.z == b.z; }
};

// Lexicographic (re, im, k).
bool point_less(const IndexPoint& a, const IndexPoint& b);

// True iff z - w is a nonnegative integer.
bool integer_above(const Exponent& z, const Exponent& w);

// An index set stored as its minimal generator antichain. A set may be a
// truncated view: it is then only known to agree with the true set at points
// with Re z <= bound(), and carries no generators beyond that.
class IndexSet {
public:
    IndexSet() = default;

    static IndexSet empty() { return IndexSet(); }
    static IndexSet n0();
    static IndexSet single(const Exponent& z, int k = 0);
    static IndexSet normalize(std::vector<IndexPoint> points, ExtSurd bound = std::nullopt);

    const std::vector<IndexPoint>& generators() const { return gens_; }
    const ExtSurd& bound() const { return bound_; }
    bool is_view() const { return bound_.has_value(); }
    bool is_empty() const { return gens_.empty(); }

    // Minimum real part over generators; nullopt (+inf) if there are none.
    ExtSurd min_re() const;
    // A guaranteed lower bound for the real parts of the true set.
    ExtSurd min_re_lower() const { return ext_min(min_re(), bound_); }

    bool contains(const IndexPoint& p) const;
    // Largest k with (z,k) in the set, or -1.
    int max_log(const Exponent& z) const;

    // Closed truncation: all maximal points (z, max_log(z)) with Re z <= c.
    std::vector<IndexPoint> truncate(const Surd& c) const;
    // Same set, but only claimed exact up to min(bound, c).
    IndexSet restricted(const Surd& c) const;

    IndexSet conj() const;
    // The set with the single point (0,0) removed; DomainError if that is not an index set.
    IndexSet without_origin() const;

    std::string to_string() const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.gens_ == b.gens_ && a.bound_ == b.bound_; }

private:
    std::vector<IndexPoint> gens_;
    ExtSurd bound_;
};

IndexSet add(const IndexSet& e, const IndexSet& f);
IndexSet shift(const IndexSet& e, const Exponent& c);
IndexSet set_union(const IndexSet& e, const IndexSet& f);
IndexSet extended_union(const IndexSet& e, const IndexSet& f);

// Both sets agree at every point with Re z <= c (requires both exact there).
bool same_below(const IndexSet& e, const IndexSet& f, const Surd& c);
// e is contained in f at every point with Re z <= c.
bool subset_below(const IndexSet& e, const IndexSet& f, const Surd& c);

IndexSet closure0(const IndexSet& e, const Surd& c);
IndexSet pxind0(const IndexSet& plus, const IndexSet& minus, const Surd& c);

struct Closure12 {
    IndexSet plus;
    IndexSet minus;
    IndexSet full;
};
Closure12 closure12(const IndexSet& plus, const IndexSet& minus, const Surd& c);

// Throws GapViolation unless the lower bounds of the two sets sum to more than `gap`.
void require_gap(const IndexSet& e, const IndexSet& f, const Rational& gap, const std::string& what);

std::string points_to_string(const std::vector<IndexPoint>& pts);

} // namespace tbcalc
