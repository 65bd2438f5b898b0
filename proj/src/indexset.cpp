#include "tbcalc/indexset.hpp"

#include "tbcalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tbcalc {

namespace {

// Points z, w can only be related by the N0-action when they share this key.
struct ClassKey {
    Surd im;
    Surd irr;
    Rational frac;
};

ClassKey key_of(const Exponent& z) { return {z.im, z.re.irrational_part(), frac_of(z.re.rational_part())}; }

struct KeyLess {
    bool operator()(const ClassKey& a, const ClassKey& b) const {
        if (auto c = Surd::structural_compare(a.im, b.im); c != 0) return c < 0;
        if (auto c = Surd::structural_compare(a.irr, b.irr); c != 0) return c < 0;
        return rational_cmp(a.frac, b.frac) < 0;
    }
};

// Per residue class: generator positions (rational part of Re z) with log orders.
struct ClassData {
    Exponent rep;
    std::vector<std::pair<Rational, int>> e, f;
};

int max_k_at(const std::vector<std::pair<Rational, int>>& gens, const Rational& at) {
    int k = -1;
    for (const auto& [rp, kk] : gens) {
        if (rp <= at) k = std::max(k, kk);
    }
    return k;
}

int log_sum(int a, int b) {
    int out;
    if (__builtin_add_overflow(a, b, &out)) throw DomainError("log order overflow");
    return out;
}

Exponent rebuild(const Exponent& rep, const Rational& rp) { return {Surd(rp) + rep.re.irrational_part(), rep.im}; }

} // namespace

bool exponent_less(const Exponent& a, const Exponent& b) {
    if (auto c = a.re <=> b.re; c != 0) return c < 0;
    return a.im < b.im;
}

bool point_less(const IndexPoint& a, const IndexPoint& b) {
    if (auto c = a.z.re <=> b.z.re; c != 0) return c < 0;
    if (auto c = a.z.im <=> b.z.im; c != 0) return c < 0;
    return a.k < b.k;
}

bool integer_above(const Exponent& z, const Exponent& w) {
    if (!(z.im == w.im)) return false;
    Surd d = z.re - w.re;
    if (!d.is_rational()) return false;
    const Rational& q = d.rational_part();
    return den_of(q) == 1 && q >= 0;
}

std::string Exponent::to_string() const {
    std::string out = re.to_string();
    int s = im.sign();
    if (s > 0) out += "+(" + im.to_string() + ")i";
    if (s < 0) out += "-(" + (-im).to_string() + ")i";
    return out;
}

std::string IndexPoint::to_string() const { return "(" + z.to_string() + "," + std::to_string(k) + ")"; }

std::string points_to_string(const std::vector<IndexPoint>& pts) {
    std::string out = "{";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ",";
        out += pts[i].to_string();
    }
    return out + "}";
}

IndexSet IndexSet::n0() { return single(Exponent(0), 0); }

IndexSet IndexSet::single(const Exponent& z, int k) { return normalize({IndexPoint{z, k}}); }

IndexSet IndexSet::normalize(std::vector<IndexPoint> points, ExtSurd bound) {
    struct Item {
        ClassKey key;
        Rational rp;
        IndexPoint p;
    };
    std::vector<Item> items;
    items.reserve(points.size());
    for (auto& p : points) {
        if (p.k < 0) throw DomainError("negative log order in " + p.to_string());
        if (bound && *bound < p.z.re) continue;
        items.push_back({key_of(p.z), p.z.re.rational_part(), std::move(p)});
    }
    KeyLess kl;
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        if (kl(a.key, b.key)) return true;
        if (kl(b.key, a.key)) return false;
        if (auto c = rational_cmp(a.rp, b.rp); c != 0) return c < 0;
        return a.p.k > b.p.k;
    });
    IndexSet out;
    out.bound_ = std::move(bound);
    int maxk = -1;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i == 0 || kl(items[i - 1].key, items[i].key)) maxk = -1;
        if (items[i].p.k > maxk) {
            maxk = items[i].p.k;
            out.gens_.push_back(std::move(items[i].p));
        }
    }
    std::sort(out.gens_.begin(), out.gens_.end(), point_less);
    return out;
}

ExtSurd IndexSet::min_re() const {
    if (gens_.empty()) return std::nullopt;
    return gens_.front().z.re;
}

int IndexSet::max_log(const Exponent& z) const {
    if (bound_ && *bound_ < z.re) {
        throw TruncationError("membership of " + z.to_string() + " queried beyond the exactness bound " +
                              bound_->to_string());
    }
    int k = -1;
    for (const auto& g : gens_) {
        if (integer_above(z, g.z)) k = std::max(k, g.k);
    }
    return k;
}

bool IndexSet::contains(const IndexPoint& p) const { return p.k >= 0 && max_log(p.z) >= p.k; }

std::vector<IndexPoint> IndexSet::truncate(const Surd& c) const {
    if (bound_ && *bound_ < c) {
        throw TruncationError("set is exact only for Re <= " + bound_->to_string() + ", cannot truncate at " +
                              c.to_string());
    }
    std::vector<Exponent> zs;
    for (const auto& g : gens_) {
        Exponent z = g.z;
        while (z.re <= c) {
            zs.push_back(z);
            z.re += Surd(1);
        }
    }
    std::sort(zs.begin(), zs.end(), exponent_less);
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    std::vector<IndexPoint> out;
    out.reserve(zs.size());
    for (auto& z : zs) {
        int k = max_log(z);
        out.push_back({std::move(z), k});
    }
    return out;
}

IndexSet IndexSet::restricted(const Surd& c) const {
    IndexSet out;
    out.bound_ = ext_min(bound_, c);
    for (const auto& g : gens_) {
        if (g.z.re <= *out.bound_) out.gens_.push_back(g);
    }
    return out;
}

IndexSet IndexSet::conj() const {
    std::vector<IndexPoint> pts = gens_;
    for (auto& p : pts) p.z = p.z.conj();
    return normalize(std::move(pts), bound_);
}

IndexSet IndexSet::without_origin() const {
    const Exponent origin(0);
    if (bound_ && *bound_ < Surd(0)) throw TruncationError("origin lies beyond the exactness bound");
    if (max_log(origin) < 0) return *this;
    std::vector<IndexPoint> pts;
    bool found = false;
    for (const auto& g : gens_) {
        if (g.z == origin && g.k == 0) {
            found = true;
            pts.push_back({Exponent(1), 0});
        } else if (integer_above(origin, g.z)) {
            throw DomainError("removing (0,0) from a set generated by " + g.to_string() + " leaves no index set");
        } else {
            pts.push_back(g);
        }
    }
    if (!found) throw DomainError("(0,0) is not a generator; removing it leaves no index set");
    return normalize(std::move(pts), bound_);
}

std::string IndexSet::to_string() const {
    std::string out;
    if (gens_.empty()) {
        out = "empty";
    } else {
        out = "gen";
        out += points_to_string(gens_);
    }
    if (bound_) out += " @Re<=" + bound_->to_string();
    return out;
}

IndexSet add(const IndexSet& e, const IndexSet& f) {
    ExtSurd b = ext_min(ext_add(e.bound(), f.min_re_lower()), ext_add(f.bound(), e.min_re_lower()));
    std::vector<IndexPoint> pts;
    pts.reserve(e.generators().size() * f.generators().size());
    for (const auto& g : e.generators()) {
        for (const auto& h : f.generators()) {
            Exponent z = g.z + h.z;
            if (b && *b < z.re) continue;
            pts.push_back({std::move(z), log_sum(g.k, h.k)});
        }
    }
    return IndexSet::normalize(std::move(pts), b);
}

IndexSet shift(const IndexSet& e, const Exponent& c) {
    std::vector<IndexPoint> pts = e.generators();
    for (auto& p : pts) p.z = p.z + c;
    ExtSurd b = e.bound();
    if (b) *b += c.re;
    return IndexSet::normalize(std::move(pts), b);
}

IndexSet set_union(const IndexSet& e, const IndexSet& f) {
    std::vector<IndexPoint> pts = e.generators();
    pts.insert(pts.end(), f.generators().begin(), f.generators().end());
    return IndexSet::normalize(std::move(pts), ext_min(e.bound(), f.bound()));
}

IndexSet extended_union(const IndexSet& e, const IndexSet& f) {
    ExtSurd b = ext_min(e.bound(), f.bound());
    std::map<ClassKey, ClassData, KeyLess> classes;
    for (const auto& g : e.generators()) {
        auto [it, fresh] = classes.try_emplace(key_of(g.z));
        if (fresh) it->second.rep = g.z;
        it->second.e.emplace_back(g.z.re.rational_part(), g.k);
    }
    for (const auto& g : f.generators()) {
        auto it = classes.find(key_of(g.z));
        if (it != classes.end()) it->second.f.emplace_back(g.z.re.rational_part(), g.k);
    }
    std::vector<IndexPoint> pts = e.generators();
    pts.insert(pts.end(), f.generators().begin(), f.generators().end());
    for (const auto& [key, cd] : classes) {
        if (cd.f.empty()) continue;
        std::vector<Rational> breaks;
        for (const auto& [rp, k] : cd.e) breaks.push_back(rp);
        for (const auto& [rp, k] : cd.f) breaks.push_back(rp);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        for (const auto& at : breaks) {
            int ke = max_k_at(cd.e, at), kf = max_k_at(cd.f, at);
            if (ke >= 0 && kf >= 0) pts.push_back({rebuild(cd.rep, at), log_sum(log_sum(ke, kf), 1)});
        }
    }
    return IndexSet::normalize(std::move(pts), b);
}

bool same_below(const IndexSet& e, const IndexSet& f, const Surd& c) { return e.truncate(c) == f.truncate(c); }

bool subset_below(const IndexSet& e, const IndexSet& f, const Surd& c) {
    if (f.bound() && *f.bound() < c) throw TruncationError("subset test beyond the exactness bound");
    for (const auto& p : e.truncate(c)) {
        if (f.max_log(p.z) < p.k) return false;
    }
    return true;
}

void require_gap(const IndexSet& e, const IndexSet& f, const Rational& gap, const std::string& what) {
    ExtSurd s = ext_add(e.min_re_lower(), f.min_re_lower());
    if (s && !(Surd(gap) < *s)) {
        throw GapViolation(what + ": min Re sum " + s->to_string() + " is not > " + to_string(gap));
    }
}

IndexSet closure0(const IndexSet& e, const Surd& c) {
    Surd cc = e.bound() ? min(*e.bound(), c) : c;
    IndexSet base = e.restricted(cc);
    IndexSet x = base;
    const Exponent one(1);
    // Each pass fixes at least one more unit of Re, so this terminates below cc.
    for (int it = 0; it < 1000000; ++it) {
        IndexSet y = extended_union(base, shift(x, one)).restricted(cc);
        if (y.generators() == x.generators()) return y;
        x = std::move(y);
    }
    throw SolverFailure("closure0 did not stabilize");
}

IndexSet pxind0(const IndexSet& plus, const IndexSet& minus, const Surd& c) {
    require_gap(plus, minus, Rational(0), "pxind0");
    ExtSurd lp = plus.min_re_lower(), lm = minus.min_re_lower();
    Surd cp = lm ? max(c, c - *lm) : c;
    Surd cm = lp ? max(c, c - *lp) : c;
    IndexSet p0 = closure0(plus, cp), m0 = closure0(minus, cm);
    IndexSet s = extended_union(add(p0, m0), shift(IndexSet::n0(), Exponent(1)));
    return set_union(IndexSet::n0(), s).restricted(c);
}

namespace {

Surd abs_or_zero(const ExtSurd& v) {
    if (!v) return Surd();
    return v->sign() < 0 ? -*v : *v;
}

// The iterates start at (lp, lm, l) and advance by a min-plus recursion; they
// grow because ap+am > 0 and e > 0. Returns the number of rounds until all three
// exceed ci.
int rounds_until(const Surd& ap, const Surd& am, const Surd& e, const Surd& ci) {
    Surd lp = ap, lm = am, l = e;
    int j = 0;
    while (!(ci < lp && ci < lm && ci < l)) {
        if (++j > 100000) throw SolverFailure("closure12 iteration did not terminate");
        Surd nlp = min(ap + l, e + lp), nlm = min(am + l, e + lm), nl = min(min(ap + lm, am + lp), e + l);
        lp = nlp;
        lm = nlm;
        l = nl;
    }
    return j;
}

Closure12 closure12_at(const IndexSet& plus, const IndexSet& minus, const Surd& ci) {
    const IndexSet n0 = IndexSet::n0();
    // An empty seed behaves like one starting beyond everything that matters.
    Surd far = ci + Surd(1) + abs_or_zero(plus.min_re_lower()) + abs_or_zero(minus.min_re_lower());
    Surd ap = plus.min_re_lower().value_or(far), am = minus.min_re_lower().value_or(far);
    Surd e = min(Surd(1), ap + am);
    int rounds = rounds_until(ap, am, e, ci);

    // Every round adds a seed whose real parts may be negative by up to `neg`,
    // so round j must be exact (rounds - j + 1) * neg beyond ci.
    Surd neg = max(Surd(), max(-ap, -am));
    auto depth = [&](int j) { return ci + neg * make_rational(rounds - j + 1); };
    Surd deep = depth(-1);
    IndexSet p0 = closure0(plus, deep), m0 = closure0(minus, deep);
    IndexSet e0p = extended_union(add(p0, m0), shift(n0, Exponent(1))).restricted(deep);
    IndexSet e0 = set_union(n0, e0p);

    IndexSet xp = p0.restricted(depth(0)), xm = m0.restricted(depth(0)), x = e0p.restricted(depth(0));
    IndexSet up = xp, um = xm, u = x;
    for (int j = 1; j <= rounds; ++j) {
        IndexSet nxp = extended_union(add(p0, x), add(e0p, xp)).restricted(depth(j));
        IndexSet nxm = extended_union(add(m0, x), add(e0p, xm)).restricted(depth(j));
        IndexSet nx = extended_union(set_union(add(p0, xm), add(m0, xp)), add(e0p, x)).restricted(depth(j));
        xp = std::move(nxp);
        xm = std::move(nxm);
        x = std::move(nx);
        up = set_union(up, xp);
        um = set_union(um, xm);
        u = set_union(u, x);
    }
    Closure12 out;
    out.plus = set_union(set_union(p0, up), extended_union(add(p0, u), add(up, e0))).restricted(ci);
    out.minus = set_union(set_union(m0, um), extended_union(add(m0, u), add(um, e0))).restricted(ci);
    IndexSet e0u = add(e0, u);
    out.full = set_union(set_union(e0, u), set_union(extended_union(e0u, add(p0, um)), extended_union(e0u, add(m0, up))))
                   .restricted(ci);
    return out;
}

} // namespace

Closure12 closure12(const IndexSet& plus, const IndexSet& minus, const Surd& c) {
    require_gap(plus, minus, Rational(0), "closure12");
    Closure12 r = closure12_at(plus, minus, c);
    for (const IndexSet* s : {&r.plus, &r.minus, &r.full}) {
        if (s->bound() && *s->bound() < c) throw TruncationError("closure12 could not be made exact up to " + c.to_string());
    }
    return r;
}

} // namespace tbcalc
