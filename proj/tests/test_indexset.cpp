#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "tbcalc/errors.hpp"
#include "tbcalc/indexset.hpp"

#include <random>

using namespace tbcalc;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return make_rational(n, d); }
IndexPoint pt(std::int64_t n, std::int64_t d, int k) { return {Exponent(Surd(q(n, d))), k}; }
IndexSet gen(std::vector<IndexPoint> p) { return IndexSet::normalize(std::move(p)); }
std::string show(const IndexSet& e) { return e.to_string(); }
std::string show(const std::vector<IndexPoint>& p) { return points_to_string(p); }

const IndexSet N0 = IndexSet::n0();
const IndexSet EMPTY;

} // namespace

TEST_CASE("normalize keeps the minimal antichain") {
    CHECK(show(gen({pt(0, 1, 0), pt(1, 1, 0)})) == "gen{(0,0)}");
    CHECK(show(gen({pt(0, 1, 0), pt(0, 1, 1)})) == "gen{(0,1)}");
    CHECK(show(gen({pt(1, 2, 0), pt(3, 2, 1), pt(5, 2, 1)})) == "gen{(1/2,0),(3/2,1)}");
    CHECK(show(gen({pt(5, 2, 1), pt(1, 2, 0), pt(3, 2, 1)})) == "gen{(1/2,0),(3/2,1)}");
    CHECK_THROWS_AS(gen({pt(0, 1, -1)}), DomainError);
}

TEST_CASE("contains follows the N0 action") {
    CHECK(N0.contains(pt(3, 1, 0)));
    CHECK_FALSE(gen({pt(0, 1, 1)}).contains(pt(0, 1, 2)));
    CHECK_FALSE(gen({pt(1, 2, 0)}).contains(pt(1, 1, 0)));
    CHECK_FALSE(N0.contains(pt(-1, 1, 0)));
    IndexSet c{gen({{Exponent(Surd(0), Surd(q(1, 2))), 0}})};
    CHECK(c.contains({Exponent(Surd(2), Surd(q(1, 2))), 0}));
    CHECK_FALSE(c.contains({Exponent(Surd(2), Surd(0)), 0}));
}

TEST_CASE("min_re") {
    CHECK_FALSE(EMPTY.min_re().has_value());
    CHECK(*N0.min_re() == Surd(0));
    CHECK(*gen({pt(1, 1, 0), pt(1, 2, 3)}).min_re() == Surd(q(1, 2)));
}

TEST_CASE("add") {
    CHECK(add(EMPTY, N0).is_empty());
    CHECK(add(N0, N0) == N0);
    CHECK(show(add(gen({pt(1, 1, 1)}), gen({pt(1, 2, 0)}))) == "gen{(3/2,1)}");
}

TEST_CASE("shift") {
    CHECK(show(shift(N0, Exponent(1))) == "gen{(1,0)}");
    CHECK(shift(EMPTY, Exponent(-1)).is_empty());
    CHECK(show(shift(gen({pt(0, 1, 2)}), Exponent(Surd(q(-1, 2))))) == "gen{(-1/2,2)}");
}

TEST_CASE("union") {
    IndexSet e = gen({pt(1, 3, 2), pt(2, 1, 0)});
    CHECK(set_union(e, EMPTY) == e);
    CHECK(show(set_union(N0, gen({pt(1, 1, 1)}))) == "gen{(0,0),(1,1)}");
    CHECK(show(set_union(gen({pt(1, 2, 0)}), N0)) == "gen{(0,0),(1/2,0)}");
}

TEST_CASE("extended union") {
    CHECK(show(extended_union(N0, N0)) == "gen{(0,1)}");
    IndexSet e = gen({pt(1, 3, 2), pt(2, 1, 0)});
    CHECK(extended_union(e, EMPTY) == e);
    CHECK(show(extended_union(N0, gen({pt(1, 2, 0)}))) == "gen{(0,0),(1/2,0)}");
    // Breakpoints from both sides: k jumps at 1 (E) and at 2 (F).
    CHECK(show(extended_union(gen({pt(0, 1, 0), pt(1, 1, 2)}), gen({pt(2, 1, 0)}))) == "gen{(0,0),(1,2),(2,3)}");
}

TEST_CASE("truncate is closed at the cutoff") {
    CHECK(show(N0.truncate(Surd(q(5, 2)))) == "{(0,0),(1,0),(2,0)}");
    CHECK(EMPTY.truncate(Surd(100)).empty());
    CHECK(show(gen({pt(1, 2, 0), pt(3, 2, 1)}).truncate(Surd(2))) == "{(1/2,0),(3/2,1)}");
    CHECK(show(N0.truncate(Surd(2))) == "{(0,0),(1,0),(2,0)}");
}

TEST_CASE("closure0") {
    IndexSet c = closure0(EMPTY, Surd(10));
    CHECK(c.is_empty());
    CHECK(c.is_view());
    // The iteration E eu (X+1) raises the log order by one per unit step.
    CHECK(show(closure0(N0, Surd(3)).truncate(Surd(3))) == "{(0,0),(1,1),(2,2),(3,3)}");
    CHECK(show(closure0(gen({pt(1, 2, 0)}), Surd(q(5, 2))).truncate(Surd(q(5, 2)))) == "{(1/2,0),(3/2,1),(5/2,2)}");
    CHECK_THROWS_AS(closure0(N0, Surd(3)).truncate(Surd(4)), TruncationError);
}

TEST_CASE("pxind0") {
    CHECK(show(pxind0(gen({pt(1, 1, 0)}), N0, Surd(2)).truncate(Surd(2))) == "{(0,0),(1,1),(2,2)}");
    CHECK(show(pxind0(EMPTY, EMPTY, Surd(10)).truncate(Surd(10))) == show(N0.truncate(Surd(10))));
    CHECK(show(pxind0(gen({pt(2, 1, 0)}), gen({pt(-1, 2, 0)}), Surd(3)).truncate(Surd(3))) ==
          "{(0,0),(1,0),(3/2,0),(2,0),(5/2,1),(3,0)}");
    CHECK_THROWS_AS(pxind0(N0, N0, Surd(3)), GapViolation);
    CHECK_THROWS_AS(pxind0(gen({pt(1, 2, 0)}), gen({pt(-1, 2, 0)}), Surd(3)), GapViolation);
}

TEST_CASE("pxind0 matches the oracle") {
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 60) {
        auto gp = oracle::random_gens(rng), gm = oracle::random_gens(rng);
        IndexSet p = gen(gp), m = gen(gm);
        ExtSurd s = ext_add(p.min_re(), m.min_re());
        if (s && s->sign() <= 0) continue;
        const Surd C(6);
        Surd cp = m.min_re() ? max(C, C - *m.min_re()) : C;
        Surd cm = p.min_re() ? max(C, C - *p.min_re()) : C;
        auto p0 = oracle::closure0(oracle::enumerate(gp, cp));
        auto m0 = oracle::closure0(oracle::enumerate(gm, cm));
        auto rest = oracle::ext_unite(oracle::sum(p0, m0, C), oracle::restrict_to(oracle::enumerate({pt(1, 1, 0)}, C), C));
        auto want = oracle::unite(oracle::n0(C), rest);
        INFO(show(p), " ", show(m));
        CHECK(oracle::agree(pxind0(p, m, C), want, C));
        ++checked;
    }
}

TEST_CASE("closure12 basics") {
    Closure12 r = closure12(EMPTY, EMPTY, Surd(10));
    CHECK(r.plus.is_empty());
    CHECK(r.minus.is_empty());
    CHECK(show(r.full.truncate(Surd(10))) == show(N0.truncate(Surd(10))));

    Closure12 s = closure12(gen({pt(1, 1, 0)}), N0, Surd(6));
    CHECK(*s.plus.min_re() == Surd(1));
    CHECK(*s.minus.min_re() == Surd(0));
    CHECK(Surd(1) <= *s.full.without_origin().min_re_lower());
    CHECK_THROWS_AS(closure12(N0, gen({pt(-1, 2, 0)}), Surd(3)), GapViolation);
}

namespace {

// Definition-level replay of the (1)- and (2)-sets on point maps. Only valid
// when the seeds have nonnegative real parts, so that truncated sums are complete.
struct Maps {
    oracle::PointMap plus, minus, full;
};

Maps closure12_oracle(const std::vector<IndexPoint>& ep, const std::vector<IndexPoint>& em, const Surd& u) {
    using namespace oracle;
    auto p0 = closure0(enumerate(ep, u));
    auto m0 = closure0(enumerate(em, u));
    auto e0p = ext_unite(sum(p0, m0, u), enumerate({pt(1, 1, 0)}, u));
    auto e0 = unite(n0(u), e0p);
    PointMap xp = p0, xm = m0, x = e0p;
    PointMap up = xp, um = xm, uu = x;
    while (!xp.k.empty() || !xm.k.empty() || !x.k.empty()) {
        PointMap nxp = ext_unite(sum(p0, x, u), sum(e0p, xp, u));
        PointMap nxm = ext_unite(sum(m0, x, u), sum(e0p, xm, u));
        PointMap nx = ext_unite(unite(sum(p0, xm, u), sum(m0, xp, u)), sum(e0p, x, u));
        xp = nxp;
        xm = nxm;
        x = nx;
        up = unite(up, xp);
        um = unite(um, xm);
        uu = unite(uu, x);
    }
    Maps out;
    out.plus = unite(unite(p0, up), ext_unite(sum(p0, uu, u), sum(up, e0, u)));
    out.minus = unite(unite(m0, um), ext_unite(sum(m0, uu, u), sum(um, e0, u)));
    auto e0u = sum(e0, uu, u);
    out.full = unite(unite(e0, uu), unite(ext_unite(e0u, sum(p0, um, u)), ext_unite(e0u, sum(m0, up, u))));
    return out;
}

std::vector<IndexPoint> nonnegative_gens(std::mt19937_64& rng) {
    auto g = oracle::random_gens(rng, 3);
    for (auto& p : g)
        if (p.z.re.sign() < 0) p.z.re = -p.z.re;
    return g;
}

} // namespace

TEST_CASE("closure12 matches the definition-level replay") {
    std::mt19937_64 rng(12);
    const Surd C(4);
    int checked = 0;
    std::vector<std::pair<std::vector<IndexPoint>, std::vector<IndexPoint>>> cases = {
        {{pt(1, 1, 0)}, {pt(0, 1, 0)}},
        {{pt(1, 2, 0)}, {pt(1, 4, 1)}},
        {{}, {pt(1, 3, 0)}},
    };
    while (cases.size() < 40) {
        auto a = nonnegative_gens(rng), b = nonnegative_gens(rng);
        ExtSurd s = ext_add(gen(a).min_re(), gen(b).min_re());
        if (s && s->sign() <= 0) continue;
        cases.emplace_back(a, b);
    }
    for (const auto& [a, b] : cases) {
        Closure12 r = closure12(gen(a), gen(b), C);
        Maps m = closure12_oracle(a, b, C);
        INFO(show(gen(a)), " ", show(gen(b)));
        CHECK(oracle::agree(r.plus, m.plus, C));
        CHECK(oracle::agree(r.minus, m.minus, C));
        CHECK(oracle::agree(r.full, m.full, C));
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("closure12 lower bounds on random seeds") {
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 40) {
        IndexSet p = gen(oracle::random_gens(rng, 3)), m = gen(oracle::random_gens(rng, 3));
        ExtSurd s = ext_add(p.min_re(), m.min_re());
        if (s && !(Surd(make_rational(1, 2)) < *s)) continue;
        Closure12 r = closure12(p, m, Surd(3));
        INFO(show(p), " ", show(m));
        CHECK(ext_less_eq(p.min_re(), r.plus.min_re()));
        CHECK(ext_less_eq(m.min_re(), r.minus.min_re()));
        ExtSurd floor_full = ext_min(Surd(1), s);
        CHECK(ext_less_eq(floor_full, r.full.without_origin().min_re()));
        CHECK(r.full.contains(pt(0, 1, 0)));
        ++checked;
    }
}

TEST_CASE("closure12 reports log order overflow instead of wrapping") {
    // A thin gap with negative seeds makes the iterated log orders grow geometrically.
    CHECK_THROWS_AS(closure12(gen({pt(1, 1, 3)}), gen({pt(-3, 4, 3), pt(7, 4, 1)}), Surd(3)), DomainError);
}

TEST_CASE("without_origin") {
    CHECK(show(N0.without_origin()) == "gen{(1,0)}");
    CHECK(show(gen({pt(0, 1, 0), pt(1, 2, 0)}).without_origin()) == "gen{(1/2,0),(1,0)}");
    CHECK_THROWS_AS(gen({pt(-1, 1, 0)}).without_origin(), DomainError);
    CHECK_THROWS_AS(gen({pt(0, 1, 1)}).without_origin(), DomainError);
    IndexSet e = gen({pt(1, 2, 0)});
    CHECK(e.without_origin() == e);
}

TEST_CASE("random expressions agree with brute-force enumeration") {
    std::mt19937_64 rng(2024);
    const Surd C(4);
    for (int i = 0; i < 300; ++i) {
        auto e = oracle::random_expr(rng, 1 + i % 4);
        INFO(e->to_string());
        CHECK(oracle::agree(oracle::engine(*e), oracle::eval(*e, C), C));
    }
}

TEST_CASE("algebraic laws below a cutoff") {
    std::mt19937_64 rng(7);
    const Surd C(5);
    for (int i = 0; i < 200; ++i) {
        IndexSet a = gen(oracle::random_gens(rng)), b = gen(oracle::random_gens(rng)), c = gen(oracle::random_gens(rng));
        INFO(show(a), " ", show(b), " ", show(c));
        CHECK(add(a, b) == add(b, a));
        CHECK(set_union(a, b) == set_union(b, a));
        CHECK(extended_union(a, b) == extended_union(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)));
        CHECK(extended_union(extended_union(a, b), c) == extended_union(a, extended_union(b, c)));
        CHECK(set_union(a, a) == a);
        CHECK(ext_min(a.min_re(), b.min_re()) == extended_union(a, b).min_re());
        CHECK(ext_add(a.min_re(), b.min_re()) == add(a, b).min_re());
        CHECK(add(a, N0) == a);
        CHECK(same_below(shift(shift(a, Exponent(Surd(make_rational(1, 3)))), Exponent(Surd(make_rational(-1, 3)))), a, C));
    }
}

TEST_CASE("operations are monotone") {
    std::mt19937_64 rng(8);
    const Surd C(5);
    for (int i = 0; i < 200; ++i) {
        IndexSet a = gen(oracle::random_gens(rng)), b = gen(oracle::random_gens(rng));
        IndexSet a2 = set_union(a, gen(oracle::random_gens(rng, 2))), b2 = set_union(b, gen(oracle::random_gens(rng, 2)));
        INFO(show(a), " ", show(b), " ", show(a2), " ", show(b2));
        CHECK(subset_below(a, a2, C));
        CHECK(subset_below(add(a, b), add(a2, b2), C));
        CHECK(subset_below(set_union(a, b), set_union(a2, b2), C));
        CHECK(subset_below(extended_union(a, b), extended_union(a2, b2), C));
        CHECK(subset_below(closure0(a, C), closure0(a2, C), C));
        CHECK(subset_below(a, extended_union(a, b), C));
    }
}

TEST_CASE("normalize is idempotent and order independent") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        auto g = oracle::random_gens(rng, 8);
        IndexSet a = gen(g);
        CHECK(gen(a.generators()) == a);
        std::shuffle(g.begin(), g.end(), rng);
        CHECK(gen(g) == a);
    }
}

TEST_CASE("contains agrees with generator dominance and enumeration") {
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> re(-16, 24), k(0, 5), imc(0, 3);
    const Surd U(7);
    for (int s = 0; s < 20; ++s) {
        auto g = oracle::random_gens(rng, 6);
        IndexSet a = gen(g);
        auto m = oracle::enumerate(g, U);
        for (int i = 0; i < 500; ++i) {
            Surd im = imc(rng) == 0 ? Surd(make_rational(1, 2)) : Surd();
            IndexPoint p{Exponent(Surd(make_rational(re(rng), 4)), im), k(rng)};
            bool dominated = false;
            for (const auto& h : g) dominated = dominated || (integer_above(p.z, h.z) && p.k <= h.k);
            CHECK(a.contains(p) == dominated);
            auto it = m.k.find(p.z);
            CHECK(a.contains(p) == (it != m.k.end() && p.k <= it->second));
        }
    }
}

TEST_CASE("closure0 is stable under one more step") {
    std::mt19937_64 rng(14);
    const Surd C(5);
    for (int i = 0; i < 100; ++i) {
        IndexSet a = gen(oracle::random_gens(rng));
        IndexSet x = closure0(a, C);
        INFO(show(a));
        CHECK(same_below(extended_union(a, shift(x, Exponent(1))), x, C));
        CHECK(subset_below(a, x, C));
        CHECK(x.min_re() == a.min_re());
    }
}

TEST_CASE("surd exponents") {
    Exponent s3(Surd::sqrt_of(make_rational(3)));
    IndexSet a = gen({{s3, 0}, {Exponent(1), 0}});
    CHECK(show(a) == "gen{(1,0),(sqrt(3),0)}");
    CHECK(a.contains({s3 + Exponent(2), 0}));
    CHECK_FALSE(a.contains({Exponent(2), 1}));
    CHECK(show(add(a, a)) == "gen{(2,0),(1+sqrt(3),0),(2*sqrt(3),0)}");
    CHECK(show(closure0(gen({{s3, 0}}), Surd(3)).truncate(Surd(3))) == "{(sqrt(3),0),(1+sqrt(3),1)}");
}
