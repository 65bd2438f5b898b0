#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "collections.hpp"
#include "tbcalc/errors.hpp"
#include "tbcalc/json_io.hpp"

using namespace tbcalc;
using namespace testgen;

namespace {

IndexPoint pt(std::int64_t n, std::int64_t d, int k) { return {Exponent(Surd(make_rational(n, d))), k}; }
IndexSet gen(std::vector<IndexPoint> p) { return IndexSet::normalize(std::move(p)); }
const IndexSet N0 = IndexSet::n0();
const IndexSet EMPTY;
const Surd C5(5);

} // namespace

TEST_CASE("b composition examples") {
    BCollection id = BCollection::identity();
    BCollection g = compose_b(id, id);
    CHECK(g.lb.is_empty());
    CHECK(g.ff == N0);
    CHECK(g.rb.is_empty());

    BCollection e{gen({pt(1, 1, 0)}), N0, EMPTY}, f{EMPTY, N0, gen({pt(2, 1, 0)})};
    BCollection h = compose_b(e, f);
    CHECK(h.lb.to_string() == "gen{(1,0)}");
    CHECK(h.ff.to_string() == "gen{(0,0),(3,1)}");
    CHECK(h.rb.to_string() == "gen{(2,0)}");

    CHECK_THROWS_AS(compose_b({EMPTY, EMPTY, N0}, {N0, EMPTY, EMPTY}), GapViolation);
}

TEST_CASE("sc-b-transition composition examples") {
    ScbtCollection id = ScbtCollection::identity();
    ScbtCollection g = compose_scbt(id, id);
    CHECK(g.lb0.is_empty());
    CHECK(g.rb0.is_empty());
    CHECK(g.tf == N0);
    CHECK(g.zf == N0);

    ScbtCollection e{gen({pt(1, 1, 0)}), EMPTY, N0, N0}, f{EMPTY, gen({pt(1, 1, 0)}), N0, N0};
    CHECK(compose_scbt(e, f).tf.to_string() == "gen{(0,0),(2,1)}");

    ScbtCollection a{EMPTY, N0, EMPTY, EMPTY}, b{N0, EMPTY, EMPTY, EMPTY};
    CHECK(compose_scbt(a, b).zf == N0);
    // No positivity hypothesis for this law.
    ScbtCollection neg{gen({pt(-2, 1, 0)}), gen({pt(-2, 1, 0)}), N0, N0};
    CHECK_NOTHROW(compose_scbt(neg, neg));
}

TEST_CASE("semiclassical cone composition examples") {
    ChCollection id = ChCollection::identity();
    ChCollection g = compose_ch(id, id);
    CHECK(g.lb.is_empty());
    CHECK(g.ff == N0);
    CHECK(g.rb.is_empty());
    CHECK(g.tf == N0);

    // The ff cross term pairs E_lb with F_rb, both empty here.
    ChCollection e{EMPTY, N0, gen({pt(1, 1, 0)}), N0}, f{gen({pt(1, 2, 0)}), N0, EMPTY, N0};
    ChCollection h = compose_ch(e, f);
    CHECK(h.ff == N0);
    CHECK(h.rb.to_string() == "gen{(1,0)}");
    CHECK(h.lb.to_string() == "gen{(1/2,0)}");

    ChCollection t1{EMPTY, EMPTY, EMPTY, gen({pt(1, 1, 0)})}, t2{EMPTY, EMPTY, EMPTY, gen({pt(2, 1, 0)})};
    CHECK(compose_ch(t1, t2).tf.to_string() == "gen{(3,0)}");
}

TEST_CASE("3b composition examples") {
    TbCollection id = TbCollection::identity();
    TbCollection g = compose_3b(id, id);
    CHECK(g.ffD == N0);
    CHECK(g.ffT == N0);
    for (std::size_t i = 2; i < 9; ++i) CHECK(g.faces()[i]->is_empty());

    TbCollection e, f;
    e.rbT = gen({pt(1, 2, 0)});
    f.lbT = gen({pt(1, 2, 0)});
    try {
        compose_3b(e, f);
        FAIL("expected a gap violation");
    } catch (const GapViolation& err) {
        CHECK(std::string(err.what()).find("rbT+lbT") != std::string::npos);
    }
    e.rbT = EMPTY;
    e.rbD = gen({pt(0, 1, 0)});
    f.lbD = N0;
    try {
        compose_3b(e, f);
        FAIL("expected a gap violation");
    } catch (const GapViolation& err) {
        CHECK(std::string(err.what()).find("rbD+lbD") != std::string::npos);
    }
}

TEST_CASE("the laws match a point-enumeration oracle") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        auto e = random_b(rng), f = random_b(rng);
        INFO(to_string(e), " | ", to_string(f));
        CHECK(agree_all(compose_b(e, f), oracle_b(e, f, C5), C5));
    }
    for (int i = 0; i < 50; ++i) {
        auto e = random_scbt(rng), f = random_scbt(rng);
        INFO(to_string(e), " | ", to_string(f));
        CHECK(agree_all(compose_scbt(e, f), oracle_scbt(e, f, C5), C5));
    }
    for (int i = 0; i < 50; ++i) {
        auto e = random_ch(rng), f = random_ch(rng);
        INFO(to_string(e), " | ", to_string(f));
        CHECK(agree_all(compose_ch(e, f), oracle_ch(e, f, C5), C5));
    }
    for (int i = 0; i < 50; ++i) {
        auto e = random_tb(rng), f = random_tb(rng);
        INFO(to_string(e), " | ", to_string(f));
        CHECK(agree_all(compose_3b(e, f), oracle_3b(e, f, C5), C5));
    }
}

TEST_CASE("identity laws") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 50; ++i) {
        auto b = random_b(rng);
        CHECK(same_below(compose_b(BCollection::identity(), b), b, C5));
        CHECK(same_below(compose_b(b, BCollection::identity()), b, C5));
        auto s = random_scbt(rng);
        CHECK(same_below(compose_scbt(ScbtCollection::identity(), s), s, C5));
        CHECK(same_below(compose_scbt(s, ScbtCollection::identity()), s, C5));
        auto c = random_ch(rng);
        CHECK(same_below(compose_ch(ChCollection::identity(), c), c, C5));
        CHECK(same_below(compose_ch(c, ChCollection::identity()), c, C5));
        auto t = random_tb(rng);
        INFO(to_string(t));
        CHECK(same_below(compose_3b(TbCollection::identity(), t), t, C5));
        CHECK(same_below(compose_3b(t, TbCollection::identity()), t, C5));
    }
}

TEST_CASE("monotonicity in each argument") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 30; ++i) {
        auto e = random_tb(rng), f = random_tb(rng);
        auto e2 = face_union(e, random_tb(rng)), f2 = face_union(f, random_tb(rng));
        CHECK(subset_below(compose_3b(e, f), compose_3b(e2, f), C5));
        CHECK(subset_below(compose_3b(e, f), compose_3b(e, f2), C5));
        auto b = random_b(rng), c = random_b(rng);
        auto b2 = face_union(b, random_b(rng));
        CHECK(subset_below(compose_b(b, c), compose_b(b2, c), C5));
        auto s = random_scbt(rng), t = random_scbt(rng);
        auto s2 = face_union(s, random_scbt(rng));
        CHECK(subset_below(compose_scbt(s, t), compose_scbt(s2, t), C5));
        auto h = random_ch(rng), k = random_ch(rng);
        auto h2 = face_union(h, random_ch(rng));
        CHECK(subset_below(compose_ch(h, k), compose_ch(h2, k), C5));
    }
}

TEST_CASE("rbD lower bound is preserved") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 100; ++i) {
        auto e = random_tb(rng), f = random_tb(rng);
        ExtSurd a = ext_min(e.rbD.min_re(), f.rbD.min_re());
        if (!a) continue;
        // The third rbD term carries rbT + lf - 1; require it to respect the bound too.
        if (ext_less(ext_add(ext_add(e.rbT.min_re(), f.lf.min_re()), Surd(-1)), a)) continue;
        CHECK(ext_less_eq(a, compose_3b(e, f).rbD.min_re()));
    }
}

TEST_CASE("collections round-trip through JSON by face name") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 30; ++i) {
        auto t = random_tb(rng);
        Json j = collection_to_json(t);
        CHECK(j.contains("ffD"));
        CHECK(j.contains("if"));
        auto back = collection_from_json<TbCollection>(Json::parse(j.dump()));
        for (std::size_t k = 0; k < 9; ++k) CHECK(*back.faces()[k] == *t.faces()[k]);
    }
    Json j = Json::parse(R"({"lb":[[[1,2,0,1],0]],"ff":[[[0,1,0,1],0]]})");
    auto b = collection_from_json<BCollection>(j);
    CHECK(b.lb.to_string() == "gen{(1/2,0)}");
    CHECK(b.rb.is_empty());
    CHECK_THROWS_AS(collection_from_json<BCollection>(Json::parse(R"({"zz":[]})")), UsageError);
    CHECK_THROWS_AS(collection_from_json<BCollection>(Json::parse(R"({"lb":[[[1,0,0,1],0]]})")), UsageError);

    Exponent s{Surd(1) + Surd::sqrt_of(make_rational(2)), Surd(make_rational(1, 2))};
    CHECK(exponent_from_json(exponent_to_json(s)) == s);
    CHECK(exponent_to_json(s).dump() == R"([1,1,1,2,{"re_surd":[[2,1,1]]}])");
}

TEST_CASE("the laws are not associative as exact index sets") {
    // Left bracketing keeps an E_lb + F_rb + H_lb contribution at lb that the
    // right bracketing never forms.
    IndexSet half = gen({pt(1, 2, 0)});
    BCollection e{half, N0, EMPTY}, f{EMPTY, N0, half}, h{half, N0, EMPTY};
    BCollection left = compose_b(compose_b(e, f), h), right = compose_b(e, compose_b(f, h));
    CHECK(left.lb.to_string() == "gen{(1/2,1),(3/2,2)}");
    CHECK(right.lb.to_string() == "gen{(1/2,1)}");
    CHECK(subset_below(right, left, C5));
}
