#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "tbcalc/dsl.hpp"
#include "tbcalc/errors.hpp"

#include <random>

using namespace tbcalc;

namespace {

std::string run(std::string_view text) { return render(evaluate_dsl(text)); }

std::size_t error_position(std::string_view text) {
    try {
        evaluate_dsl(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

} // namespace

TEST_CASE("atoms") {
    CHECK(run("empty") == "empty");
    CHECK(run("N0") == "gen{(0,0)}");
    CHECK(run("gen[]") == "empty");
    CHECK(run("gen[(1/2,0),(3/2,1),(5/2,1)]") == "gen{(1/2,0),(3/2,1)}");
    CHECK(run("gen[(0.25,2)]") == "gen{(1/4,2)}");
    CHECK(run("gen[(-1,0)]") == "gen{(-1,0)}");
}

TEST_CASE("operations") {
    CHECK(run("eu(N0,N0)") == "gen{(0,1)}");
    CHECK(run("add(empty,N0)") == "empty");
    CHECK(run("cup(N0,gen[(1,1)])") == "gen{(0,0),(1,1)}");
    CHECK(run("shift(gen[(0,2)],-1/2)") == "gen{(-1/2,2)}");
    CHECK(run("trunc(c0(N0,3),3)") == "{(0,0),(1,1),(2,2),(3,3)}");
    CHECK(run("c0(N0,3)") == "gen{(0,0),(1,1),(2,2),(3,3)} @Re<=3");
    CHECK(run("trunc(px0(gen[(1,0)],N0,2),2)") == "{(0,0),(1,1),(2,2)}");
    CHECK(run("trunc(N0, 2.5)") == "{(0,0),(1,0),(2,0)}");
}

TEST_CASE("c12 projections") {
    CHECK(run("c12(empty,empty,10).plus") == "empty @Re<=10");
    CHECK(run("trunc(c12(gen[(1,0)],N0,2).plus,1)") == "{(1,0)}");
    std::string all = run("c12(empty,empty,2)");
    CHECK(all == "plus: empty @Re<=2\nminus: empty @Re<=2\nfull: gen{(0,0)} @Re<=2");
    CHECK_THROWS_AS(run("add(c12(N0,gen[(1,0)],2),N0)"), ParseError);
    CHECK_THROWS_AS(run("N0.plus"), ParseError);
}

TEST_CASE("complex and surd exponents") {
    CHECK(run("gen[(1+(1/2)i,0)]") == "gen{(1+(1/2)i,0)}");
    CHECK(run("gen[(1-(1/2)i,0)]") == "gen{(1-(1/2)i,0)}");
    CHECK(run("gen[((2)i,1)]") == "gen{(0+(2)i,1)}");
    CHECK(run("gen[(1+sqrt(3),0)]") == "gen{(1+sqrt(3),0)}");
    CHECK(run("gen[(1/2-3/2*sqrt(5),0)]") == "gen{(1/2-3/2*sqrt(5),0)}");
    CHECK(run("gen[(sqrt(8),0)]") == "gen{(2*sqrt(2),0)}");
    CHECK(run("shift(N0,1+(1)i)") == "gen{(1+(1)i,0)}");
    CHECK(parse_real("1+2*sqrt(3)-sqrt(3)") == Surd(1) + Surd::sqrt_of(make_rational(3)));
}

TEST_CASE("whitespace is ignored") {
    CHECK(run("  eu ( N 0 , N0 ) ") == "gen{(0,1)}");
    CHECK(run("gen [ ( 1 / 2 , 0 ) ]") == "gen{(1/2,0)}");
}

TEST_CASE("printed sets parse back") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        IndexSet e = IndexSet::normalize(oracle::random_gens(rng, 6));
        std::string body = points_to_string(e.generators());
        std::string text = "gen[" + body.substr(1, body.size() - 2) + "]";
        INFO(text);
        CHECK(std::get<IndexSet>(evaluate_dsl(text)) == e);
    }
}

TEST_CASE("parse errors carry the position in the original text") {
    CHECK(error_position("add(N0,,N0)") == 7);
    CHECK(error_position("add( N0 , foo )") == 10);
    CHECK(error_position("eu(N0,N0) x") == 10);
    CHECK(error_position("gen[(1/0,0)]") == 5);
    CHECK(error_position("gen[(1,-1)]") == 7);
    CHECK(error_position("c0(N0)") == 5);
    CHECK(error_position("") == 0);
    CHECK(error_position("add(N0,N0") == 9);
    CHECK_THROWS_AS(run("trunc(trunc(N0,1),1)"), ParseError);
    CHECK_THROWS_AS(parse_real("1/2x"), ParseError);
    CHECK_THROWS_AS(parse_real("--1"), ParseError);
}

TEST_CASE("semantic errors are not parse errors") {
    CHECK_THROWS_AS(run("px0(N0,N0,3)"), GapViolation);
    CHECK_THROWS_AS(run("c12(N0,gen[(-1/2,0)],3)"), GapViolation);
    CHECK_THROWS_AS(run("trunc(c0(N0,3),4)"), TruncationError);
}
