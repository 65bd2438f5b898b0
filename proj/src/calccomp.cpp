#include "tbcalc/calccomp.hpp"

namespace tbcalc {

namespace {

IndexSet eu(const IndexSet& a, const IndexSet& b) { return extended_union(a, b); }
IndexSet eu(const IndexSet& a, const IndexSet& b, const IndexSet& c) { return eu(eu(a, b), c); }
IndexSet eu(const IndexSet& a, const IndexSet& b, const IndexSet& c, const IndexSet& d) { return eu(eu(a, b, c), d); }
IndexSet eu(const IndexSet& a, const IndexSet& b, const IndexSet& c, const IndexSet& d, const IndexSet& e) {
    return eu(eu(a, b, c, d), e);
}

// E + F - 1
IndexSet add_down(const IndexSet& e, const IndexSet& f) { return shift(add(e, f), Exponent(-1)); }

} // namespace

BCollection compose_b(const BCollection& e, const BCollection& f) {
    require_gap(e.rb, f.lb, Rational(0), "b composition (rb+lb)");
    return {
        eu(e.lb, add(e.ff, f.lb)),
        eu(add(e.ff, f.ff), add(e.lb, f.rb)),
        eu(add(e.rb, f.ff), f.rb),
    };
}

ScbtCollection compose_scbt(const ScbtCollection& e, const ScbtCollection& f) {
    return {
        eu(add(e.lb0, f.zf), add(e.tf, f.lb0)),
        eu(add(e.zf, f.rb0), add(e.rb0, f.tf)),
        eu(add(e.lb0, f.rb0), add(e.tf, f.tf)),
        eu(add(e.zf, f.zf), add(e.rb0, f.lb0)),
    };
}

ChCollection compose_ch(const ChCollection& e, const ChCollection& f) {
    require_gap(e.rb, f.lb, Rational(0), "semiclassical cone composition (rb+lb)");
    return {
        eu(e.lb, add(e.ff, f.lb)),
        eu(add(e.ff, f.ff), add(e.lb, f.rb)),
        eu(add(e.rb, f.ff), f.rb),
        add(e.tf, f.tf),
    };
}

TbCollection compose_3b(const TbCollection& e, const TbCollection& f) {
    require_gap(e.rbD, f.lbD, Rational(0), "3b composition (rbD+lbD)");
    require_gap(e.rbT, f.lbT, Rational(1), "3b composition (rbT+lbT)");
    TbCollection g;
    g.ffD = eu(add(e.ffD, f.ffD), add(e.lbD, f.rbD), add_down(e.rf, f.lf));
    g.ffT = eu(add(e.ffT, f.ffT), add_down(e.if_, f.if_), add(e.lf, f.rf), add(e.lbT, f.rbT));
    g.lf = eu(add(e.ffT, f.lf), add_down(e.if_, f.lf), add(e.lf, f.ffD), add(e.lbT, f.rbD));
    g.rf = eu(add(e.rf, f.ffT), add_down(e.rf, f.if_), add(e.ffD, f.rf), add(e.lbD, f.rbT));
    g.lbD = eu(e.lbD, add(e.ffD, f.lbD), add_down(e.rf, f.lbT));
    g.rbD = eu(add(e.rbD, f.ffD), f.rbD, add_down(e.rbT, f.lf));
    g.lbT = eu(e.lbT, add(e.ffT, f.lbT), add_down(e.if_, f.lbT), add(e.lf, f.lbD));
    g.rbT = eu(add(e.rbT, f.ffT), f.rbT, add_down(e.rbT, f.if_), add(e.rbD, f.rf));
    g.if_ = eu(add_down(e.if_, f.if_), add(e.ffT, f.if_), add(e.if_, f.ffT), add(e.lf, f.rf), add(e.lbT, f.rbT));
    return g;
}

} // namespace tbcalc
