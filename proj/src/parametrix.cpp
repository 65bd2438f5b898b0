#include "tbcalc/parametrix.hpp"

#include <algorithm>
#include <cmath>

namespace tbcalc {

namespace {

Exponent re_exp(const Rational& q) { return Exponent(Surd(q)); }
IndexSet plus_q(const IndexSet& e, const Rational& q) { return shift(e, re_exp(q)); }
Rational abs_q(const Rational& q) { return q < 0 ? -q : q; }

template <class C>
C restrict_all(C c, const Surd& bound) {
    for (IndexSet* s : c.faces()) *s = s->restricted(bound);
    return c;
}

} // namespace

// ---------------------------------------------------------------- simpler calculi

BCollection b_parametrix_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c) {
    require_gap(plus, minus, Rational(0), "b parametrix");
    return restrict_all(BCollection{closure0(plus, c), pxind0(plus, minus, c), closure0(minus, c)}, c);
}

ScbtCollection scbt_inverse_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c) {
    require_gap(plus, minus, Rational(0), "sc-b transition inverse");
    Closure12 cl = closure12(plus, minus, c);
    return restrict_all(ScbtCollection{cl.plus, cl.minus, cl.full, cl.full}, c);
}

ChCollection ch_inverse_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c) {
    BCollection b = b_parametrix_sets(plus, minus, c);
    return restrict_all(ChCollection{b.lb, b.ff, b.rb, IndexSet::n0()}, c);
}

EbdCollection ebD_inverse_sets(const IndexSet& ed_plus, const IndexSet& ed_minus, const IndexSet& er_plus,
                               const IndexSet& er_minus, const Surd& c) {
    require_gap(er_plus, er_minus, Rational(0), "edge-b inverse");
    EbdCollection e;
    e.lb_b = ed_plus;
    e.ff_b = IndexSet::n0();
    e.rb_b = ed_minus;
    e.lb_e = closure0(er_plus, c);
    e.ff_e = extended_union(IndexSet::n0(), plus_q(pxind0(er_plus, er_minus, c), Rational(1)));
    e.rb_e = plus_q(closure0(er_minus, c), Rational(1));
    return restrict_all(e, c);
}

// ---------------------------------------------------------------- parameters

Rational ParametrixParams::betaT_delta() const { return std::min(betaT_plus - betaT_minus, Rational(1)); }
Rational ParametrixParams::b() const { return std::min(beta - betaT_minus, betaT_plus - beta); }

bool ParametrixParams::is_forbidden(const Rational& alpha) const {
    if (forbidden) return forbidden(alpha);
    try {
        ed_plus(alpha);
    } catch (const ForbiddenWeight&) {
        return true;
    }
    return false;
}

namespace {

// Largest ladder index worth clearing for the step `eps`.
Rational ladder_reach(const ParametrixParams& p) {
    return p.c + abs_q(p.alpha_d) + std::max(abs_q(p.betaT_minus), abs_q(p.betaT_plus)) + Rational(4);
}

// Index j >= 1 of the first forbidden rung alpha_D + dir*j*eps with j*eps <= reach.
std::optional<int> blocked_rung(const ParametrixParams& p, int dir, const Rational& eps) {
    Rational reach = ladder_reach(p);
    int j = 1;
    for (Rational step = eps; step <= reach; step += eps, ++j) {
        if (p.is_forbidden(p.alpha_d + Rational(dir) * step)) return j;
    }
    return std::nullopt;
}

} // namespace

void ParametrixParams::validate() const {
    if (!ed_plus || !ed_minus) throw UsageError("parametrix parameters need both D-seed functions");
    if (!(betaT_minus < beta && beta < betaT_plus)) {
        throw DomainError("beta=" + to_string(beta) + " lies outside (" + to_string(betaT_minus) + ", " +
                          to_string(betaT_plus) + ")");
    }
    if (c < 0) throw UsageError("truncation bound must be nonnegative");
    if (work_margin <= 0) throw UsageError("working margin must be positive");
    if (is_forbidden(alpha_d)) throw ForbiddenWeight("alpha_D=" + to_string(alpha_d) + " lies in the forbidden set");
    if (epsilon == 0) return;
    Rational cap = std::min(betaT_delta() / 2, b());
    if (epsilon < 0 || epsilon > cap) {
        throw DomainError("epsilon=" + to_string(epsilon) + " must lie in (0, " + to_string(cap) + "]");
    }
}

ParametrixParams ParametrixParams::adjoint() const {
    ParametrixParams a = *this;
    a.et_plus = plus_q(et_minus.conj(), Rational(-1));
    a.et_minus = plus_q(et_plus.conj(), Rational(1));
    WeightedSets dp = ed_plus, dm = ed_minus;
    a.ed_plus = [dm](const Rational& x) { return dm(-x).conj(); };
    a.ed_minus = [dp](const Rational& x) { return dp(-x).conj(); };
    if (forbidden) {
        auto f = forbidden;
        a.forbidden = [f](const Rational& x) { return f(-x); };
    }
    a.alpha_d = -alpha_d;
    a.beta = -beta - 1;
    a.betaT_minus = -betaT_plus - 1;
    a.betaT_plus = -betaT_minus - 1;
    return a;
}

Rational select_epsilon(const ParametrixParams& p) {
    Rational delta = p.betaT_delta() / 2, b = p.b();
    Rational eps(1);
    std::optional<Rational> first, late;
    for (int m = 0; m < 40; ++m, eps /= 2) {
        if (!(eps < delta && eps < b)) continue;
        if (!first) first = eps;
        // The left parametrix runs the ladder of the adjoint, i.e. downwards from alpha_D.
        auto right = blocked_rung(p, 1, eps), left = blocked_rung(p, -1, eps);
        if (!right && !left) return eps;
        // A nudge at the first rung shifts the b-face bounds, later nudges are harmless.
        if (!late && (!right || *right > 1) && (!left || *left > 1)) late = eps;
        // Dyadic weights meet integer roots on every dyadic ladder; stop looking
        // a few halvings past the first admissible step and nudge instead.
        if (eps * 16 < *first) break;
    }
    if (late) return *late;
    if (first) return *first;
    throw DomainError("no step 1/2^m satisfies the gap constraints");
}

Rational ladder_weight(const ParametrixParams& p, int j) {
    Rational nominal = p.alpha_d + Rational(j) * p.epsilon;
    if (!p.is_forbidden(nominal)) return nominal;
    if (j == 0) throw ForbiddenWeight("alpha_D=" + to_string(nominal) + " lies in the forbidden set");
    Rational delta = p.epsilon;
    for (int k = 0; k < 40; ++k) {
        delta /= 2;
        Rational a = nominal - delta;
        if (p.is_forbidden(a)) continue;
        ExtSurd lo = p.ed_plus(a).min_re_lower();
        if (!lo || Surd(nominal) <= *lo) return a;
    }
    throw ForbiddenWeight("no weight just below the forbidden rung " + to_string(nominal));
}

// ---------------------------------------------------------------- checks

Json BoundCheck::to_json() const {
    Json j = Json::object();
    j["bound"] = bound;
    j["face"] = origin_excluded ? face + "\\(0,0)" : face;
    j["j"] = this->j;
    j["relation"] = relation;
    j["required"] = ext_to_string(required);
    j["achieved"] = ext_to_string(achieved);
    j["pass"] = pass;
    return j;
}

namespace {

const BoundCheck* first_failed(const std::vector<BoundCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

enum Face { FFD, FFT, LF, RF, LBD, RBD, LBT, RBT, IF, NFACES };

IndexSet& face_of(TbCollection& c, int f) { return *c.faces()[f]; }
const IndexSet& face_of(const TbCollection& c, int f) { return *c.faces()[f]; }

using Bounds = std::array<ExtSurd, NFACES>;

ExtSurd plus_e(const ExtSurd& a, const Rational& q) { return a ? ExtSurd(*a + Surd(q)) : std::nullopt; }
ExtSurd ex(const Rational& q) { return Surd(q); }

// Lower bounds of the composite as the composition law forms it; -1 marks a
// term with only one factor.
struct Term {
    int e, f, shift;
};
const std::array<std::vector<Term>, NFACES> kLaw{{
    {{FFD, FFD, 0}, {LBD, RBD, 0}, {RF, LF, -1}},
    {{FFT, FFT, 0}, {IF, IF, -1}, {LF, RF, 0}, {LBT, RBT, 0}},
    {{FFT, LF, 0}, {IF, LF, -1}, {LF, FFD, 0}, {LBT, RBD, 0}},
    {{RF, FFT, 0}, {RF, IF, -1}, {FFD, RF, 0}, {LBD, RBT, 0}},
    {{LBD, -1, 0}, {FFD, LBD, 0}, {RF, LBT, -1}},
    {{RBD, FFD, 0}, {-1, RBD, 0}, {RBT, LF, -1}},
    {{LBT, -1, 0}, {FFT, LBT, 0}, {IF, LBT, -1}, {LF, LBD, 0}},
    {{RBT, FFT, 0}, {-1, RBT, 0}, {RBT, IF, -1}, {RBD, RF, 0}},
    {{IF, IF, -1}, {FFT, IF, 0}, {IF, FFT, 0}, {LF, RF, 0}, {LBT, RBT, 0}},
}};

// Lower bounds for the two-factor terms of e o f (single-factor terms left out).
Bounds propagate(const Bounds& e, const Bounds& f) {
    Bounds g;
    for (int x = 0; x < NFACES; ++x) {
        ExtSurd lo;
        for (const Term& t : kLaw[x]) {
            if (t.e < 0 || t.f < 0) continue;
            lo = ext_min(lo, plus_e(ext_add(e[t.e], f[t.f]), Rational(t.shift)));
        }
        g[x] = lo;
    }
    return g;
}

bool all_above(const Bounds& b, std::initializer_list<int> faces, const Surd& c) {
    for (int f : faces)
        if (b[f] && !(c < *b[f])) return false;
    return true;
}

// Least real part at Re <= c. With the origin excluded, (0,0) is skipped: the
// next element at 0 would have to be (0,1), and the face is closed under +1.
ExtSurd achieved_min(const IndexSet& s, const Surd& c, bool exclude_origin) {
    ExtSurd lo;
    for (const auto& p : s.truncate(c)) {
        if (exclude_origin && p.k == 0 && p.z == Exponent(0)) continue;
        lo = ext_min(lo, p.z.re);
    }
    return lo;
}

class Checker {
public:
    Checker(std::vector<BoundCheck>& out, const Surd& c, bool strict) : out_(out), c_(c), strict_(strict) {}

    void at_least(const std::string& bound, const char* face, int j, const IndexSet& s, const ExtSurd& req,
                  bool strict_ineq = false, bool exclude_origin = false) {
        BoundCheck k;
        k.bound = bound;
        k.face = face;
        k.j = j;
        k.relation = strict_ineq ? ">" : ">=";
        k.origin_excluded = exclude_origin;
        k.required = req;
        k.achieved = achieved_min(s, c_, exclude_origin);
        if (!k.achieved) k.pass = true;
        else if (!req) k.pass = false;
        else k.pass = strict_ineq ? *req < *k.achieved : *req <= *k.achieved;
        record(std::move(k));
    }

    void empty(const std::string& bound, const char* face, int j, const IndexSet& s) {
        BoundCheck k;
        k.bound = bound;
        k.face = face;
        k.j = j;
        k.relation = "empty";
        if (s.bound() && *s.bound() < c_) s.truncate(c_);  // throws TruncationError
        k.achieved = s.min_re();
        k.pass = s.is_empty();
        record(std::move(k));
    }

    // One bound per face; a missing entry (+inf) requires the face to be empty.
    void collection(const std::string& bound, int j, const TbCollection& col, const std::array<ExtSurd, NFACES>& req,
                    const std::array<bool, NFACES>& strict_ineq = {}, const std::array<bool, NFACES>& excl = {}) {
        for (int f = 0; f < NFACES; ++f) {
            if (!req[f]) empty(bound, TbCollection::names[f], j, face_of(col, f));
            else at_least(bound, TbCollection::names[f], j, face_of(col, f), req[f], strict_ineq[f], excl[f]);
        }
    }

private:
    void record(BoundCheck k) {
        out_.push_back(k);
        if (!k.pass && strict_) {
            throw BoundViolation(k.face, k.bound, k.j,
                                 "required " + k.relation + " " + ext_to_string(k.required) + ", achieved " +
                                     ext_to_string(k.achieved));
        }
    }

    std::vector<BoundCheck>& out_;
    Surd c_;
    bool strict_;
};

// Everything derived from the T-seeds, computed once per working bound.
struct Ledger {
    const ParametrixParams& p;
    Surd c, w;
    IndexSet c0p, c0m, px0, plus2, minus2, full2, full2p;
    TbCollection etq;

    Ledger(const ParametrixParams& params, const Rational& work)
        : p(params), c(params.c), w(work) {
        c0p = closure0(p.et_plus, w);
        c0m = closure0(p.et_minus, w);
        px0 = pxind0(p.et_plus, p.et_minus, w);
        Closure12 cl = closure12(p.et_plus, p.et_minus, w);
        plus2 = cl.plus;
        minus2 = cl.minus;
        full2 = cl.full;
        full2p = full2.without_origin();

        etq.ffD = full2;
        etq.ffT = IndexSet::n0();
        etq.lf = minus2;
        etq.rf = plus_q(plus2, Rational(1));
        etq.if_ = plus_q(full2p, Rational(1));
        etq = restrict_all(etq, w);
    }

    IndexSet edp(const Rational& a) const { return p.ed_plus(a).restricted(w); }
    IndexSet edm(const Rational& a) const { return p.ed_minus(a).restricted(w); }

    TbCollection edq(const Rational& a) const {
        TbCollection d;
        IndexSet dp = edp(a);
        d.ffD = IndexSet::n0();
        d.ffT = extended_union(IndexSet::n0(), plus_q(px0, Rational(1)));
        d.lf = c0m;
        d.rf = plus_q(c0p, Rational(1));
        d.lbD = dp;
        d.rbD = edm(a);
        d.lbT = add(c0m, dp);
        d.if_ = plus_q(add(c0p, c0m), Rational(1));
        return restrict_all(d, w);
    }

    TbCollection eq(const Rational& a) const { return restrict_all(face_union(etq, edq(a)), w); }

    TbCollection er(const Rational& a) const {
        TbCollection r;
        IndexSet dp = edp(a);
        r.ffD = full2p;
        r.ffT = extended_union(plus_q(IndexSet::n0(), Rational(1)), plus_q(px0, Rational(1)));
        r.lf = minus2;
        r.rf = plus_q(plus2, Rational(1));
        r.lbD = plus_q(dp, Rational(1));
        r.rbD = edm(a);
        r.lbT = add(c0m, dp);
        r.if_ = plus_q(full2p, Rational(1));
        return restrict_all(r, w);
    }

    TbCollection compose(const TbCollection& e, const TbCollection& f) const { return restrict_all(compose_3b(e, f), w); }
};

Rational working_bound(const ParametrixParams& p) { return p.c + p.work_margin; }

ParametrixParams with_epsilon(const ParametrixParams& p) {
    ParametrixParams q = p;
    q.validate();
    if (q.epsilon == 0) q.epsilon = select_epsilon(q);
    return q;
}

void check_qr(Checker& ck, const Ledger& L, const Rational& a, int j, const TbCollection& q, const TbCollection& r) {
    const ParametrixParams& p = L.p;
    ExtSurd ap = L.edp(a).min_re_lower();
    ExtSurd am_neg = L.edm(a).min_re_lower();  // -a_D^-(a)
    ExtSurd dT = ex(1 + p.betaT_delta());
    ExtSurd lbt = plus_e(ap, -p.betaT_minus);
    ck.collection("QR.Q", j, q, {ex(0), ex(0), ex(-p.betaT_minus), ex(p.betaT_plus + 1), ap, am_neg, lbt, std::nullopt, dT});
    ck.collection("QR.R", j, r,
                  {ex(p.betaT_delta()), ex(1), ex(-p.betaT_minus), ex(p.betaT_plus + 1), plus_e(ap, 1), am_neg, lbt,
                   std::nullopt, dT});
    // The D-seeds split strictly at the weight, which sits at or just below its rung.
    ck.at_least("Dsplit", "lbD", j, L.edp(a), ex(a), true);
    ck.at_least("Dsplit", "rbD", j, L.edm(a), ex(-a), true);
    ck.at_least("Rung", "lbD", j, L.edp(a), ex(p.alpha_d + Rational(j) * p.epsilon));
}

Bounds impr_bounds(const ParametrixParams& p, int j) {
    const Rational& e = p.epsilon;
    return {ex((j + 1) * e), ex(1 + j * e), ex(-p.betaT_minus + j * e), ex(p.betaT_plus + j * e + 1),
            ex(p.alpha_d + (j + 1) * e), ex(-p.alpha_d), ex(p.alpha_d - p.betaT_minus + j * e),
            ex(-p.alpha_d + p.betaT_plus + 1 - e), ex(1 + (j + 1) * e)};
}

// Lower bounds for E^Q(a') valid for every a' >= a (rbD is irrelevant to the faces used).
Bounds q_bounds_from(const ParametrixParams& p, const Rational& a) {
    return {ex(0), ex(0), ex(-p.betaT_minus), ex(p.betaT_plus + 1), ex(a), std::nullopt,
            ex(a - p.betaT_minus), std::nullopt, ex(1 + p.betaT_delta())};
}

Bounds neumann_bounds(const ParametrixParams& p, int j) {
    const Rational& e = p.epsilon;
    return {ex(j * e), ex(1 + (j - 1) * e), ex(-p.betaT_minus + (j - 1) * e), ex(1 + p.betaT_plus + (j - 1) * e),
            std::nullopt, ex(-p.alpha_d), std::nullopt, j == 1 ? std::nullopt : ex(-p.alpha_d + p.betaT_plus + 1),
            ex(1 + j * e)};
}

int iteration_cap(const ParametrixParams& p) {
    Rational span = p.c + abs_q(p.alpha_d) + abs_q(p.betaT_minus) + abs_q(p.betaT_plus) + 4;
    return static_cast<int>(std::ceil(to_double(span / p.epsilon))) * 2 + 8;
}

void improve_stage(LedgerTrace& t, const Ledger& L) {
    const ParametrixParams& p = t.params;
    Checker ck(t.checks, L.c, p.strict);
    TbCollection q0 = L.eq(p.alpha_d);
    TbCollection r = L.er(p.alpha_d);
    check_qr(ck, L, p.alpha_d, 0, q0, r);
    ck.collection("ImprIndR", 0, r, impr_bounds(p, 0), {false, false, false, false, false, true});
    t.r_iter.push_back(r);

    const std::initializer_list<int> growing{FFD, FFT, LF, RF, LBD, LBT, IF};
    int cap = iteration_cap(p);
    for (int j = 1;; ++j) {
        if (j > cap) throw SolverFailure("improvement stage did not settle below C within " + std::to_string(cap) + " steps");
        Rational a = ladder_weight(p, j);
        if (a != p.alpha_d + Rational(j) * p.epsilon) t.nudged.emplace_back(j, a);
        TbCollection qa = L.eq(a), ra = L.er(a);
        check_qr(ck, L, a, j, qa, ra);
        TbCollection qd = L.compose(qa, t.r_iter.back());
        r = L.compose(ra, t.r_iter.back());
        ck.collection("ImprIndR", j, r, impr_bounds(p, j), {false, false, false, false, false, true});
        t.q_delta.push_back(qd);
        t.r_iter.push_back(r);

        // Later iterates respect the inductive bounds, which only grow with j.
        bool r_done = all_above(impr_bounds(p, j + 1), growing, L.c);
        Rational a_next = p.alpha_d + Rational(j + 1) * p.epsilon;
        Bounds next_q = propagate(q_bounds_from(p, a_next), impr_bounds(p, j));
        next_q[LBD] = ext_min(next_q[LBD], ex(a_next));
        next_q[LBT] = ext_min(next_q[LBT], ex(a_next - p.betaT_minus));
        bool q_done = all_above(next_q, growing, L.c);
        bool seen = true;
        for (int f : growing) {
            ExtSurd lo_r = face_of(r, f).min_re_lower(), lo_q = face_of(qd, f).min_re_lower();
            if ((lo_r && *lo_r <= L.c) || (lo_q && *lo_q <= L.c)) seen = false;
        }
        if (r_done && q_done && seen) break;
    }

    TbCollection q2;
    for (const auto& qd : t.q_delta) q2 = face_union(q2, qd);
    q2.rbD = IndexSet();
    q2.rbT = IndexSet();
    t.q2 = restrict_all(q2, L.w);
    const Rational& e = p.epsilon;
    ck.collection("Q2Ind", 0, t.q2,
                  {ex(e), ex(1), ex(-p.betaT_minus), ex(1 + p.betaT_plus), ex(p.alpha_d + e), std::nullopt,
                   ex(p.alpha_d - p.betaT_minus), std::nullopt, ex(1 + e)},
                  {false, false, false, false, true});
}

void neumann_stage(LedgerTrace& t, const Ledger& L) {
    const ParametrixParams& p = t.params;
    Checker ck(t.checks, L.c, p.strict);
    const Rational& e = p.epsilon;

    TbCollection er = L.er(p.alpha_d);
    TbCollection r2;
    r2.ffD = set_union(er.ffD, t.q2.ffD);
    r2.ffT = set_union(er.ffT, t.q2.ffT);
    r2.lf = set_union(er.lf, t.q2.lf);
    r2.rf = set_union(er.rf, t.q2.rf);
    r2.rbD = er.rbD;
    r2.if_ = set_union(er.if_, t.q2.if_);
    t.r2 = restrict_all(r2, L.w);
    const std::array<ExtSurd, NFACES> r2_req{ex(e), ex(1), ex(-p.betaT_minus), ex(1 + p.betaT_plus), std::nullopt,
                                             ex(-p.alpha_d), std::nullopt, std::nullopt, ex(1 + e)};
    const std::array<bool, NFACES> r2_strict{false, false, false, false, false, true};
    ck.collection("R2Ind", 0, t.r2, r2_req, r2_strict);

    const Bounds r2_bounds{ex(e), ex(1), ex(-p.betaT_minus), ex(1 + p.betaT_plus), std::nullopt,
                           ex(-p.alpha_d), std::nullopt, std::nullopt, ex(1 + e)};
    TbCollection cur = t.r2;
    TbCollection r3;
    int cap = iteration_cap(p);
    for (int j = 1;; ++j) {
        if (j > cap) throw SolverFailure("Neumann series did not settle below C within " + std::to_string(cap) + " steps");
        if (j > 1) cur = L.compose(t.r2, cur);
        ck.collection("NeumannInd", j, cur, neumann_bounds(p, j), r2_strict);
        t.r2_iter.push_back(cur);
        TbCollection next = restrict_all(face_union(r3, cur), L.w);
        bool same = j > 1 && same_below(next, r3, L.c);
        r3 = std::move(next);

        Bounds ahead = neumann_bounds(p, j + 1);
        Bounds mixed = propagate(r2_bounds, neumann_bounds(p, j));
        bool done = all_above(ahead, {FFD, FFT, LF, RF, IF}, L.c) && all_above(mixed, {RBD, RBT}, L.c);
        if (done && same) break;
    }
    t.r3 = r3;
    std::array<ExtSurd, NFACES> e3_req = r2_req;
    e3_req[RBT] = ex(-p.alpha_d + p.betaT_plus + 1);
    ck.collection("E3", 0, t.r3, e3_req, r2_strict);

    TbCollection base = restrict_all(face_union(L.eq(p.alpha_d), t.q2), L.w);
    t.eq = restrict_all(face_union(base, L.compose(base, t.r3)), L.w);
    t.er = TbCollection();
    t.er.rbD = t.r3.rbD;
    t.er.rbT = t.r3.rbT;
    ck.collection("EPxInd", 0, t.eq,
                  {ex(e), ex(1), ex(-p.betaT_minus), ex(1 + p.betaT_plus), ex(p.alpha_d), ex(-p.alpha_d),
                   ex(p.alpha_d - p.betaT_minus), ex(-p.alpha_d + p.betaT_plus + 1 - e), ex(1 + e)},
                  {false, false, false, false, true, true}, {true, true});
    for (int f : {FFD, FFT, LF, RF, LBD, LBT, IF}) ck.empty("ERshape", TbCollection::names[f], 0, face_of(t.er, f));
}

// Fully residual operator with left sets (ld, lt) and right sets (rd, rt), as a 3b collection.
TbCollection lift(const IndexSet& ld, const IndexSet& lt, const IndexSet& rd, const IndexSet& rt) {
    TbCollection c;
    const Rational one(1);
    c.ffD = add(ld, rd);
    c.ffT = plus_q(add(lt, rt), one);
    c.lf = add(lt, rd);
    c.rf = plus_q(add(ld, rt), one);
    c.lbD = ld;
    c.rbD = rd;
    c.lbT = lt;
    c.rbT = plus_q(rt, one);
    c.if_ = plus_q(add(lt, rt), one);
    return c;
}

} // namespace

bool LedgerTrace::passed() const { return first_failed(checks) == nullptr; }
const BoundCheck* LedgerTrace::first_failure() const { return first_failed(checks); }

Json LedgerTrace::to_json() const {
    Surd c(params.c);
    Json j = Json::object();
    Json pj = Json::object();
    pj["alpha_d"] = rational_to_json(params.alpha_d);
    pj["alpha_t"] = rational_to_json(params.alpha_t());
    pj["beta"] = rational_to_json(params.beta);
    pj["betaT_minus"] = rational_to_json(params.betaT_minus);
    pj["betaT_plus"] = rational_to_json(params.betaT_plus);
    pj["betaT_delta"] = rational_to_json(params.betaT_delta());
    pj["b"] = rational_to_json(params.b());
    pj["epsilon"] = rational_to_json(params.epsilon);
    pj["C"] = rational_to_json(params.c);
    pj["work_bound"] = rational_to_json(work_bound);
    j["params"] = pj;
    Json nj = Json::array();
    for (const auto& [k, a] : nudged) nj.push_back(Json{{"j", k}, {"weight", rational_to_json(a)}});
    j["nudged_rungs"] = nj;
    Json imp = Json::array();
    for (std::size_t k = 0; k < r_iter.size(); ++k) {
        Json s = Json::object();
        s["j"] = k;
        s["R"] = collection_points_json(r_iter[k], c);
        if (k > 0) s["Q_delta"] = collection_points_json(q_delta[k - 1], c);
        imp.push_back(s);
    }
    j["improve"] = imp;
    j["E2Q"] = collection_points_json(q2, c);
    j["E2R"] = collection_points_json(r2, c);
    Json neu = Json::array();
    for (std::size_t k = 0; k < r2_iter.size(); ++k) {
        Json s = Json::object();
        s["j"] = k + 1;
        s["R2"] = collection_points_json(r2_iter[k], c);
        neu.push_back(s);
    }
    j["neumann"] = neu;
    j["E3R"] = collection_points_json(r3, c);
    j["EQ"] = collection_points_json(eq, c);
    j["ER"] = collection_points_json(er, c);
    Json ck = Json::array();
    for (const auto& k : checks) ck.push_back(k.to_json());
    j["checks"] = ck;
    j["passed"] = passed();
    return j;
}

std::pair<TbCollection, TbCollection> tb_normal_inverse_collections(const ParametrixParams& p) {
    p.validate();
    Ledger L(p, working_bound(p));
    TbCollection edq = L.edq(p.alpha_d);
    return {restrict_all(L.etq, L.c), restrict_all(edq, L.c)};
}

std::pair<TbCollection, TbCollection> tb_q1_r1(const ParametrixParams& p, const Rational& alpha_prime) {
    if (p.is_forbidden(alpha_prime)) throw ForbiddenWeight("alpha'=" + to_string(alpha_prime) + " lies in the forbidden set");
    Ledger L(p, working_bound(p));
    return {restrict_all(L.eq(alpha_prime), L.c), restrict_all(L.er(alpha_prime), L.c)};
}

LedgerTrace tb_improve_left(const ParametrixParams& p) {
    LedgerTrace t;
    t.params = with_epsilon(p);
    t.work_bound = working_bound(t.params);
    Ledger L(t.params, t.work_bound);
    improve_stage(t, L);
    return t;
}

LedgerTrace tb_neumann_final(const ParametrixParams& p, LedgerTrace trace) {
    ParametrixParams q = with_epsilon(p);
    if (!trace.r_iter.empty() && trace.params.epsilon != q.epsilon) {
        throw UsageError("trace was built with a different step");
    }
    trace.params = q;
    Ledger L(q, trace.work_bound);
    neumann_stage(trace, L);
    return trace;
}

TbCollection reflect(const TbCollection& c) {
    TbCollection r;
    r.ffD = c.ffD.conj();
    r.ffT = c.ffT.conj();
    r.lf = c.rf.conj();
    r.rf = c.lf.conj();
    r.lbD = c.rbD.conj();
    r.rbD = c.lbD.conj();
    r.lbT = c.rbT.conj();
    r.rbT = c.lbT.conj();
    r.if_ = c.if_.conj();
    return r;
}

bool FullLedger::passed() const { return right.passed() && adjoint.passed() && first_failed(checks) == nullptr; }

const BoundCheck* FullLedger::first_failure() const {
    if (auto f = right.first_failure()) return f;
    if (auto f = adjoint.first_failure()) return f;
    return first_failed(checks);
}

Json FullLedger::to_json() const {
    Surd c(right.params.c);
    Json j = Json::object();
    j["right"] = right.to_json();
    j["adjoint"] = adjoint.to_json();
    j["left_EQ"] = collection_points_json(left_eq, c);
    j["left_ER"] = collection_points_json(left_er, c);
    j["G"] = collection_points_json(g, c);
    Json ck = Json::array();
    for (const auto& k : checks) ck.push_back(k.to_json());
    j["checks"] = ck;
    j["passed"] = passed();
    return j;
}

FullLedger run_ledger(const ParametrixParams& params) {
    ParametrixParams p = with_epsilon(params);
    FullLedger out;
    out.right = tb_neumann_final(p, tb_improve_left(p));
    ParametrixParams a = p.adjoint();
    out.adjoint = tb_neumann_final(a, tb_improve_left(a));
    out.left_eq = reflect(out.adjoint.eq);
    out.left_er = reflect(out.adjoint.er);

    Surd c(p.c), w(out.right.work_bound);
    Checker ck(out.checks, c, p.strict);
    const Rational& e = p.epsilon;
    const TbCollection& eq = out.right.eq;
    const TbCollection& er = out.right.er;
    const TbCollection& lq = out.left_eq;
    ck.collection("EPxInd.left", 0, lq,
                  {ex(e), ex(1), ex(-p.betaT_minus), ex(1 + p.betaT_plus), ex(p.alpha_d), ex(-p.alpha_d),
                   ex(p.alpha_d - p.betaT_minus - e), ex(-p.alpha_d + p.betaT_plus + 1), ex(1 + e)},
                  {false, false, false, false, true, true}, {true, true});
    for (int f : {FFD, FFT, LF, RF, RBD, RBT, IF}) ck.empty("ERshape.left", TbCollection::names[f], 0, face_of(out.left_er, f));

    Rational at = p.alpha_t();
    TbCollection pi = lift(lq.lbD, lq.lbT, plus_q(lq.lbD.conj(), -2 * p.alpha_d), plus_q(lq.lbT.conj(), -2 * at));
    TbCollection pi_r = lift(plus_q(er.rbD, 2 * p.alpha_d), plus_q(er.rbT, -1 + 2 * at), er.rbD.conj(),
                             plus_q(er.rbT.conj(), Rational(-1)));
    TbCollection rgr = lift(lq.lbD, lq.lbT, er.rbD, plus_q(er.rbT, Rational(-1)));
    auto comp = [&](const TbCollection& x, const TbCollection& y) { return restrict_all(compose_3b(x, y), w); };
    TbCollection g = face_union(eq, comp(pi_r, eq));
    g = face_union(g, comp(lq, er));
    g = face_union(g, comp(comp(lq, pi), er));
    g = face_union(g, restrict_all(rgr, w));
    out.g = restrict_all(g, w);
    Rational b = p.b();
    ck.collection("PFredIndG", 0, out.g,
                  {ex(0), ex(1), ex(-p.beta + b - e), ex(p.beta + b + 1 - e), ex(p.alpha_d), ex(-p.alpha_d),
                   ex(at + b - e), ex(-at + b + 1 - e), ex(1)},
                  {true, false, true, true, true, true, true, true, true}, {true, true});
    return out;
}

FullLedger run_ledger_adaptive(const ParametrixParams& params, int max_retries) {
    ParametrixParams p = params;
    for (int attempt = 0;; ++attempt) {
        try {
            return run_ledger(p);
        } catch (const TruncationError&) {
            if (attempt >= max_retries) throw;
            p.work_margin += 1;
        }
    }
}

ParametrixParams params_from_model(const ModelOperator& m, const WeightPair& w, const Rational& c,
                                   const Rational& epsilon, const Rational& work_margin) {
    ParametrixParams p;
    p.alpha_d = w.alpha_d;
    p.beta = w.beta();
    p.c = c;
    p.epsilon = epsilon;
    p.work_margin = work_margin;
    // Adjoint ladders reach weights of size about |alpha_D| + C + margin on both sides.
    Rational cap_q = c + work_margin + abs_q(w.alpha_d) + c + 4;
    Surd cap(cap_q);
    SeedSets s = seed_index_sets(m, w, cap);
    p.et_plus = s.et_plus;
    p.et_minus = s.et_minus;
    p.ed_plus = s.ed_plus;
    p.ed_minus = s.ed_minus;
    int n = m.n;
    Rational vd = m.vd;
    p.forbidden = [n, vd](const Rational& a) { return is_forbidden_D(n, vd, a); };
    // Neighbouring T-roots; the T-spectrum is rational.
    ExtSurd up = s.et_plus.min_re_lower(), down = s.et_minus.min_re_lower();
    if (!up || !down || !up->is_rational() || !down->is_rational()) {
        throw DomainError("T-spectrum has no rational root on one side of beta within the cap");
    }
    p.betaT_plus = up->rational_part();
    p.betaT_minus = -down->rational_part();
    return p;
}

FullLedger run_model_ledger(const ModelOperator& m, const WeightPair& w, const Rational& c, const Rational& epsilon,
                            bool strict, int max_retries) {
    Rational margin(4);
    for (int attempt = 0;; ++attempt) {
        ParametrixParams p = params_from_model(m, w, c, epsilon, margin);
        p.strict = strict;
        try {
            return run_ledger(p);
        } catch (const TruncationError&) {
            if (attempt >= max_retries) throw;
            margin += 1;
        }
    }
}

} // namespace tbcalc
