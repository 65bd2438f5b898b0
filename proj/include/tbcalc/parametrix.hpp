#pragma once

#include "tbcalc/calccomp.hpp"
#include "tbcalc/json_io.hpp"
#include "tbcalc/model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tbcalc {

// Index-set ledgers of the inverse and parametrix constructions. Every stage
// works on views exact up to a working bound W = C + margin and checks the
// stated lower bounds on the truncations at C.

BCollection b_parametrix_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c);
ScbtCollection scbt_inverse_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c);
ChCollection ch_inverse_sets(const IndexSet& plus, const IndexSet& minus, const Surd& c);

// Inverse of an edge-b operator: b-faces then edge faces.
struct EbdCollection {
    IndexSet lb_b, ff_b, rb_b, lb_e, ff_e, rb_e;
    static constexpr std::array<const char*, 6> names{"lb_b", "ff_b", "rb_b", "lb_e", "ff_e", "rb_e"};
    std::array<IndexSet*, 6> faces() { return {&lb_b, &ff_b, &rb_b, &lb_e, &ff_e, &rb_e}; }
    std::array<const IndexSet*, 6> faces() const { return {&lb_b, &ff_b, &rb_b, &lb_e, &ff_e, &rb_e}; }
};

EbdCollection ebD_inverse_sets(const IndexSet& ed_plus, const IndexSet& ed_minus, const IndexSet& er_plus,
                               const IndexSet& er_minus, const Surd& c);

using WeightedSets = std::function<IndexSet(const Rational&)>;

struct ParametrixParams {
    IndexSet et_plus;
    IndexSet et_minus;
    WeightedSets ed_plus;   // throws ForbiddenWeight on a forbidden weight
    WeightedSets ed_minus;
    // Optional explicit test; when empty a weight is forbidden iff ed_plus throws.
    std::function<bool(const Rational&)> forbidden;
    Rational alpha_d;
    Rational beta;
    Rational betaT_minus;
    Rational betaT_plus;
    Rational epsilon;       // 0 selects automatically
    Rational c{4};
    Rational work_margin{4};
    bool strict = true;     // throw on the first failed check

    Rational betaT_delta() const;
    Rational b() const;
    Rational alpha_t() const { return alpha_d - beta; }
    bool is_forbidden(const Rational& alpha) const;

    // DomainError for a weight outside the window or a bad step; ForbiddenWeight
    // for alpha_D in the forbidden set.
    void validate() const;

    // Parameters of the formal adjoint: weights negated, T-seeds swapped and
    // conjugated, step unchanged.
    ParametrixParams adjoint() const;
};

// Largest 1/2^m below half the T-gap and below b whose ladders up and down from
// alpha_D miss the forbidden set up to C + |alpha_D| + max|betaT| + 4.
// Failing that (within four halvings of the first admissible step), the largest
// step whose ladders are clear at the first rung, else the first admissible step.
Rational select_epsilon(const ParametrixParams& p);

// Weight used at rung j: alpha_D + j*step, or when that is forbidden the first
// alpha_D + j*step - step/2^k that is allowed and has no root in between.
Rational ladder_weight(const ParametrixParams& p, int j);

struct BoundCheck {
    std::string bound;     // name of the bound family, e.g. "ImprIndR"
    std::string face;
    int j = 0;
    std::string relation;  // ">=", ">", "empty"
    bool origin_excluded = false;  // the point (0,0) is left out of the face
    ExtSurd required;
    ExtSurd achieved;      // least real part at most C, +inf if none
    bool pass = false;

    Json to_json() const;
};

struct LedgerTrace {
    ParametrixParams params;
    Rational work_bound;
    std::vector<std::pair<int, Rational>> nudged;  // rungs moved off the forbidden set

    std::vector<TbCollection> r_iter;   // E^{R(j)}, j = 0, 1, ...
    std::vector<TbCollection> q_delta;  // E^{Q(j),Delta}, j = 1, 2, ...
    TbCollection q2;
    TbCollection r2;
    std::vector<TbCollection> r2_iter;  // E_2^{R(j)}, j = 1, 2, ...
    TbCollection r3;
    TbCollection eq;
    TbCollection er;

    std::vector<BoundCheck> checks;

    bool passed() const;
    const BoundCheck* first_failure() const;
    Json to_json() const;
};

std::pair<TbCollection, TbCollection> tb_normal_inverse_collections(const ParametrixParams& p);
std::pair<TbCollection, TbCollection> tb_q1_r1(const ParametrixParams& p, const Rational& alpha_prime);

// Improvement stage: iterates the error terms and assembles E_2^Q.
LedgerTrace tb_improve_left(const ParametrixParams& p);
// Neumann stage on top of tb_improve_left: E_2^R, E_3^R and the final E_Q, E_R.
LedgerTrace tb_neumann_final(const ParametrixParams& p, LedgerTrace trace);

struct FullLedger {
    LedgerTrace right;
    LedgerTrace adjoint;   // right ledger of the adjoint parameters
    TbCollection left_eq;  // adjoint E_Q reflected
    TbCollection left_er;
    TbCollection g;        // generalized inverse
    std::vector<BoundCheck> checks;  // left-parametrix and generalized-inverse bounds

    bool passed() const;
    const BoundCheck* first_failure() const;
    Json to_json() const;
};

// Swap left and right faces and conjugate, turning adjoint sets into left-parametrix sets.
TbCollection reflect(const TbCollection& c);

// The whole construction at one working bound: right ledger, left ledger and G.
FullLedger run_ledger(const ParametrixParams& p);
// run_ledger, widening the working margin by one while a stage runs out of exactness.
FullLedger run_ledger_adaptive(const ParametrixParams& p, int max_retries = 12);

// Parameters for the model's normal operators. The T-gap endpoints are the
// neighbouring T-roots; seeds are exact well beyond the working bound.
ParametrixParams params_from_model(const ModelOperator& m, const WeightPair& w, const Rational& c,
                                   const Rational& epsilon = Rational(0), const Rational& work_margin = Rational(4));
// As run_ledger_adaptive, rebuilding the seeds at every margin.
FullLedger run_model_ledger(const ModelOperator& m, const WeightPair& w, const Rational& c,
                            const Rational& epsilon = Rational(0), bool strict = true, int max_retries = 12);

} // namespace tbcalc
