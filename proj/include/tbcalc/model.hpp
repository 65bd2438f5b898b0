#pragma once

#include "tbcalc/indexset.hpp"
#include "tbcalc/json_io.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tbcalc {

struct RadialPotential {
    enum class Kind { Zero, GaussianWell, Tabulated };
    Kind kind = Kind::Zero;
    // Gaussian well: V(r) = -depth * exp(-(r/width)^2).
    double depth = 0.0;
    double width = 1.0;
    // Tabulated: linear interpolation on increasing r, constant below the
    // first node, v_last * (r_last/r)^decay_order beyond the last.
    std::vector<double> r;
    std::vector<double> v;
    int decay_order = 3;

    static RadialPotential zero() { return {}; }
    static RadialPotential gaussian_well(double depth, double width);
    static RadialPotential tabulated(std::vector<double> r, std::vector<double> v, int decay_order = 3);

    // Throws PotentialDomainError for r <= 0 or a malformed table.
    double operator()(double r) const;
    void validate() const;
};

struct ModelOperator {
    int n = 4;
    RadialPotential vt;
    Rational vd;

    void validate() const;
};

struct SolverConfig {
    double h = 0.01;           // grid step
    double r_max = 30.0;       // Dirichlet wall
    double tol = 1e-8;         // eigenvalues below -tol count as negative
    double resonance_tol = 1e-6;  // relative size of the growing branch treated as zero
    double tail_tol = 1e-10;   // match once |V| < tail_tol * r^-3
    double match_min = 8.0;    // never match closer in than this
    int max_channels = 200;
};

struct SphereLevel {
    int ell;
    std::int64_t mu;    // Laplace eigenvalue ell(ell+d-1)
    std::int64_t mult;  // dimension of degree-ell harmonics in d+1 variables
};

std::int64_t harmonic_dimension(int d, int ell);
std::vector<SphereLevel> sphere_spectrum(int d, int ell_max);

struct IndicialRoot {
    Exponent z;
    std::vector<int> channels;  // every channel contributing this exponent
    int order = 1;              // 2 at a double root
    std::int64_t m = 0;         // formal-solution dimension, summed over channels
    bool collision() const { return channels.size() > 1; }
};

// Exact roots of z^2 - (n-3) z - ell(ell+n-3) over channels, as points (z, order-1)
// with -c <= Re z <= c.
std::vector<IndexPoint> boundary_spectrum_T(int n, const Surd& c);

// Roots of z^2 - (n-2) z - (mu_ell + vd) with -c <= Re z <= c, merged by exponent.
std::vector<IndicialRoot> indicial_roots_D(int n, const Rational& vd, const Surd& c);

std::pair<Rational, Rational> weight_window_T(int n);

// Distinct real parts of D-roots in [lo, hi].
std::vector<Surd> forbidden_weights_D(int n, const Rational& vd, const Rational& lo, const Rational& hi);
bool is_forbidden_D(int n, const Rational& vd, const Rational& alpha);

struct WeightPair {
    Rational alpha_d;
    Rational alpha_t;
    Rational beta() const { return alpha_d - alpha_t; }
};

bool check_weights(int n, const Rational& vd, const WeightPair& w);

struct ChannelEigenvalue {
    int ell;
    double value;
};

// Eigenvalues below -cfg.tol of the radial channel operators, channel by channel
// until the effective potential is nonnegative.
std::vector<ChannelEigenvalue> negative_eigenvalue_scan(const ModelOperator& m, const SolverConfig& cfg);
// All eigenvalues below -tol for one channel, second-order differences at steps
// h and h/2 combined by Richardson extrapolation.
std::vector<double> channel_negative_eigenvalues(const ModelOperator& m, int ell, const SolverConfig& cfg);

enum class ZeroEnergy { Regular, Resonance, BoundState };
std::string to_string(ZeroEnergy z);

struct ZeroEnergyChannel {
    int ell;
    ZeroEnergy verdict;
    double growing;   // coefficient of r^(kappa+1), normalized so that |growing|+|decaying| = 1
    double decaying;  // coefficient of r^(-kappa)
    double relative;  // share of the growing branch at the matching radius
    int nodes;        // zeros of the regular solution on (0, inf), the tail one read off the fit
    double r_match;
    // "regular" with no nodes, otherwise "bound_state_side".
    std::string side() const { return nodes == 0 ? "regular" : "bound_state_side"; }
};

// Channel lengths match negative_eigenvalue_scan's cutoff, plus the first positive channel.
std::vector<ZeroEnergyChannel> zero_energy_classification(const ModelOperator& m, const SolverConfig& cfg);
ZeroEnergyChannel zero_energy_channel(const ModelOperator& m, int ell, const SolverConfig& cfg);

// Largest depth in (lo, hi) where the ell-channel growing coefficient of
// gaussian_well(depth, width) changes sign, by bisection to `tol`.
double resonance_threshold(int n, int ell, double width, double lo, double hi, const SolverConfig& cfg, double tol = 1e-6);

struct Verdict {
    bool pass = false;
    Json evidence;
};

struct EllipticityReport {
    Verdict cond1, cond2, cond3, cond4, cond5;
    std::pair<Rational, Rational> window_beta;
    std::vector<Surd> forbidden_d;
    bool overall = false;

    Json to_json() const;
};

EllipticityReport full_ellipticity(const ModelOperator& m, const WeightPair& w, const SolverConfig& cfg);

// Sum of m over D-roots with a < Re z < b; negated when a > b. ForbiddenWeight at an endpoint.
std::int64_t relative_index(const ModelOperator& m, const Rational& a, const Rational& b);

struct SeedSets {
    IndexSet et_plus;
    IndexSet et_minus;
    std::function<IndexSet(const Rational&)> ed_plus;
    std::function<IndexSet(const Rational&)> ed_minus;
};

// Index sets of the normal-operator inverses. Sets built from roots are views
// exact up to `cap`. ForbiddenWeight if the weights are not admissible.
SeedSets seed_index_sets(const ModelOperator& m, const WeightPair& w, const Surd& cap);

ModelOperator model_from_json(const Json& j);
Json model_to_json(const ModelOperator& m);
SolverConfig solver_from_json(const Json& j);
Json solver_to_json(const SolverConfig& c);

} // namespace tbcalc
