#include "tbcalc/model.hpp"

#include "tbcalc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace tbcalc {

// ---------------------------------------------------------------- potentials

RadialPotential RadialPotential::gaussian_well(double depth, double width) {
    RadialPotential p;
    p.kind = Kind::GaussianWell;
    p.depth = depth;
    p.width = width;
    p.validate();
    return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> r, std::vector<double> v, int decay_order) {
    RadialPotential p;
    p.kind = Kind::Tabulated;
    p.r = std::move(r);
    p.v = std::move(v);
    p.decay_order = decay_order;
    p.validate();
    return p;
}

void RadialPotential::validate() const {
    if (decay_order < 3) throw PotentialDomainError("potential must decay at least like r^-3");
    switch (kind) {
    case Kind::Zero: return;
    case Kind::GaussianWell:
        if (!std::isfinite(depth) || !std::isfinite(width) || width <= 0) throw PotentialDomainError("gaussian well needs finite depth and width > 0");
        return;
    case Kind::Tabulated:
        if (r.size() < 2 || r.size() != v.size()) throw PotentialDomainError("tabulated potential needs matching r and v with >= 2 nodes");
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!std::isfinite(r[i]) || !std::isfinite(v[i])) throw PotentialDomainError("tabulated potential has non-finite entries");
            if (r[i] <= 0 || (i && r[i] <= r[i - 1])) throw PotentialDomainError("tabulated r must be positive and increasing");
        }
        return;
    }
}

double RadialPotential::operator()(double x) const {
    if (!(x > 0)) throw PotentialDomainError("potential evaluated at r <= 0");
    switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::GaussianWell: {
        double s = x / width;
        return -depth * std::exp(-s * s);
    }
    case Kind::Tabulated: {
        if (x <= r.front()) return v.front();
        if (x >= r.back()) return v.back() * std::pow(r.back() / x, decay_order);
        auto it = std::upper_bound(r.begin(), r.end(), x);
        std::size_t i = static_cast<std::size_t>(it - r.begin());
        double t = (x - r[i - 1]) / (r[i] - r[i - 1]);
        return v[i - 1] + t * (v[i] - v[i - 1]);
    }
    }
    return 0.0;
}

void ModelOperator::validate() const {
    if (n < 4) throw DomainError("dimension n must be >= 4");
    vt.validate();
}

// ---------------------------------------------------------------- spheres

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    k = std::min(k, n - k);
    Int out = 1;
    for (std::int64_t i = 1; i <= k; ++i) out = out * Int(n - k + i) / Int(i);
    return static_cast<std::int64_t>(out);
}

} // namespace

std::int64_t harmonic_dimension(int d, int ell) {
    if (d < 1 || ell < 0) throw DomainError("sphere dimension must be >= 1 and ell >= 0");
    int m = d + 1;
    return binomial(ell + m - 1, m - 1) - binomial(ell + m - 3, m - 1);
}

std::vector<SphereLevel> sphere_spectrum(int d, int ell_max) {
    std::vector<SphereLevel> out;
    for (int ell = 0; ell <= ell_max; ++ell) {
        out.push_back({ell, static_cast<std::int64_t>(ell) * (ell + d - 1), harmonic_dimension(d, ell)});
    }
    return out;
}

// ---------------------------------------------------------------- indicial roots

namespace {

struct ChannelRoots {
    std::vector<Exponent> roots;  // one entry for a double root
    bool double_root = false;
};

// Roots of z^2 - b z - c.
ChannelRoots quadratic(const Rational& b, const Rational& c) {
    Rational disc = b * b + make_rational(4) * c;
    Surd half(b * make_rational(1, 2));
    ChannelRoots out;
    if (disc == 0) {
        out.roots.push_back(Exponent(half));
        out.double_root = true;
        return out;
    }
    Surd s = Surd::sqrt_of(disc < 0 ? -disc : disc) * make_rational(1, 2);
    if (disc > 0) {
        out.roots = {Exponent(half - s), Exponent(half + s)};
    } else {
        out.roots = {Exponent(half, -s), Exponent(half, s)};
    }
    return out;
}

struct ExpLess {
    bool operator()(const Exponent& a, const Exponent& b) const { return exponent_less(a, b); }
};

// Roots of z^2 - b z - (mu_ell + shift) over channels of S^d with -c <= Re z <= c.
std::vector<IndicialRoot> channel_roots(int d, const Rational& b, const Rational& shift, const Surd& c) {
    std::map<Exponent, IndicialRoot, ExpLess> merged;
    for (int ell = 0;; ++ell) {
        if (ell > 100000) throw SolverFailure("indicial root enumeration did not terminate");
        Rational mu = make_rational(static_cast<std::int64_t>(ell) * (ell + d - 1));
        ChannelRoots cr = quadratic(b, mu + shift);
        std::int64_t dim = harmonic_dimension(d, ell);
        bool any_inside = false, all_real = true;
        for (const auto& z : cr.roots) {
            if (z.im != Surd()) all_real = false;
            if (z.re < -c || c < z.re) continue;
            any_inside = true;
            auto [it, fresh] = merged.try_emplace(z);
            IndicialRoot& r = it->second;
            if (fresh) r.z = z;
            r.channels.push_back(ell);
            r.order = std::max(r.order, cr.double_root ? 2 : 1);
            r.m += cr.double_root ? 2 * dim : dim;
        }
        // Both roots move outward monotonically once real.
        if (all_real && !any_inside && cr.roots.front().re < -c && c < cr.roots.back().re) break;
    }
    std::vector<IndicialRoot> out;
    for (auto& [z, r] : merged) out.push_back(std::move(r));
    return out;
}

} // namespace

std::vector<IndexPoint> boundary_spectrum_T(int n, const Surd& c) {
    if (n < 4) throw DomainError("dimension n must be >= 4");
    std::vector<IndexPoint> out;
    for (const auto& r : channel_roots(n - 2, make_rational(n - 3), Rational(), c)) out.push_back({r.z, r.order - 1});
    return out;
}

std::vector<IndicialRoot> indicial_roots_D(int n, const Rational& vd, const Surd& c) {
    if (n < 4) throw DomainError("dimension n must be >= 4");
    return channel_roots(n - 1, make_rational(n - 2), vd, c);
}

std::pair<Rational, Rational> weight_window_T(int n) {
    if (n < 4) throw DomainError("dimension n must be >= 4");
    return {Rational(), make_rational(n - 3)};
}

namespace {

Surd window_cap(const Rational& lo, const Rational& hi) {
    Rational a = lo < 0 ? -lo : lo, b = hi < 0 ? -hi : hi;
    return Surd(std::max(a, b) + make_rational(1));
}

} // namespace

std::vector<Surd> forbidden_weights_D(int n, const Rational& vd, const Rational& lo, const Rational& hi) {
    std::vector<Surd> out;
    for (const auto& r : indicial_roots_D(n, vd, window_cap(lo, hi))) {
        if (r.z.re < Surd(lo) || Surd(hi) < r.z.re) continue;
        if (out.empty() || !(out.back() == r.z.re)) out.push_back(r.z.re);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_forbidden_D(int n, const Rational& vd, const Rational& alpha) {
    return !forbidden_weights_D(n, vd, alpha, alpha).empty();
}

bool check_weights(int n, const Rational& vd, const WeightPair& w) {
    auto [lo, hi] = weight_window_T(n);
    Rational beta = w.beta();
    return !is_forbidden_D(n, vd, w.alpha_d) && lo < beta && beta < hi;
}

std::int64_t relative_index(const ModelOperator& m, const Rational& a, const Rational& b) {
    m.validate();
    for (const Rational& x : {a, b}) {
        if (is_forbidden_D(m.n, m.vd, x)) throw ForbiddenWeight("weight " + to_string(x) + " is the real part of an indicial root");
    }
    if (b < a) return -relative_index(m, b, a);
    std::int64_t total = 0;
    for (const auto& r : indicial_roots_D(m.n, m.vd, window_cap(a, b))) {
        if (Surd(a) < r.z.re && r.z.re < Surd(b)) total += r.m;
    }
    return total;
}

// ---------------------------------------------------------------- seeds

SeedSets seed_index_sets(const ModelOperator& m, const WeightPair& w, const Surd& cap) {
    m.validate();
    if (!check_weights(m.n, m.vd, w)) {
        throw ForbiddenWeight("weights alpha_D=" + to_string(w.alpha_d) + ", alpha_T=" + to_string(w.alpha_t) +
                              " are not admissible");
    }
    SeedSets s;
    Surd beta(w.beta());
    std::vector<IndexPoint> tp, tm;
    for (const auto& p : boundary_spectrum_T(m.n, cap)) {
        if (beta < p.z.re) tp.push_back(p);
        else tm.push_back({-p.z, p.k});
    }
    s.et_plus = IndexSet::normalize(std::move(tp), cap);
    s.et_minus = IndexSet::normalize(std::move(tm), cap);

    std::vector<IndicialRoot> roots = indicial_roots_D(m.n, m.vd, cap);
    int n = m.n;
    Rational vd = m.vd;
    auto split = [roots, cap, n, vd](const Rational& alpha, bool plus) {
        if (is_forbidden_D(n, vd, alpha)) throw ForbiddenWeight("alpha_D=" + to_string(alpha) + " lies in the forbidden set");
        std::vector<IndexPoint> pts;
        for (const auto& r : roots) {
            bool above = Surd(alpha) < r.z.re;
            if (above == plus) pts.push_back({plus ? r.z : -r.z, r.order - 1});
        }
        return IndexSet::normalize(std::move(pts), cap);
    };
    s.ed_plus = [split](const Rational& a) { return split(a, true); };
    s.ed_minus = [split](const Rational& a) { return split(a, false); };
    return s;
}

// ---------------------------------------------------------------- radial numerics

namespace {

double kappa_of(int n, int ell) { return ell + (n - 4) / 2.0; }

double centrifugal(int n, int ell) {
    double k = kappa_of(n, ell);
    return k * (k + 1);
}

int grid_points(const SolverConfig& cfg) {
    if (!(cfg.h > 0) || !(cfg.r_max > 10 * cfg.h)) throw UsageError("solver grid needs h > 0 and r_max > 10 h");
    double n = std::round(cfg.r_max / cfg.h);
    if (n > 2e6) throw UsageError("solver grid too fine");
    return static_cast<int>(n);
}

double min_effective(const ModelOperator& m, int ell, const SolverConfig& cfg) {
    int n = grid_points(cfg);
    double c = centrifugal(m.n, ell), lo = INFINITY;
    for (int i = 1; i < n; ++i) {
        double r = i * cfg.h;
        lo = std::min(lo, m.vt(r) + c / (r * r));
    }
    return lo;
}

} // namespace

namespace {

// Second-order discretization of one channel: diagonal entries, constant off-diagonal.
struct Tridiagonal {
    std::vector<double> diag;
    double off;

    // Eigenvalues strictly below x, by the Sturm sequence of leading minors.
    int count_below(double x) const {
        int count = 0;
        double q = 1;
        for (std::size_t i = 0; i < diag.size(); ++i) {
            q = diag[i] - x - (i ? off * off / q : 0.0);
            if (q == 0) q = -1e-300;
            if (q < 0) ++count;
        }
        return count;
    }
};

Tridiagonal channel_matrix(const ModelOperator& m, int ell, double h, double r_max) {
    int n = static_cast<int>(std::round(r_max / h));
    double c = centrifugal(m.n, ell), h2 = h * h;
    Tridiagonal t{std::vector<double>(static_cast<std::size_t>(n - 1)), -1.0 / h2};
    for (int i = 1; i < n; ++i) {
        double r = i * h;
        t.diag[static_cast<std::size_t>(i - 1)] = 2.0 / h2 + m.vt(r) + c / (r * r);
    }
    return t;
}

// The negative eigenvalues, ascending, by bisection on the Sturm count.
std::vector<double> negative_levels(const Tridiagonal& t) {
    int count = t.count_below(0.0);
    double lo = 0;
    for (double d : t.diag) lo = std::min(lo, d - 2 * std::fabs(t.off));
    std::vector<double> out;
    for (int k = 0; k < count; ++k) {
        double a = lo, b = 0;
        for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::fabs(a)); ++it) {
            double mid = 0.5 * (a + b);
            if (t.count_below(mid) > k) b = mid;
            else a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

} // namespace

std::vector<double> channel_negative_eigenvalues(const ModelOperator& m, int ell, const SolverConfig& cfg) {
    grid_points(cfg);
    // Richardson extrapolation of the O(h^2) levels from steps h and h/2.
    std::vector<double> coarse = negative_levels(channel_matrix(m, ell, cfg.h, cfg.r_max));
    std::vector<double> fine = negative_levels(channel_matrix(m, ell, cfg.h / 2, cfg.r_max));
    std::vector<double> out;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        // A level that the coarse grid still misses is taken from the fine grid alone.
        double e = i < coarse.size() ? (4 * fine[i] - coarse[i]) / 3 : fine[i];
        if (e < -cfg.tol) out.push_back(e);
    }
    return out;
}

std::vector<ChannelEigenvalue> negative_eigenvalue_scan(const ModelOperator& m, const SolverConfig& cfg) {
    m.validate();
    std::vector<ChannelEigenvalue> out;
    for (int ell = 0;; ++ell) {
        if (ell >= cfg.max_channels) throw SolverFailure("effective potential stays negative past max_channels");
        if (min_effective(m, ell, cfg) >= 0) break;
        for (double e : channel_negative_eigenvalues(m, ell, cfg)) out.push_back({ell, e});
    }
    return out;
}

std::string to_string(ZeroEnergy z) {
    switch (z) {
    case ZeroEnergy::Regular: return "regular";
    case ZeroEnergy::Resonance: return "resonance";
    case ZeroEnergy::BoundState: return "bound_state";
    }
    return "";
}

ZeroEnergyChannel zero_energy_channel(const ModelOperator& m, int ell, const SolverConfig& cfg) {
    m.validate();
    grid_points(cfg);
    const double kappa = kappa_of(m.n, ell), cent = centrifugal(m.n, ell), h = cfg.h;

    // Matching radius: far enough that the potential is negligible against r^-3.
    double r_match = cfg.r_max;
    for (double r = cfg.match_min; r < cfg.r_max; r += 0.5) {
        bool quiet = true;
        for (double s = r; s <= cfg.r_max && quiet; s += 0.5) quiet = std::fabs(m.vt(s)) * s * s * s < cfg.tail_tol;
        if (quiet) {
            r_match = r;
            break;
        }
    }

    auto rhs = [&](double r, double v) { return (m.vt(r) + cent / (r * r)) * v; };
    // Regular branch with its first correction from V(0+).
    double r = h / 8, a = m.vt(r) / (2 * (2 * kappa + 3));
    double v = std::pow(r, kappa + 1) * (1 + a * r * r);
    double dv = (kappa + 1) * std::pow(r, kappa) + a * (kappa + 3) * std::pow(r, kappa + 2);
    int nodes = 0;
    while (r < r_match - 1e-12) {
        double step = std::min(h, r_match - r);
        double k1v = dv, k1d = rhs(r, v);
        double k2v = dv + 0.5 * step * k1d, k2d = rhs(r + 0.5 * step, v + 0.5 * step * k1v);
        double k3v = dv + 0.5 * step * k2d, k3d = rhs(r + 0.5 * step, v + 0.5 * step * k2v);
        double k4v = dv + step * k3d, k4d = rhs(r + step, v + step * k3v);
        double nv = v + step / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
        dv += step / 6 * (k1d + 2 * k2d + 2 * k3d + k4d);
        if ((nv < 0) != (v < 0) && nv != 0) ++nodes;
        v = nv;
        r += step;
        if (!std::isfinite(v) || !std::isfinite(dv)) throw SolverFailure("zero-energy integration overflowed");
    }

    // v = A r^(kappa+1) + B r^(-kappa); W(f,g) = -(2 kappa + 1).
    double f = std::pow(r, kappa + 1), df = (kappa + 1) * std::pow(r, kappa);
    double g = std::pow(r, -kappa), dg = -kappa * std::pow(r, -kappa - 1);
    double w = -(2 * kappa + 1);
    double A = (v * dg - dv * g) / w, B = (f * dv - df * v) / w;
    double s = std::fabs(A) + std::fabs(B);
    if (!(s > 0)) throw SolverFailure("degenerate zero-energy solution");

    ZeroEnergyChannel out;
    out.ell = ell;
    out.growing = A / s;
    out.decaying = B / s;
    double grow = std::fabs(A) * std::pow(r, 2 * kappa + 1);
    out.relative = grow / (grow + std::fabs(B));
    // Past r_match v follows A r^(kappa+1) + B r^(-kappa), which has one more zero iff A and v disagree in sign.
    if (A != 0 && (A > 0) != (v > 0)) ++nodes;
    out.nodes = nodes;
    out.r_match = r;
    if (out.relative >= cfg.resonance_tol) {
        out.verdict = ZeroEnergy::Regular;
    } else {
        // r^-kappa is square integrable at infinity iff 2 kappa > 1.
        out.verdict = 2 * kappa > 1 ? ZeroEnergy::BoundState : ZeroEnergy::Resonance;
    }
    return out;
}

std::vector<ZeroEnergyChannel> zero_energy_classification(const ModelOperator& m, const SolverConfig& cfg) {
    m.validate();
    std::vector<ZeroEnergyChannel> out;
    for (int ell = 0;; ++ell) {
        if (ell >= cfg.max_channels) throw SolverFailure("effective potential stays negative past max_channels");
        out.push_back(zero_energy_channel(m, ell, cfg));
        if (min_effective(m, ell, cfg) >= 0) break;
    }
    return out;
}

double resonance_threshold(int n, int ell, double width, double lo, double hi, const SolverConfig& cfg, double tol) {
    auto coeff = [&](double depth) {
        ModelOperator m{n, RadialPotential::gaussian_well(depth, width), Rational()};
        return zero_energy_channel(m, ell, cfg).growing;
    };
    double flo = coeff(lo), fhi = coeff(hi);
    if ((flo > 0) == (fhi > 0)) throw SolverFailure("growing coefficient does not change sign on the bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi), fm = coeff(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- full ellipticity

EllipticityReport full_ellipticity(const ModelOperator& m, const WeightPair& w, const SolverConfig& cfg) {
    m.validate();
    EllipticityReport rep;
    rep.window_beta = weight_window_T(m.n);
    Rational beta = w.beta();

    // (1) beta avoids the real parts of the T-boundary spectrum.
    Surd cap(beta < 0 ? -beta : beta);
    cap += Surd(1);
    bool on_spectrum = false;
    for (const auto& p : boundary_spectrum_T(m.n, cap)) on_spectrum = on_spectrum || p.z.re == Surd(beta);
    rep.cond1.pass = !on_spectrum;
    rep.cond1.evidence = {{"beta", rational_to_json(beta)}, {"on_spectrum", on_spectrum}};

    // (2) the tf-normal operators are invertible exactly on the window.
    rep.cond2.pass = rep.window_beta.first < beta && beta < rep.window_beta.second;
    rep.cond2.evidence = {{"beta", rational_to_json(beta)},
                          {"window", {rational_to_json(rep.window_beta.first), rational_to_json(rep.window_beta.second)}}};

    // (3) alpha_D avoids D.
    Rational a = w.alpha_d;
    rep.forbidden_d = forbidden_weights_D(m.n, m.vd, a - make_rational(2), a + make_rational(2));
    bool hit = false;
    Json near = Json::array();
    for (const auto& d : rep.forbidden_d) {
        near.push_back(d.to_string());
        hit = hit || d == Surd(a);
    }
    rep.cond3.pass = !hit;
    rep.cond3.evidence = {{"alpha_D", rational_to_json(a)}, {"in_D", hit}, {"D_near_alpha_D", near}};

    // (4) zero energy: no resonance, no bound state.
    auto zero = zero_energy_classification(m, cfg);
    Json channels = Json::array();
    bool clean = true;
    for (const auto& z : zero) {
        clean = clean && z.verdict == ZeroEnergy::Regular;
        channels.push_back({{"ell", z.ell}, {"verdict", to_string(z.verdict)}, {"growing", z.growing},
                            {"relative", z.relative}, {"nodes", z.nodes}});
    }
    rep.cond4.pass = clean;
    rep.cond4.evidence = {{"channels", channels}};

    // (5) no negative eigenvalues.
    auto neg = negative_eigenvalue_scan(m, cfg);
    Json eig = Json::array();
    for (const auto& e : neg) eig.push_back({{"ell", e.ell}, {"eigenvalue", e.value}});
    rep.cond5.pass = neg.empty();
    rep.cond5.evidence = {{"negative_eigenvalues", eig}};

    rep.overall = rep.cond1.pass && rep.cond2.pass && rep.cond3.pass && rep.cond4.pass && rep.cond5.pass;
    return rep;
}

Json EllipticityReport::to_json() const {
    Json out = Json::object();
    const Verdict* conds[] = {&cond1, &cond2, &cond3, &cond4, &cond5};
    for (int i = 0; i < 5; ++i) {
        out["cond" + std::to_string(i + 1)] = {{"pass", conds[i]->pass}, {"evidence", conds[i]->evidence}};
    }
    out["window_beta"] = {rational_to_json(window_beta.first), rational_to_json(window_beta.second)};
    Json d = Json::array();
    for (const auto& x : forbidden_d) d.push_back(x.to_string());
    out["forbidden_D"] = d;
    out["overall"] = overall;
    return out;
}

// ---------------------------------------------------------------- JSON

ModelOperator model_from_json(const Json& j) {
    if (!j.is_object()) throw UsageError("model must be a JSON object");
    ModelOperator m;
    try {
        m.n = j.at("n").get<int>();
        m.vd = j.contains("VD") ? rational_from_json(j.at("VD")) : Rational();
        if (j.contains("VT")) {
            const Json& vt = j.at("VT");
            std::string kind = vt.at("kind").get<std::string>();
            int decay = vt.value("decay_order", 3);
            if (kind == "zero") {
                m.vt = RadialPotential::zero();
                m.vt.decay_order = decay;
            } else if (kind == "gaussian_well") {
                m.vt = RadialPotential::gaussian_well(vt.at("depth").get<double>(), vt.at("width").get<double>());
                m.vt.decay_order = decay;
            } else if (kind == "tabulated") {
                m.vt = RadialPotential::tabulated(vt.at("r").get<std::vector<double>>(), vt.at("v").get<std::vector<double>>(), decay);
            } else {
                throw UsageError("unknown potential kind '" + kind + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed model: ") + e.what());
    }
    m.validate();
    return m;
}

Json model_to_json(const ModelOperator& m) {
    Json vt;
    switch (m.vt.kind) {
    case RadialPotential::Kind::Zero: vt = {{"kind", "zero"}}; break;
    case RadialPotential::Kind::GaussianWell: vt = {{"kind", "gaussian_well"}, {"depth", m.vt.depth}, {"width", m.vt.width}}; break;
    case RadialPotential::Kind::Tabulated: vt = {{"kind", "tabulated"}, {"r", m.vt.r}, {"v", m.vt.v}}; break;
    }
    vt["decay_order"] = m.vt.decay_order;
    return {{"n", m.n}, {"VD", rational_to_json(m.vd)}, {"VT", vt}};
}

SolverConfig solver_from_json(const Json& j) {
    SolverConfig c;
    if (j.is_null()) return c;
    if (!j.is_object()) throw UsageError("solver config must be a JSON object");
    try {
        c.h = j.value("h", c.h);
        c.r_max = j.value("r_max", c.r_max);
        c.tol = j.value("tol", c.tol);
        c.resonance_tol = j.value("resonance_tol", c.resonance_tol);
        c.tail_tol = j.value("tail_tol", c.tail_tol);
        c.match_min = j.value("match_min", c.match_min);
        c.max_channels = j.value("max_channels", c.max_channels);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed solver config: ") + e.what());
    }
    grid_points(c);
    return c;
}

Json solver_to_json(const SolverConfig& c) {
    return {{"h", c.h}, {"r_max", c.r_max}, {"tol", c.tol}, {"resonance_tol", c.resonance_tol},
            {"tail_tol", c.tail_tol}, {"match_min", c.match_min}, {"max_channels", c.max_channels}};
}

} // namespace tbcalc
