#include "tbcalc/ftverify.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tbcalc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// int exp(i lambda y) (1 + lambda^2)^(-z/2) dlambda for y != 0.
double symbol_transform(double z, double y) {
    double u = std::fabs(y);
    double nu = (z - 1.0) / 2.0;
    if (u == 0) return z > 1 ? std::sqrt(kPi) * boost::math::tgamma(nu) / boost::math::tgamma(z / 2.0) : kInf;
    return 2.0 * std::sqrt(kPi) * std::pow(u / 2.0, nu) * boost::math::cyl_bessel_k(nu, u) /
           boost::math::tgamma(z / 2.0);
}

double cutoff(double x) { return std::exp(-x * x); }

void require_positive_x(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError("x must be positive and finite");
}

// One transform value with an absolute error bound; the integration variable
// is rescaled to the natural lambda scale 1/y_scale(x).
class Transformer {
public:
    Transformer(const ConormalSpec& spec, const QuadConfig& cfg)
        : spec_(spec), cfg_(cfg), cos_(cfg.rel_tol, 8), sin_(cfg.rel_tol, 8) {}

    std::pair<std::complex<double>, double> operator()(double x, double y) {
        require_positive_x(x);
        if (!std::isfinite(y)) throw DomainError("y must be finite");
        try {
            auto r = cfg_.method == QuadConfig::Method::Trapezoid ? trapezoid(x, y) : double_exponential(x, y);
            if (!std::isfinite(r.first.real()) || !std::isfinite(r.first.imag()) || !std::isfinite(r.second))
                throw QuadratureFailure("non-finite transform at x=" + std::to_string(x) + ", y=" + std::to_string(y));
            return r;
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw QuadratureFailure(std::string("quadrature failed: ") + e.what());
        }
    }

private:
    std::pair<std::complex<double>, double> double_exponential(double x, double y) {
        double s = 1.0 / spec_.y_scale(x);
        auto even = [&](double t) {
            return spec_.even ? 2.0 * spec_.sampler(x, s * t) : spec_.sampler(x, s * t) + spec_.sampler(x, -s * t);
        };
        auto odd = [&](double t) { return spec_.sampler(x, s * t) - spec_.sampler(x, -s * t); };
        double omega = std::fabs(y) * s;
        if (omega == 0) {
            if (!spec_.integrable) throw QuadratureFailure("a is not integrable, so y = 0 cannot be sampled");
            boost::math::quadrature::exp_sinh<double> es;
            double err = 0;
            double v = es.integrate(even, 0.0, kInf, cfg_.rel_tol, &err);
            return {{s * v, 0.0}, s * err};
        }
        auto [re, re_err] = cos_.integrate(even, omega);
        double im = 0, im_err = 0;
        if (!spec_.even) std::tie(im, im_err) = sin_.integrate(odd, omega);
        if (y < 0) im = -im;
        // The rule reports relative errors, which are NaN for an exact zero.
        auto abs_err = [](double v, double rel) { return v == 0 ? 0.0 : std::fabs(v) * rel; };
        return {{s * re, s * im}, s * (abs_err(re, re_err) + abs_err(im, im_err))};
    }

    // Truncated trapezoid sum; the discretization error is not estimated, so
    // the step has to resolve both a and the oscillation.
    std::pair<std::complex<double>, double> trapezoid(double x, double y) {
        double radius = cfg_.radius, h = cfg_.step;
        if (!(radius > 0) || !(h > 0) || h >= radius) throw DomainError("trapezoid needs 0 < step < radius");
        bool hann = cfg_.window == QuadConfig::Window::Hann;
        if (hann && !(cfg_.taper > 0 && cfg_.taper < 1)) throw DomainError("taper must lie in (0,1)");
        double inner = hann ? (1.0 - cfg_.taper) * radius : radius;
        auto window = [&](double lam) {
            double d = std::fabs(lam) - inner;
            if (!hann || d <= 0) return 1.0;
            return 0.5 * (1.0 + std::cos(kPi * d / (radius - inner)));
        };
        auto n = static_cast<long>(std::floor(radius / h));
        std::complex<double> sum;
        double window_loss = 0;
        for (long k = -n; k <= n; ++k) {
            double lam = k * h;
            double wt = (k == -n || k == n) ? 0.5 * h : h;
            double a = spec_.sampler(x, lam);
            double win = window(lam);
            sum += wt * win * a * std::complex<double>(std::cos(lam * y), std::sin(lam * y));
            window_loss += wt * (1.0 - win) * std::fabs(a);
        }
        double edge = n * h;
        return {sum, window_loss + tail_bound(x, y, edge)};
    }

    // Bound for the part of the integral beyond |lambda| = edge. Needs a of
    // constant sign and decreasing modulus there (checked on a geometric grid),
    // so each half line contributes at most 4|a(edge)|/|y|.
    double tail_bound(double x, double y, double edge) {
        for (double side : {1.0, -1.0}) {
            double prev = spec_.sampler(x, side * edge);
            for (int m = 1; m <= 40; ++m) {
                double cur = spec_.sampler(x, side * edge * std::pow(2.0, m / 4.0));
                if (std::fabs(cur) > std::fabs(prev) * (1 + 1e-12) || cur * prev < 0)
                    throw QuadratureFailure("a is not monotone beyond the truncation radius");
                prev = cur;
            }
        }
        if (y != 0) return 4.0 * (std::fabs(spec_.sampler(x, edge)) + std::fabs(spec_.sampler(x, -edge))) / std::fabs(y);
        if (!spec_.integrable) throw QuadratureFailure("a is not integrable, so y = 0 cannot be sampled");
        boost::math::quadrature::exp_sinh<double> es;
        return es.integrate([&](double t) { return std::fabs(spec_.sampler(x, t)) + std::fabs(spec_.sampler(x, -t)); },
                            edge, kInf);
    }

    const ConormalSpec& spec_;
    const QuadConfig& cfg_;
    boost::math::quadrature::ooura_fourier_cos<double> cos_;
    boost::math::quadrature::ooura_fourier_sin<double> sin_;
};

IndexSet weight_set(const Rational& r) { return IndexSet::single(Exponent(Surd(r))); }

std::vector<double> dyadic_points(double lo, double hi, int per_octave) {
    std::vector<double> out;
    int steps = static_cast<int>(std::lround(std::log2(hi / lo) * per_octave));
    for (int k = 0; k <= steps; ++k) out.push_back(lo * std::exp2(static_cast<double>(k) / per_octave));
    return out;
}

std::string prediction_type_name(Prediction::Type t) {
    switch (t) {
    case Prediction::Type::Weight: return "weight";
    case Prediction::Type::RapidDecay: return "rapid_decay";
    case Prediction::Type::Informational: return "informational";
    }
    return "";
}

Prediction weight_prediction(const IndexSet& set, std::string expression, bool sharp, bool log_coincidence) {
    Prediction p;
    p.weight = set.min_re();
    p.expression = std::move(expression);
    p.sharp = sharp;
    p.type = log_coincidence ? Prediction::Type::Informational : Prediction::Type::Weight;
    return p;
}

Prediction rapid_prediction() {
    Prediction p;
    p.type = Prediction::Type::RapidDecay;
    p.expression = "inf";
    return p;
}

double x_of(const RegionPlan& plan, double coord) { return plan.coordinate_is_y ? plan.fixed : coord; }

double y_of(const ConormalSpec& spec, const RegionPlan& plan, double coord) {
    if (plan.coordinate_is_y) return coord;
    if (!plan.along_ratio) return plan.fixed;
    return spec.kind == ConormalKind::ResolvedZero ? plan.fixed / coord : plan.fixed * coord;
}

} // namespace

std::string kind_name(ConormalKind k) {
    switch (k) {
    case ConormalKind::Symbol: return "symbol";
    case ConormalKind::ResolvedInfinity: return "resolved_infinity";
    case ConormalKind::ResolvedZero: return "resolved_zero";
    }
    return "";
}

double ConormalSpec::y_scale(double x) const {
    switch (kind) {
    case ConormalKind::Symbol: return 1.0;
    case ConormalKind::ResolvedInfinity: return x;
    case ConormalKind::ResolvedZero: return 1.0 / x;
    }
    return 1.0;
}

ConormalSpec symbol_case(const Rational& z) {
    if (z <= Rational(0)) throw DomainError("symbol order z must be positive");
    double zd = to_double(z);
    ConormalSpec s;
    s.name = "symbol_z" + to_string(z);
    s.kind = ConormalKind::Symbol;
    s.z = z;
    s.sampler = [zd](double, double lam) { return std::pow(1.0 + lam * lam, -zd / 2.0); };
    s.closed_form = [zd](double, double y) { return symbol_transform(zd, y); };
    s.integrable = z > Rational(1);
    s.square_integrable = z * Rational(2) > Rational(1);
    return s;
}

ConormalSpec lorentzian_case() {
    ConormalSpec s = symbol_case(Rational(2));
    s.name = "lorentzian";
    s.sampler = [](double, double lam) { return 1.0 / (1.0 + lam * lam); };
    s.closed_form = [](double, double y) { return kPi * std::exp(-std::fabs(y)); };
    return s;
}

ConormalSpec resolved_infinity_case(const Rational& w, const Rational& z) {
    if (z <= Rational(0)) throw DomainError("order z must be positive");
    double wd = to_double(w), zd = to_double(z);
    ConormalSpec s;
    s.name = "resolved_infinity_w" + to_string(w) + "_z" + to_string(z);
    s.kind = ConormalKind::ResolvedInfinity;
    s.w = w;
    s.z = z;
    s.sampler = [wd, zd](double x, double lam) {
        return std::pow(x, wd) * std::pow(1.0 + x * x * lam * lam, -zd / 2.0) * cutoff(x);
    };
    s.closed_form = [wd, zd](double x, double y) {
        return std::pow(x, wd) * cutoff(x) * symbol_transform(zd, y / x) / x;
    };
    s.integrable = z > Rational(1);
    s.square_integrable = z * Rational(2) > Rational(1);
    return s;
}

ConormalSpec resolved_zero_case(const Rational& w, const Rational& z) {
    double wd = to_double(w);
    ConormalSpec s;
    s.name = "resolved_zero_w" + to_string(w) + "_z" + to_string(z);
    s.kind = ConormalKind::ResolvedZero;
    s.w = w;
    s.z = z;
    s.sampler = [wd](double x, double lam) {
        double t = lam / x;
        return std::pow(x, wd) * std::exp(-t * t) * cutoff(x);
    };
    s.closed_form = [wd](double x, double y) {
        return std::pow(x, wd + 1.0) * std::sqrt(kPi) * std::exp(-x * x * y * y / 4.0) * cutoff(x);
    };
    return s;
}

QuadConfig QuadConfig::from_json(const Json& j) {
    QuadConfig c;
    if (!j.is_object()) throw UsageError("quadrature config must be an object");
    for (const auto& [key, val] : j.items()) {
        if (key == "method") {
            std::string m = val.get<std::string>();
            if (m == "double_exponential") c.method = Method::DoubleExponential;
            else if (m == "trapezoid") c.method = Method::Trapezoid;
            else throw UsageError("unknown quadrature method " + m);
        } else if (key == "window") {
            std::string w = val.get<std::string>();
            if (w == "none") c.window = Window::None;
            else if (w == "hann") c.window = Window::Hann;
            else throw UsageError("unknown window " + w);
        } else if (key == "rel_tol") c.rel_tol = val.get<double>();
        else if (key == "tail_tol") c.tail_tol = val.get<double>();
        else if (key == "radius") c.radius = val.get<double>();
        else if (key == "step") c.step = val.get<double>();
        else if (key == "taper") c.taper = val.get<double>();
        else throw UsageError("unknown quadrature key " + key);
    }
    return c;
}

std::vector<FtSample> ft_sample(const ConormalSpec& spec, const std::vector<std::pair<double, double>>& grid,
                                const QuadConfig& cfg) {
    if (!spec.sampler) throw DomainError("case " + spec.name + " has no sampler");
    Transformer tr(spec, cfg);
    std::vector<FtSample> out;
    out.reserve(grid.size());
    double peak = 0;
    for (const auto& [x, y] : grid) {
        auto [v, err] = tr(x, y);
        out.push_back({x, y, v, err});
        peak = std::max(peak, std::abs(v));
    }
    for (const auto& s : out)
        if (s.error > cfg.tail_tol * peak)
            throw QuadratureFailure("error bound " + std::to_string(s.error) + " at x=" + std::to_string(s.x) +
                                    ", y=" + std::to_string(s.y) + " exceeds the allowed fraction of the peak " +
                                    std::to_string(peak));
    return out;
}

Json FitResult::to_json() const {
    Json j;
    j["region"] = region;
    j["fitted_exponent"] = fitted_exponent;
    j["residual"] = residual;
    j["points"] = points;
    j["prediction"] = prediction_type_name(prediction.type);
    j["expression"] = prediction.expression;
    if (prediction.weight) {
        j["predicted"] = prediction.weight->to_double();
        j["predicted_exact"] = exponent_to_json(Exponent(*prediction.weight));
    } else {
        j["predicted"] = nullptr;
    }
    j["sharp"] = prediction.sharp;
    j["pass"] = pass;
    if (!note.empty()) j["note"] = note;
    return j;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples, const std::string& region, double lo,
                       double hi) {
    std::vector<double> lx, ly;
    double mag_lo = kInf, mag_hi = 0, c_lo = kInf, c_hi = 0;
    for (const auto& [c, m] : samples) {
        if (c < lo || c > hi) continue;
        if (!(c > 0) || !std::isfinite(c)) throw DegenerateFit(region + ": coordinates must be positive");
        if (!(m > 0) || !std::isfinite(m)) throw DegenerateFit(region + ": magnitudes must be positive and finite");
        lx.push_back(std::log(c));
        ly.push_back(std::log(m));
        mag_lo = std::min(mag_lo, m);
        mag_hi = std::max(mag_hi, m);
        c_lo = std::min(c_lo, c);
        c_hi = std::max(c_hi, c);
    }
    if (lx.size() < 8) throw DegenerateFit(region + ": fewer than 8 points in the window");
    if (std::log10(mag_hi / mag_lo) < 1.0)
        throw DegenerateFit(region + ": magnitudes span less than one decade");
    if (c_hi <= c_lo) throw DegenerateFit(region + ": coordinates do not vary");

    double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        double r = ly[i] - (my + slope * (lx[i] - mx));
        ss += r * r;
    }
    FitResult f;
    f.region = region;
    f.fitted_exponent = slope;
    f.residual = std::sqrt(ss / n);
    f.points = lx.size();
    return f;
}

FtTolerances FtTolerances::from_json(const Json& j) {
    FtTolerances t;
    if (!j.is_object()) throw UsageError("tolerances must be an object");
    for (const auto& [key, val] : j.items()) {
        if (key == "exponent") t.exponent = val.get<double>();
        else if (key == "residual") t.residual = val.get<double>();
        else if (key == "rapid_slope") t.rapid_slope = val.get<double>();
        else if (key == "closed_form") t.closed_form = val.get<double>();
        else if (key == "parseval") t.parseval = val.get<double>();
        else throw UsageError("unknown tolerance key " + key);
    }
    return t;
}

void judge(FitResult& fit, const FtTolerances& tol) {
    const Prediction& p = fit.prediction;
    switch (p.type) {
    case Prediction::Type::Informational:
        fit.pass = true;
        return;
    case Prediction::Type::RapidDecay:
        fit.pass = fit.fitted_exponent <= tol.rapid_slope;
        return;
    case Prediction::Type::Weight:
        break;
    }
    if (!p.weight) {  // empty predicted set: rapid vanishing
        fit.pass = fit.fitted_exponent >= -tol.rapid_slope;
        return;
    }
    double w = p.weight->to_double();
    if (p.sharp)
        fit.pass = std::fabs(fit.fitted_exponent - w) <= tol.exponent && fit.residual <= tol.residual;
    else
        fit.pass = fit.fitted_exponent >= w - tol.exponent;
}

std::vector<RegionPlan> region_plans(const ConormalSpec& spec) {
    std::vector<RegionPlan> out;
    const Rational one(1);
    switch (spec.kind) {
    case ConormalKind::Symbol: {
        RegionPlan origin;
        origin.region = "origin";
        origin.coordinate_is_y = true;
        origin.fixed = 1.0;
        origin.lo = std::exp2(-44);
        origin.hi = std::exp2(-24);
        origin.per_octave = 1;
        // Only orders below 1 give a pure conormal weight at the origin.
        origin.prediction = weight_prediction(weight_set(spec.z - one), "z-1", spec.sharp, spec.z >= one);
        out.push_back(origin);
        RegionPlan tail;
        tail.region = "tail";
        tail.coordinate_is_y = true;
        tail.fixed = 1.0;
        tail.lo = 8;
        tail.hi = 16;
        tail.per_octave = 8;
        tail.prediction = rapid_prediction();
        out.push_back(tail);
        break;
    }
    case ConormalKind::ResolvedInfinity: {
        RegionPlan ff;
        ff.region = "ff0";
        ff.along_ratio = true;
        ff.fixed = 1.0;
        ff.lo = std::exp2(-13);
        ff.hi = std::exp2(-3);
        ff.prediction = weight_prediction(extended_union(weight_set(spec.w - one), weight_set(spec.z)), "(w-1) eu z",
                                          spec.sharp, spec.w - one == spec.z);
        out.push_back(ff);
        RegionPlan bf;
        bf.region = "bf0";
        bf.fixed = 1.0;
        bf.lo = std::exp2(-5);
        bf.hi = std::exp2(-1);
        bf.prediction = weight_prediction(weight_set(spec.z), "z", false, false);
        out.push_back(bf);
        RegionPlan inf;
        inf.region = "if0";
        inf.coordinate_is_y = true;
        inf.fixed = 1.0;
        inf.lo = 8;
        inf.hi = 16;
        inf.per_octave = 8;
        inf.prediction = rapid_prediction();
        out.push_back(inf);
        break;
    }
    case ConormalKind::ResolvedZero: {
        RegionPlan ff;
        ff.region = "ff_inf";
        ff.along_ratio = true;
        ff.fixed = 1.0;
        ff.lo = std::exp2(-13);
        ff.hi = std::exp2(-3);
        ff.prediction = weight_prediction(weight_set(spec.w + one), "w+1", spec.sharp, false);
        out.push_back(ff);
        RegionPlan bf;
        bf.region = "bf_inf";
        bf.fixed = 1.0;
        bf.lo = std::exp2(-13);
        bf.hi = std::exp2(-3);
        bf.prediction = weight_prediction(extended_union(weight_set(spec.z), weight_set(spec.w + one)), "z eu (w+1)",
                                          false, spec.z == spec.w + one);
        out.push_back(bf);
        RegionPlan inf;
        inf.region = "if_inf";
        inf.coordinate_is_y = true;
        inf.fixed = 0.5;
        inf.lo = 8;
        inf.hi = 16;
        inf.per_octave = 8;
        inf.prediction = rapid_prediction();
        out.push_back(inf);
        break;
    }
    }
    return out;
}

std::vector<FitResult> verify_case(const ConormalSpec& spec, const FtTolerances& tol, const QuadConfig& cfg) {
    std::vector<FitResult> out;
    for (const auto& plan : region_plans(spec)) {
        std::vector<double> coords = dyadic_points(plan.lo, plan.hi, plan.per_octave);
        std::vector<std::pair<double, double>> grid;
        for (double c : coords) grid.emplace_back(x_of(plan, c), y_of(spec, plan, c));
        auto samples = ft_sample(spec, grid, cfg);
        std::vector<std::pair<double, double>> mags;
        for (std::size_t i = 0; i < coords.size(); ++i) mags.emplace_back(coords[i], std::abs(samples[i].value));
        FitResult fit;
        try {
            fit = fit_exponent(mags, plan.region, plan.lo, plan.hi);
        } catch (const DegenerateFit& e) {
            if (plan.prediction.type != Prediction::Type::Informational) throw;
            fit.region = plan.region;
            fit.points = coords.size();
            fit.note = std::string("degenerate fit: ") + e.what();
        }
        fit.prediction = plan.prediction;
        if (plan.prediction.type == Prediction::Type::Informational && fit.note.empty())
            fit.note = "log term or smooth part at this weight; not tested";
        judge(fit, tol);
        out.push_back(std::move(fit));
    }
    return out;
}

ParsevalResult parseval_check(const ConormalSpec& spec, double x, const FtTolerances& tol, const QuadConfig& cfg) {
    if (!spec.square_integrable) throw DomainError("case " + spec.name + " is not square integrable");
    require_positive_x(x);
    using boost::math::quadrature::exp_sinh;
    using boost::math::quadrature::gauss_kronrod;
    Transformer tr(spec, cfg);
    double scale = spec.y_scale(x);
    double lam = 1.0 / scale;

    exp_sinh<double> es;
    double mass_a = lam * es.integrate(
                              [&](double t) {
                                  double p = spec.sampler(x, lam * t), m = spec.sampler(x, -lam * t);
                                  return p * p + m * m;
                              },
                              0.0, kInf);

    // |a^(-y)| = |a^(y)| for real a; y = scale * s^4 near the origin tames
    // integrable singularities there.
    auto hat2 = [&](double y) { return std::norm(tr(x, y).first); };
    double near = gauss_kronrod<double, 31>::integrate(
        [&](double s) {
            double s3 = s * s * s;
            return hat2(scale * s3 * s) * 4.0 * s3;
        },
        0.0, 1.0, 15, 1e-12);
    double far = es.integrate([&](double u) { return hat2(scale * u); }, 1.0, kInf);
    ParsevalResult r;
    r.x = x;
    r.mass_a = mass_a;
    r.mass_hat = 2.0 * scale * (near + far);
    r.rel_error = std::fabs(r.mass_hat / (2.0 * kPi * r.mass_a) - 1.0);
    r.pass = r.rel_error < tol.parseval;
    return r;
}

ClosedFormResult closed_form_check(const ConormalSpec& spec, double x, const FtTolerances& tol, const QuadConfig& cfg) {
    if (!spec.closed_form) throw DomainError("case " + spec.name + " has no closed form");
    require_positive_x(x);
    double scale = spec.y_scale(x);
    std::vector<std::pair<double, double>> grid;
    std::vector<double> exact;
    for (int k = -40; k <= 40; ++k) {
        if (k == 0 && !spec.integrable) continue;
        double y = scale * k / 4.0;
        grid.emplace_back(x, y);
        exact.push_back(spec.closed_form(x, y));
    }
    double peak = 0;
    for (double e : exact) peak = std::max(peak, std::fabs(e));
    auto samples = ft_sample(spec, grid, cfg);
    ClosedFormResult r;
    r.x = x;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (std::fabs(exact[i]) < 1e-8 * peak) continue;
        double err = std::abs(samples[i].value - exact[i]) / std::fabs(exact[i]);
        r.max_rel_error = std::max(r.max_rel_error, err);
        ++r.compared;
    }
    r.pass = r.compared > 0 && r.max_rel_error < tol.closed_form;
    return r;
}

bool CaseReport::passed() const {
    for (const auto& f : fits)
        if (!f.pass) return false;
    for (const auto& c : closed_form)
        if (!c.pass) return false;
    for (const auto& p : parseval)
        if (!p.pass) return false;
    return true;
}

Json CaseReport::to_json() const {
    Json j;
    j["name"] = spec.name;
    j["kind"] = kind_name(spec.kind);
    j["w"] = rational_to_json(spec.w);
    j["z"] = rational_to_json(spec.z);
    j["sharp"] = spec.sharp;
    Json fj = Json::array();
    for (const auto& f : fits) fj.push_back(f.to_json());
    j["fits"] = fj;
    Json cj = Json::array();
    for (const auto& c : closed_form)
        cj.push_back({{"x", c.x}, {"max_rel_error", c.max_rel_error}, {"compared", c.compared}, {"pass", c.pass}});
    j["closed_form"] = cj;
    if (spec.square_integrable) {
        Json pj = Json::array();
        for (const auto& p : parseval)
            pj.push_back({{"x", p.x}, {"mass_a", p.mass_a}, {"mass_hat", p.mass_hat}, {"rel_error", p.rel_error},
                          {"pass", p.pass}});
        j["parseval"] = pj;
    } else {
        j["parseval"] = "not applicable: a is not square integrable";
    }
    j["pass"] = passed();
    return j;
}

CaseReport check_case(const ConormalSpec& spec, const std::vector<double>& xs, const FtTolerances& tol,
                      const QuadConfig& cfg) {
    CaseReport r;
    r.spec = spec;
    r.fits = verify_case(spec, tol, cfg);
    std::vector<double> at = spec.kind == ConormalKind::Symbol ? std::vector<double>{1.0} : xs;
    for (double x : at) {
        if (spec.closed_form) r.closed_form.push_back(closed_form_check(spec, x, tol, cfg));
        if (spec.square_integrable) r.parseval.push_back(parseval_check(spec, x, tol, cfg));
    }
    return r;
}

bool SuiteReport::passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.passed(); });
}

Json SuiteReport::to_json() const {
    Json j = Json::array();
    for (const auto& c : cases) j.push_back(c.to_json());
    return j;
}

std::vector<ConormalSpec> default_cases() {
    return {lorentzian_case(),
            symbol_case(make_rational(1, 2)),
            symbol_case(make_rational(3, 4)),
            resolved_infinity_case(Rational(0), Rational(2)),
            resolved_zero_case(Rational(0), Rational(0))};
}

ConormalSpec case_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family")) throw UsageError("case needs a \"family\"");
    for (const auto& [key, val] : j.items())
        if (key != "family" && key != "w" && key != "z" && key != "name" && key != "sharp")
            throw UsageError("unknown case key " + key);
    std::string fam = j.at("family").get<std::string>();
    Rational w = j.contains("w") ? rational_from_json(j.at("w")) : Rational(0);
    Rational z = j.contains("z") ? rational_from_json(j.at("z")) : Rational(0);
    ConormalSpec s;
    if (fam == "lorentzian") s = lorentzian_case();
    else if (fam == "symbol") s = symbol_case(z);
    else if (fam == "resolved_infinity") s = resolved_infinity_case(w, z);
    else if (fam == "resolved_zero") s = resolved_zero_case(w, z);
    else throw UsageError("unknown family " + fam);
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (j.contains("sharp")) s.sharp = j.at("sharp").get<bool>();
    return s;
}

SuiteReport run_suite(const std::vector<ConormalSpec>& cases, const FtTolerances& tol, const QuadConfig& cfg) {
    SuiteReport r;
    for (const auto& c : cases) r.cases.push_back(check_case(c, {0.125, 0.5}, tol, cfg));
    return r;
}

} // namespace tbcalc
