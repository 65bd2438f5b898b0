#pragma once

#include "tbcalc/indexset.hpp"
#include "tbcalc/json_io.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tbcalc {

// Numerical checks of the decay of Fourier transforms
//   a^(x, y) = int exp(i lambda y) a(x, lambda) dlambda
// for conormal test functions.

enum class ConormalKind {
    Symbol,            // a(lambda) of order -z; transform near y = 0
    ResolvedInfinity,  // weights (w, z, inf) where x -> 0 meets |lambda| -> inf
    ResolvedZero,      // weights (w, z, inf) where x -> 0 meets lambda -> 0
};

std::string kind_name(ConormalKind k);

struct ConormalSpec {
    std::string name;
    ConormalKind kind = ConormalKind::Symbol;
    Rational w{0};
    Rational z{0};
    std::function<double(double x, double lambda)> sampler;
    std::function<double(double x, double y)> closed_form;  // of the transform, when known
    bool even = true;               // a(x, -lambda) = a(x, lambda); skips the sine part
    bool sharp = true;              // leading weights are attained, not just bounds
    bool integrable = true;         // a(x, .) in L^1, so y = 0 may be sampled
    bool square_integrable = true;  // a(x, .) in L^2, so the Parseval check applies

    // Natural y scale at x: 1, x or 1/x.
    double y_scale(double x) const;
};

// <lambda>^-z.
ConormalSpec symbol_case(const Rational& z);
// (1 + lambda^2)^-1 with its transform pi exp(-|y|).
ConormalSpec lorentzian_case();
// x^w (1 + x^2 lambda^2)^(-z/2) phi(x), phi(x) = exp(-x^2).
ConormalSpec resolved_infinity_case(const Rational& w, const Rational& z);
// x^w exp(-(lambda/x)^2) psi(x), psi(x) = exp(-x^2); z labels the side face.
ConormalSpec resolved_zero_case(const Rational& w, const Rational& z);

struct QuadConfig {
    enum class Method { DoubleExponential, Trapezoid };
    enum class Window { None, Hann };
    Method method = Method::DoubleExponential;
    double rel_tol = 1e-12;     // target of the double-exponential rule
    double tail_tol = 1e-8;     // error bound allowed, relative to the batch peak
    double radius = 200.0;      // trapezoid truncation radius
    double step = 1e-3;         // trapezoid step
    Window window = Window::None;
    double taper = 0.1;         // Hann taper width as a fraction of the radius

    static QuadConfig from_json(const Json& j);
};

struct FtSample {
    double x = 0;
    double y = 0;
    std::complex<double> value;
    double error = 0;  // absolute quadrature plus tail bound
};

// Transform at each (x, y). QuadratureFailure when some error bound exceeds
// tail_tol times the largest |value| of the batch.
std::vector<FtSample> ft_sample(const ConormalSpec& spec, const std::vector<std::pair<double, double>>& grid,
                                const QuadConfig& cfg = {});

struct Prediction {
    enum class Type { Weight, RapidDecay, Informational };
    Type type = Type::Weight;
    ExtSurd weight;           // least real part of the predicted index set
    std::string expression;   // e.g. "(w-1) eu z"
    bool sharp = false;
};

struct FitResult {
    std::string region;
    double fitted_exponent = 0;  // slope of log|a^| against log of the region coordinate
    double residual = 0;         // rms deviation of log|a^| from the fitted line
    std::size_t points = 0;
    Prediction prediction;
    bool pass = false;
    std::string note;

    Json to_json() const;
};

// Least-squares slope of log(magnitude) against log(coordinate) over points
// with coordinate in [lo, hi]. DegenerateFit with fewer than 8 points,
// a non-positive magnitude, less than a decade of coordinates, or constant
// magnitudes. The result has no prediction and pass = false.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples, const std::string& region,
                       double lo, double hi);

struct FtTolerances {
    double exponent = 0.05;
    double residual = 0.05;       // sharp fits only
    double rapid_slope = -10.0;   // slopes at or below this count as rapid decay
    double closed_form = 1e-6;
    double parseval = 1e-6;

    static FtTolerances from_json(const Json& j);
};

// Sets pass from the prediction: sharp weights within the tolerance (and a
// small residual), other weights not undercut by more than the tolerance,
// rapid decay at or below rapid_slope; informational fits always pass.
void judge(FitResult& fit, const FtTolerances& tol);

// Predicted weight of every fitted region, computed with index-set algebra.
struct RegionPlan {
    std::string region;
    Prediction prediction;
    bool along_ratio = false;  // coordinate x with y = c*x (or x*y = c); else x at fixed y or |y| at fixed x
    bool coordinate_is_y = false;
    double fixed = 1.0;        // c, the fixed y, or the fixed x
    double lo = 0, hi = 0;
    int per_octave = 2;
};
std::vector<RegionPlan> region_plans(const ConormalSpec& spec);

std::vector<FitResult> verify_case(const ConormalSpec& spec, const FtTolerances& tol = {},
                                   const QuadConfig& cfg = {});

struct ParsevalResult {
    double x = 0;
    double mass_a = 0;    // int |a(x, lambda)|^2 dlambda
    double mass_hat = 0;  // int |a^(x, y)|^2 dy
    double rel_error = 0; // |mass_hat / (2 pi mass_a) - 1|
    bool pass = false;
};
ParsevalResult parseval_check(const ConormalSpec& spec, double x, const FtTolerances& tol = {},
                              const QuadConfig& cfg = {});

struct ClosedFormResult {
    double x = 0;
    double max_rel_error = 0;  // over y = k*scale/4, |k| <= 40, where the closed form is >= 1e-8 of its peak
    std::size_t compared = 0;
    bool pass = false;
};
ClosedFormResult closed_form_check(const ConormalSpec& spec, double x, const FtTolerances& tol = {},
                                   const QuadConfig& cfg = {});

struct CaseReport {
    ConormalSpec spec;
    std::vector<FitResult> fits;
    std::vector<ClosedFormResult> closed_form;
    std::vector<ParsevalResult> parseval;  // empty when a(x, .) is not square integrable
    bool passed() const;
    Json to_json() const;
};

// Fits, closed-form comparison and Parseval at each x (x ignored for symbols).
CaseReport check_case(const ConormalSpec& spec, const std::vector<double>& xs, const FtTolerances& tol = {},
                      const QuadConfig& cfg = {});

struct SuiteReport {
    std::vector<CaseReport> cases;
    bool passed() const;
    Json to_json() const;
};

// The built-in cases: the Lorentzian, symbols of order -1/2 and -3/4, and one
// family of each resolved kind.
std::vector<ConormalSpec> default_cases();
// {"family": "lorentzian" | "symbol" | "resolved_infinity" | "resolved_zero", "w", "z", "name"}
ConormalSpec case_from_json(const Json& j);
SuiteReport run_suite(const std::vector<ConormalSpec>& cases, const FtTolerances& tol = {},
                      const QuadConfig& cfg = {});

} // namespace tbcalc
