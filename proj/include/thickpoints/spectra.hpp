#pragma once
// Thick-point counting, exponent estimation by log-log regression, the
// coarse Lebesgue spectrum, and the closed-form theory curves. Natural logs
// throughout; thresholds are inclusive (>=).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thickpoints/intersection.hpp"

namespace thick {

struct ThickCount {
    std::uint64_t n = 0;       // horizon
    double param = 0.0;        // b (pair) or a (single walk)
    double threshold = 0.0;    // b^2 (log n)^4 or a (log n)^2
    std::uint64_t count = 0;   // M = #{x : statistic >= threshold}
    double max_value = 0.0;    // T = max statistic (0 when empty)
};

// Pair statistic L L' against b^2 (log n)^4.
ThickCount count_thick_points(const ProductField& pf, double b);

// Single-walk statistic L against a (log n)^2.
ThickCount single_walk_thick(const LocalTimeField& field, double a);

struct SlopeFit {
    bool defined = false;
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
    int used_points = 0;
    int excluded_zero = 0;
    std::string note;
};

// OLS of log M_n on log n. Points with M_n = 0 are excluded and flagged;
// if nothing survives the fit is reported undefined, not fabricated.
SlopeFit exponent_estimate(std::span<const std::pair<double, double>> series);

struct SpectrumPoint {
    double param = 0.0;    // the sweep value (eps, n, ...)
    double estimate = 0.0;
    double stderr_ = 0.0;
    int replicas = 0;
    bool flagged = false;  // e.g. empty qualifying set
};

struct SpectrumCurve {
    std::string name;
    std::string predicted_name;
    double predicted_value = 0.0;
    std::vector<SpectrumPoint> points;
};

// Coarse Lebesgue spectrum: per eps, (pitch^2 x #qualifying grid centers)
// where a center qualifies if I(D(x,eps)) >= a^2 eps^2 (log eps)^4; the
// estimate is log Leb / log eps against the predicted limit 2a.
SpectrumCurve coarse_spectrum_lebesgue(const PlanarPath& w, const PlanarPath& w2, double a,
                                       const std::vector<double>& eps_list, double pitch,
                                       const RadialKernel& kernel);

// Closed-form constants and exponent laws. Out-of-range parameters raise a
// domain error naming the constraint.
namespace theory {

double pair_max_constant();                    // 1/(4 pi^2)
double pair_count_exponent(double b);          // 1 - 2 pi b, 0 < b < 1/(2 pi)
double single_max_constant();                  // 1/pi
double single_count_exponent(double a);        // 1 - pi a, 0 < a < 1/pi
double occupation_sup_constant();              // 2
double kset_sup_constant(double area);         // 2 |K| / pi
double kset_dim(double a, double area);        // 2 - a pi/|K|, 0 < a <= 2|K|/pi
double intersection_sup_constant();            // 1
double intersection_dim(double a);             // 2 - 2a, 0 < a <= 1
double stable_sup_constant(double beta);       // beta^2/4
double stable_dim(double beta, double a);      // beta - 2a, 0 < a <= beta/2
double mfold_sup_constant(int m);              // (2/m)^m
double mfold_dim(int m, double a);             // 2 - m a, 0 < a <= 2/m
double coarse_spectrum_exponent(double a);     // 2a, 0 < a < 1

} // namespace theory

} // namespace thick
