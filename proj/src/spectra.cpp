#include "thickpoints/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace thick {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ThickCount count_thick_points(const ProductField& pf, double b) {
    if (pf.n < 2) throw std::invalid_argument("count_thick_points: n >= 2 required");
    if (!(b > 0.0)) throw std::invalid_argument("count_thick_points: b > 0 required");
    const double log_n = std::log(double(pf.n));
    ThickCount out;
    out.n = pf.n;
    out.param = b;
    out.threshold = b * b * log_n * log_n * log_n * log_n;
    pf.points.for_each([&](LatticePoint, const ProductEntry& e) {
        const double v = double(e.product);
        if (v >= out.threshold) ++out.count;
        out.max_value = std::max(out.max_value, v);
    });
    return out;
}

ThickCount single_walk_thick(const LocalTimeField& field, double a) {
    if (field.total_steps < 2)
        throw std::invalid_argument("single_walk_thick: n >= 2 required");
    if (!(a > 0.0)) throw std::invalid_argument("single_walk_thick: a > 0 required");
    const double log_n = std::log(double(field.total_steps));
    ThickCount out;
    out.n = field.total_steps;
    out.param = a;
    out.threshold = a * log_n * log_n;
    field.counts.for_each([&](LatticePoint, const std::uint32_t& c) {
        const double v = double(c);
        if (v >= out.threshold) ++out.count;
        out.max_value = std::max(out.max_value, v);
    });
    return out;
}

SlopeFit exponent_estimate(std::span<const std::pair<double, double>> series) {
    SlopeFit fit;
    std::vector<std::pair<double, double>> pts; // (log n, log M)
    for (const auto& [n, m] : series) {
        if (!(n > 1.0)) throw std::invalid_argument("exponent_estimate: n > 1 required");
        if (m <= 0.0) {
            ++fit.excluded_zero;
            continue;
        }
        pts.emplace_back(std::log(n), std::log(m));
    }
    std::sort(pts.begin(), pts.end());
    const auto distinct = std::unique(pts.begin(), pts.end(),
                                      [](auto& a, auto& b) { return a.first == b.first; });
    if (std::distance(pts.begin(), distinct) < 3) {
        fit.note = "fewer than 3 distinct nonzero points; slope undefined";
        return fit;
    }
    const int N = int(pts.size());
    double sx = 0, sy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / N, my = sy / N;
    double sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.defined = true;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (auto& [x, y] : pts) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.used_points = N;
    fit.stderr_ = (N > 2) ? std::sqrt(ss_res / (N - 2) / sxx) : 0.0;
    return fit;
}

SpectrumCurve coarse_spectrum_lebesgue(const PlanarPath& w, const PlanarPath& w2, double a,
                                       const std::vector<double>& eps_list, double pitch,
                                       const RadialKernel& kernel) {
    if (!(a > 0.0) || !(a < 1.0))
        throw std::invalid_argument("coarse_spectrum_lebesgue: a in (0,1) required");
    const double guard = std::max(2.0 * std::sqrt(std::max(w.dt, w2.dt)), pitch);
    for (double e : eps_list)
        if (!(e > guard))
            throw std::invalid_argument("coarse_spectrum_lebesgue: eps " + std::to_string(e) +
                                        " below resolution guard " + std::to_string(guard));

    // Per-sample intersection weights; I(D(x,eps)) is then a local sum.
    const std::vector<double> weights = intersection_weights(w, w2, kernel);
    const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
    const double cell = eps_max;
    PointMap<std::vector<std::uint32_t>> bins(1024);
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        const Vec2 p = w.points[i];
        bins[{std::int32_t(std::floor(p.x / cell)), std::int32_t(std::floor(p.y / cell))}]
            .push_back(std::uint32_t(i));
    }

    const double span = 1.0 + eps_max;
    const int half = int(std::ceil(span / pitch));
    const std::size_t ne = eps_list.size();
    std::vector<std::uint64_t> qualifying(ne, 0);

    const std::int64_t side = 2 * half + 1;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(ne, 0);
        std::vector<double> mass(ne);
#pragma omp for schedule(static)
        for (std::int64_t gi = 0; gi < side * side; ++gi) {
            const double x = (double(gi % side) - half) * pitch;
            const double y = (double(gi / side) - half) * pitch;
            const Vec2 c{x, y};
            const std::int32_t bx = std::int32_t(std::floor(x / cell));
            const std::int32_t by = std::int32_t(std::floor(y / cell));
            std::fill(mass.begin(), mass.end(), 0.0);
            for (std::int32_t dj = -1; dj <= 1; ++dj)
                for (std::int32_t di = -1; di <= 1; ++di) {
                    const auto* bucket = bins.find({bx + di, by + dj});
                    if (!bucket) continue;
                    for (std::uint32_t idx : *bucket) {
                        const double d2 = (w.points[idx] - c).norm2();
                        for (std::size_t e = 0; e < ne; ++e)
                            if (d2 < eps_list[e] * eps_list[e]) mass[e] += weights[idx];
                    }
                }
            for (std::size_t e = 0; e < ne; ++e) {
                const double eps = eps_list[e];
                const double le = std::log(eps);
                if (mass[e] >= a * a * eps * eps * le * le * le * le) ++local[e];
            }
        }
#pragma omp critical
        for (std::size_t e = 0; e < ne; ++e) qualifying[e] += local[e];
    }

    SpectrumCurve curve;
    curve.name = "coarse-spectrum";
    curve.predicted_name = "2a";
    curve.predicted_value = theory::coarse_spectrum_exponent(a);
    for (std::size_t e = 0; e < ne; ++e) {
        SpectrumPoint pt;
        pt.param = eps_list[e];
        pt.replicas = 1;
        if (qualifying[e] == 0) {
            pt.flagged = true; // empty set: -inf proxy, excluded from fits
            pt.estimate = 0.0;
        } else {
            const double leb = pitch * pitch * double(qualifying[e]);
            pt.estimate = std::log(leb) / std::log(eps_list[e]);
        }
        curve.points.push_back(pt);
    }
    return curve;
}

namespace theory {

namespace {
[[noreturn]] void range_error(const std::string& what) {
    throw std::domain_error("theory: " + what);
}
} // namespace

double pair_max_constant() { return 1.0 / (4.0 * kPi * kPi); }

double pair_count_exponent(double b) {
    if (!(b > 0.0) || !(b < 1.0 / (2.0 * kPi)))
        range_error("pair count exponent requires 0 < b < 1/(2 pi)");
    return 1.0 - 2.0 * kPi * b;
}

double single_max_constant() { return 1.0 / kPi; }

double single_count_exponent(double a) {
    if (!(a > 0.0) || !(a < 1.0 / kPi))
        range_error("single-walk count exponent requires 0 < a < 1/pi");
    return 1.0 - kPi * a;
}

double occupation_sup_constant() { return 2.0; }

double kset_sup_constant(double area) {
    if (!(area > 0.0)) range_error("K-set sup requires |K| > 0");
    return 2.0 * area / kPi;
}

double kset_dim(double a, double area) {
    if (!(area > 0.0)) range_error("K-set dimension requires |K| > 0");
    if (!(a > 0.0) || !(a <= 2.0 * area / kPi))
        range_error("K-set dimension requires 0 < a <= 2|K|/pi");
    return 2.0 - a * kPi / area;
}

double intersection_sup_constant() { return 1.0; }

double intersection_dim(double a) {
    if (!(a > 0.0) || !(a <= 1.0)) range_error("intersection dimension requires 0 < a <= 1");
    return 2.0 - 2.0 * a;
}

double stable_sup_constant(double beta) {
    if (!(beta > 0.0) || !(beta < 2.0)) range_error("stable sup requires beta in (0,2)");
    return beta * beta / 4.0;
}

double stable_dim(double beta, double a) {
    if (!(beta > 0.0) || !(beta < 2.0)) range_error("stable dimension requires beta in (0,2)");
    if (!(a > 0.0) || !(a <= beta / 2.0))
        range_error("stable dimension requires 0 < a <= beta/2");
    return beta - 2.0 * a;
}

double mfold_sup_constant(int m) {
    if (m < 1) range_error("m-fold sup requires m >= 1");
    return std::pow(2.0 / double(m), double(m));
}

double mfold_dim(int m, double a) {
    if (m < 1) range_error("m-fold dimension requires m >= 1");
    if (!(a > 0.0) || !(a <= 2.0 / double(m)))
        range_error("m-fold dimension requires 0 < a <= 2/m");
    return 2.0 - double(m) * a;
}

double coarse_spectrum_exponent(double a) {
    if (!(a > 0.0) || !(a < 1.0)) range_error("coarse spectrum requires 0 < a < 1");
    return 2.0 * a;
}

} // namespace theory

} // namespace thick
