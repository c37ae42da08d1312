#include "thickpoints/planar_paths.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thick {

PlanarPath simulate_bm(std::uint64_t seed, double dt, ExitRadius stop, Vec2 start,
                       std::uint64_t max_steps) {
    if (!(dt > 0.0) || !(stop.r > 0.0))
        throw std::invalid_argument("simulate_bm: dt and exit radius must be positive");
    Rng rng(seed);
    const double sd = std::sqrt(dt);
    PlanarPath path;
    path.dt = dt;
    path.kind = PathKind::BM;
    Vec2 w = start;
    path.points.push_back(w);
    const double r2 = stop.r * stop.r;
    std::uint64_t steps = 0;
    while (w.norm2() < r2) {
        if (++steps > max_steps)
            throw std::runtime_error("simulate_bm: exit not reached within step cap");
        const auto [gx, gy] = rng.next_gauss_pair();
        w.x += sd * gx;
        w.y += sd * gy;
        path.points.push_back(w);
    }
    return path;
}

PlanarPath simulate_bm(std::uint64_t seed, double dt, FixedTime stop, Vec2 start) {
    if (!(dt > 0.0) || !(stop.T > 0.0))
        throw std::invalid_argument("simulate_bm: dt and T must be positive");
    Rng rng(seed);
    const double sd = std::sqrt(dt);
    const std::uint64_t n = std::uint64_t(std::floor(stop.T / dt));
    PlanarPath path;
    path.dt = dt;
    path.kind = PathKind::BM;
    path.points.reserve(n + 1);
    Vec2 w = start;
    path.points.push_back(w);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto [gx, gy] = rng.next_gauss_pair();
        w.x += sd * gx;
        w.y += sd * gy;
        path.points.push_back(w);
    }
    return path;
}

// Kanter's representation: S = A(U)^{1/(1-a)} * E^{-(1-a)/a} with
// A(u) = sin(a pi u)^a sin((1-a) pi u)^{1-a} / sin(pi u). Evaluated in logs.
double sample_one_sided_stable(double alpha, Rng& rng) {
    const double u = rng.next_unit_open();
    const double e = rng.next_exp();
    const double pi = 3.14159265358979323846;
    const double log_a = alpha * std::log(std::sin(alpha * pi * u)) +
                         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * pi * u)) -
                         std::log(std::sin(pi * u));
    return std::exp(log_a / (1.0 - alpha) - ((1.0 - alpha) / alpha) * std::log(e));
}

PlanarPath simulate_stable(std::uint64_t seed, double beta, double dt, double T, Vec2 start) {
    if (!(beta > 0.0) || !(beta < 2.0))
        throw std::invalid_argument("simulate_stable: beta must lie in (0,2)");
    if (!(dt > 0.0) || !(T > 0.0))
        throw std::invalid_argument("simulate_stable: dt and T must be positive");
    Rng rng(seed);
    const double alpha = beta / 2.0;
    const double sub_scale = std::pow(dt, 1.0 / alpha); // dt^{2/beta}
    const std::uint64_t n = std::uint64_t(std::floor(T / dt));
    PlanarPath path;
    path.dt = dt;
    path.kind = PathKind::Stable;
    path.beta = beta;
    path.points.reserve(n + 1);
    Vec2 x = start;
    path.points.push_back(x);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double subordinate = sub_scale * sample_one_sided_stable(alpha, rng);
        const double sd = std::sqrt(2.0 * subordinate);
        const auto [gx, gy] = rng.next_gauss_pair();
        x.x += sd * gx;
        x.y += sd * gy;
        path.points.push_back(x);
    }
    return path;
}

namespace {

inline bool in_region(const OccupationQuery& q, Vec2 p) {
    if (q.region == RegionKind::Disc) return (p - q.center).norm2() < q.eps * q.eps;
    const Vec2 u = {(p.x - q.center.x) / q.eps, (p.y - q.center.y) / q.eps};
    return q.kset->contains(u);
}

} // namespace

double occupation_measure(const PlanarPath& path, const OccupationQuery& query,
                          std::size_t horizon_index) {
    if (!(query.eps > 0.0)) throw std::invalid_argument("occupation_measure: eps > 0 required");
    if (query.region == RegionKind::KSet && query.kset == nullptr)
        throw std::invalid_argument("occupation_measure: KSet region without a set");
    if (horizon_index >= path.points.size())
        throw std::out_of_range("occupation_measure: horizon beyond path length");
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i <= horizon_index; ++i)
        if (in_region(query, path.points[i])) ++hits;
    return path.dt * double(hits);
}

OccupationProfile occupation_profile(const PlanarPath& path, const std::vector<Vec2>& centers,
                                     const std::vector<double>& eps_list, double pitch,
                                     const KSet* kset) {
    const double guard = std::max(2.0 * std::sqrt(path.dt), pitch);
    std::ostringstream bad;
    for (double e : eps_list)
        if (!(e > guard)) bad << (bad.tellp() > 0 ? ", " : "") << e;
    if (bad.tellp() > 0)
        throw std::invalid_argument("occupation_profile: eps below resolution guard " +
                                    std::to_string(guard) + ": " + bad.str());

    OccupationProfile out;
    out.centers = centers;
    out.eps_list = eps_list;
    out.ratios.assign(centers.size() * eps_list.size(), 0.0);
    out.sup_per_eps.assign(eps_list.size(), 0.0);

    // Spatial bins at the largest eps keep the per-center scan local.
    const double eps_max = *std::max_element(eps_list.begin(), eps_list.end());
    const double cell = eps_max;
    PointMap<std::vector<std::uint32_t>> bins(1024);
    for (std::size_t i = 0; i < path.points.size(); ++i) {
        const Vec2 p = path.points[i];
        bins[{std::int32_t(std::floor(p.x / cell)), std::int32_t(std::floor(p.y / cell))}]
            .push_back(std::uint32_t(i));
    }

    const std::size_t ne = eps_list.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < std::int64_t(centers.size()); ++c) {
        const Vec2 x = centers[std::size_t(c)];
        const std::int32_t bx = std::int32_t(std::floor(x.x / cell));
        const std::int32_t by = std::int32_t(std::floor(x.y / cell));
        std::vector<std::uint64_t> hits(ne, 0);
        for (std::int32_t dj = -1; dj <= 1; ++dj)
            for (std::int32_t di = -1; di <= 1; ++di) {
                const auto* bucket = bins.find({bx + di, by + dj});
                if (!bucket) continue;
                for (std::uint32_t idx : *bucket) {
                    const Vec2 p = path.points[idx];
                    const double d2 = (p - x).norm2();
                    for (std::size_t e = 0; e < ne; ++e) {
                        const double eps = eps_list[e];
                        if (kset == nullptr) {
                            if (d2 < eps * eps) ++hits[e];
                        } else {
                            if (d2 < eps * eps * 2.0 &&
                                kset->contains({(p.x - x.x) / eps, (p.y - x.y) / eps}))
                                ++hits[e];
                        }
                    }
                }
            }
        for (std::size_t e = 0; e < ne; ++e) {
            const double eps = eps_list[e];
            const double mu = path.dt * double(hits[e]);
            const double log_term = std::log(1.0 / eps);
            double denom = eps * eps * log_term * log_term;
            if (kset != nullptr) denom *= kset->area() / 3.14159265358979323846;
            out.ratios[std::size_t(c) * ne + e] = mu / denom;
        }
    }
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (std::size_t e = 0; e < ne; ++e)
            out.sup_per_eps[e] = std::max(out.sup_per_eps[e], out.ratios[c * ne + e]);
    return out;
}

} // namespace thick
