#pragma once
// Time-discretized planar Brownian motion and isotropic beta-stable paths,
// plus occupation measures over discs and general K-sets.
//
// Conventions: BM increments are centered Gaussians with per-coordinate
// variance dt (so E|W_t|^2 = 2t and the exit time of the unit disc from the
// origin has mean 1/2). The stable path has characteristic function
// exp(-t |xi|^beta), realized by Brownian subordination: per step the
// per-coordinate Gaussian variance is 2 * dt^{2/beta} * S with S a standard
// one-sided (beta/2)-stable variable (Kanter sampler). That scale is what
// makes the 0-potential density equal c_beta |x|^{beta-2}.

#include <cstdint>
#include <string>
#include <vector>

#include "thickpoints/geometry.hpp"
#include "thickpoints/kset.hpp"

namespace thick {

enum class PathKind { BM, Stable, Injected };

struct PlanarPath {
    double dt = 0.0;
    std::vector<Vec2> points;
    PathKind kind = PathKind::Injected;
    double beta = 0.0; // set for Stable
};

struct ExitRadius {
    double r;
};
struct FixedTime {
    double T;
};

PlanarPath simulate_bm(std::uint64_t seed, double dt, ExitRadius stop, Vec2 start = {0, 0},
                       std::uint64_t max_steps = (std::uint64_t(1) << 31));
PlanarPath simulate_bm(std::uint64_t seed, double dt, FixedTime stop, Vec2 start = {0, 0});

PlanarPath simulate_stable(std::uint64_t seed, double beta, double dt, double T,
                           Vec2 start = {0, 0});

// Standard one-sided alpha-stable S with E exp(-lambda S) = exp(-lambda^alpha),
// alpha in (0,1). Kanter's representation from a uniform and an exponential.
double sample_one_sided_stable(double alpha, Rng& rng);

enum class RegionKind { Disc, KSet };

struct OccupationQuery {
    Vec2 center{};
    double eps = 0.0;
    RegionKind region = RegionKind::Disc;
    const KSet* kset = nullptr; // required when region == KSet
};

// dt * #{ samples i <= horizon_index with point in region }.
double occupation_measure(const PlanarPath& path, const OccupationQuery& query,
                          std::size_t horizon_index);

inline double occupation_measure(const PlanarPath& path, const OccupationQuery& query) {
    return occupation_measure(path, query, path.points.size() - 1);
}

struct OccupationProfile {
    std::vector<Vec2> centers;
    std::vector<double> eps_list;
    // ratios[c * eps_list.size() + e]; disc: mu/(eps^2 (log 1/eps)^2),
    // K-set: pi*mu/(|K| eps^2 (log 1/eps)^2).
    std::vector<double> ratios;
    std::vector<double> sup_per_eps;

    double at(std::size_t c, std::size_t e) const { return ratios[c * eps_list.size() + e]; }
};

// Normalized occupation ratios over a center grid. `pitch` is the grid pitch
// used for the resolution guard eps > max(2*sqrt(dt), pitch); violations
// raise an error naming the offending eps. Pass kset = nullptr for discs.
OccupationProfile occupation_profile(const PlanarPath& path, const std::vector<Vec2>& centers,
                                     const std::vector<double>& eps_list, double pitch,
                                     const KSet* kset = nullptr);

} // namespace thick
