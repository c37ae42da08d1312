#pragma once
// Product local times for m walks, discretized projected intersection local
// time estimators, annulus excursion counting, scale schedules, and the
// perfect/admissible point detectors.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "thickpoints/geometry.hpp"
#include "thickpoints/lattice_walk.hpp"
#include "thickpoints/planar_paths.hpp"

namespace thick {

// ---------------------------------------------------------------- products

inline constexpr int kMaxWalks = 8;

struct ProductEntry {
    std::array<std::uint32_t, kMaxWalks> counts{};
    std::uint64_t product = 0;
};

struct ProductField {
    int m = 0;
    std::uint64_t n = 0; // shared horizon
    PointMap<ProductEntry> points{64};
};

// Pointwise product of m local-time fields over the intersection of their
// supports. All fields must share the horizon n.
ProductField product_local_time(std::span<const LocalTimeField* const> fields);
ProductField product_local_time(const LocalTimeField& a, const LocalTimeField& b);

// ----------------------------------------------------------------- kernels

// Radial approximate identity supported on the unit disc, integral one.
// f_eps(x) = f(x/eps)/eps^2.
struct RadialKernel {
    std::function<double(double)> profile; // f as a function of |x| in [0,1)
    double eps_f = 0.0;

    double eval(Vec2 u) const {
        const double r = u.norm() / eps_f;
        if (r >= 1.0) return 0.0;
        return profile(r) / (eps_f * eps_f);
    }

    // Tent profile (3/pi)(1 - |x|); continuous with unit integral.
    static RadialKernel tent(double eps_f);
};

// Quadrature of 2*pi*int_0^1 f(r) r dr; construction-time validation helper.
double kernel_mass(const RadialKernel& kernel);
void validate_kernel(const RadialKernel& kernel, double tol = 1e-6);

// Spatial binning of path samples at cell side eps_f. Only the 3x3 block of
// cells around a query point can hold partners within kernel range.
class SampleBins {
  public:
    SampleBins(const PlanarPath& path, double cell);
    // Candidate sample indices near p, sorted ascending.
    void gather(Vec2 p, std::vector<std::uint32_t>& out) const;
    double cell() const { return cell_; }

  private:
    const PlanarPath& path_;
    double cell_;
    PointMap<std::vector<std::uint32_t>> bins_{1024};
};

// pi * sum_s sum_t dt dt' 1_{|W_s - x| < eps} f_{eps_f}(W_s - W'_t),
// evaluated with spatial binning of the second path. Identical term set and
// order as the brute-force double sum, so results agree bitwise.
double intersection_local_time_continuum(const PlanarPath& w, const PlanarPath& w2, Vec2 x,
                                         double eps, const RadialKernel& kernel);

// Variant with prefactor pi / lambda_norm (Brownian-stable pairing).
double intersection_wx(const PlanarPath& w, const PlanarPath& x_path, double lambda_norm,
                       Vec2 x, double eps, const RadialKernel& kernel);

// Per-sample weights w_s = pi * dt * dt' * sum_t f(W_s - W'_t); summing the
// weights of samples in A gives the estimator over A up to addition order.
std::vector<double> intersection_weights(const PlanarPath& w, const PlanarPath& w2,
                                         const RadialKernel& kernel);

// --------------------------------------------------------------- excursions

enum class ExcursionMode { OuterToInner, RoundTrip };

// Crossing state machine over sampled squared distances from a center.
// OuterToInner: armed at start or whenever d >= R, fires on d <= r.
// RoundTrip: after first touching d <= r, fires on each completed d >= R,
// re-arming on the next d <= r.
class ExcursionCounter {
  public:
    ExcursionCounter(double inner_r, double outer_R, ExcursionMode mode);
    void feed_dist2(double d2);
    std::uint64_t count() const { return count_; }

  private:
    double r2_, R2_;
    ExcursionMode mode_;
    bool armed_;
    std::uint64_t count_ = 0;
};

std::uint64_t excursion_count(std::span<const Vec2> path, Vec2 center, double inner_r,
                              double outer_R, ExcursionMode mode);
std::uint64_t excursion_count(std::span<const LatticePoint> path, LatticePoint center,
                              double inner_r, double outer_R, ExcursionMode mode);

// ---------------------------------------------------------------- schedules

enum class ScheduleKind { Factorial, Lattice };

struct ScaleEntry {
    int k = 0;
    double inner = 0.0;  // eps_k
    double outer = 0.0;  // eps_{k-1}
    double target = 0.0; // n_k
};

struct ScaleSchedule {
    ScheduleKind kind = ScheduleKind::Factorial;
    std::vector<ScaleEntry> entries;

    // Factorial parameters
    double eps1 = 0.0;
    double a = 0.0;

    // Lattice parameters and derived values
    std::uint64_t n = 0;
    double delta = 0.0;
    double K = 0.0;
    int k_n = 0;
    double r_n = 0.0;
    double R_n = 0.0;
    double m_kn = 0.0; // a * k(n)^2
};

// eps_k = eps1 (k!)^{-3}, n_k = 3 a k^2 log k, entries for k = 2..n_max.
ScaleSchedule make_factorial_schedule(double eps1, double a, int n_max);

// k(n) = floor((1/2 - delta) log n), r_n = (1+3d) e^{-k(n)} sqrt(n/(2K)),
// R_n = (1-3d) e^{-k(n)+1} sqrt(n/(2K)), m_k = a k^2.
ScaleSchedule make_lattice_schedule(std::uint64_t n, double delta, double K, double a);

// Geometric refinement eps_{k,j} = eps_k e^{-j/k}, j = 0..floor(3k log(k+1)).
std::vector<double> geometric_refinement(double eps_k, int k);

// ---------------------------------------------------------------- detectors

struct PerfectPointResult {
    bool is_perfect = false;
    bool truncated = false; // path ended before reaching |p - x| >= 2
    struct PerScale {
        int k;
        std::uint64_t n_half; // N_k(1/2)
        std::uint64_t n_two;  // N_k(2)
    };
    std::vector<PerScale> counts;
};

// n-perfect test: n_k - k <= N_k(1/2) <= N_k(2) <= n_k + k for k = 2..n,
// where N_k(rho) counts OuterToInner excursions from the eps_{k-1} circle to
// the eps_k circle before the path first reaches distance rho from x.
PerfectPointResult perfect_point_test(std::span<const Vec2> path, Vec2 x, int n, double a,
                                      double eps1 = 1.0 / 8.0);

// n,delta-admissibility: both walks complete at least (1-2 delta) m_{k(n)}
// round trips between the r_n and R_n circles around z within n steps.
struct AdmissibleResult {
    bool admissible = false;
    std::uint64_t excursions_x = 0;
    std::uint64_t excursions_x2 = 0;
    double threshold = 0.0;
};

AdmissibleResult admissible_test(const WalkRun& run_x, const WalkRun& run_x2, LatticePoint z,
                                 std::uint64_t n, double delta, double K, double a);

} // namespace thick
