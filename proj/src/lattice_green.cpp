#include "thickpoints/lattice_green.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "thickpoints/lattice_walk.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace thick {

namespace {
std::mutex g_column_mutex;

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
} // namespace

std::vector<LatticePoint> lattice_disc_interior(double R) {
    std::vector<LatticePoint> pts;
    const LatticeDisc disc{{0, 0}, R};
    const std::int32_t lim = std::int32_t(std::ceil(R));
    for (std::int32_t x = -lim; x <= lim; ++x)
        for (std::int32_t y = -lim; y <= lim; ++y)
            if (disc.contains({x, y})) pts.push_back({x, y});
    return pts;
}

int LatticeGreen::index_of(LatticePoint p) const {
    const std::int32_t* i = index_.find(p);
    return i ? *i : -1;
}

double LatticeGreen::at(LatticePoint x, LatticePoint y) const {
    const int ix = index_of(x);
    const int iy = index_of(y);
    if (ix < 0 || iy < 0)
        throw std::domain_error("LatticeGreen::at: point outside D_0(R)");
    if (!dense_.empty()) return dense_[std::size_t(ix) * domain_.size() + iy];
    {
        std::lock_guard<std::mutex> lock(g_column_mutex);
        if (columns_[iy]) return (*columns_[iy])[ix];
        if (columns_[ix]) return (*columns_[ix])[iy]; // symmetry
    }
    return column(y)[ix];
}

const std::vector<double>& LatticeGreen::column(LatticePoint y) const {
    const int iy = index_of(y);
    if (iy < 0) throw std::domain_error("LatticeGreen::column: point outside D_0(R)");
    if (!dense_.empty()) {
        // materialize once from the dense block
        std::lock_guard<std::mutex> lock(g_column_mutex);
        if (!columns_[iy]) {
            auto col = std::make_unique<std::vector<double>>(domain_.size());
            for (std::size_t i = 0; i < domain_.size(); ++i)
                (*col)[i] = dense_[i * domain_.size() + iy];
            columns_[iy] = std::move(col);
        }
        return *columns_[iy];
    }
    {
        std::lock_guard<std::mutex> lock(g_column_mutex);
        if (columns_[iy]) return *columns_[iy];
    }
    auto solved = std::make_unique<std::vector<double>>(solve_column(std::size_t(iy)));
    std::lock_guard<std::mutex> lock(g_column_mutex);
    if (!columns_[iy]) columns_[iy] = std::move(solved);
    return *columns_[iy];
}

// Red-black SOR on (I - P)g = e_col. The lattice is bipartite under the
// parity of x+y, so every update within one color reads only the other
// color: sweeps are race-free and bit-identical for any thread count.
std::vector<double> LatticeGreen::solve_column(std::size_t col) const {
    const std::size_t n = domain_.size();
    std::vector<double> g(n, 0.0);
    std::vector<std::int32_t> red, black;
    red.reserve(n / 2 + 1);
    black.reserve(n / 2 + 1);
    for (std::size_t i = 0; i < n; ++i)
        (((domain_[i].x + domain_[i].y) & 1) ? black : red).push_back(std::int32_t(i));

    const double omega = 2.0 / (1.0 + std::sin(3.14159265358979323846 / (2.0 * radius_)));
    auto sweep = [&](const std::vector<std::int32_t>& color) {
#pragma omp parallel for schedule(static)
        for (std::int64_t idx = 0; idx < std::int64_t(color.size()); ++idx) {
            const std::int32_t i = color[std::size_t(idx)];
            double s = (std::size_t(i) == col) ? 1.0 : 0.0;
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = neighbors_[i][d];
                if (j >= 0) s += 0.25 * g[j];
            }
            g[i] += omega * (s - g[i]);
        }
    };

    const std::size_t check_every = 16;
    for (std::size_t sweeps = 0; sweeps < 4000000; ++sweeps) {
        sweep(red);
        sweep(black);
        if (sweeps % check_every != check_every - 1) continue;
        double rmax = 0.0;
#pragma omp parallel for schedule(static) reduction(max : rmax)
        for (std::int64_t i = 0; i < std::int64_t(n); ++i) {
            double s = (std::size_t(i) == col) ? 1.0 : 0.0;
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = neighbors_[i][d];
                if (j >= 0) s += 0.25 * g[j];
            }
            rmax = std::max(rmax, std::abs(s - g[i]));
        }
        if (rmax < opts_.residual_tol) return g;
    }
    throw std::runtime_error("LatticeGreen: SOR failed to reach residual target");
}

std::vector<double> green_column_serial_gs(const std::vector<LatticePoint>& domain,
                                           const std::vector<std::array<std::int32_t, 4>>& neighbors,
                                           std::size_t col, double tol,
                                           std::size_t max_sweeps) {
    const std::size_t n = domain.size();
    std::vector<double> g(n, 0.0);
    for (std::size_t sweeps = 0; sweeps < max_sweeps; ++sweeps) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = neighbors[i][d];
                if (j >= 0) s += 0.25 * g[j];
            }
            g[i] = s;
        }
        if (sweeps % 8 != 7) continue;
        double rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = neighbors[i][d];
                if (j >= 0) s += 0.25 * g[j];
            }
            rmax = std::max(rmax, std::abs(s - g[i]));
        }
        if (rmax < tol) return g;
    }
    throw std::runtime_error("green_column_serial_gs: no convergence");
}

LatticeGreen lattice_green_exact(double R, const GreenOptions& opts) {
    LatticeGreen green;
    green.radius_ = R;
    green.opts_ = opts;
    green.domain_ = lattice_disc_interior(R);
    const std::size_t n = green.domain_.size();
    if (n == 0) throw std::invalid_argument("lattice_green_exact: empty domain");
    if (n > opts.point_budget)
        throw CapacityError("lattice_green_exact: point budget exceeded");

    green.index_ = PointMap<std::int32_t>(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        green.index_[green.domain_[i]] = std::int32_t(i);

    green.neighbors_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint p = green.domain_[i];
        const LatticePoint nb[4] = {{p.x + 1, p.y}, {p.x - 1, p.y},
                                    {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (int d = 0; d < 4; ++d) {
            const std::int32_t* j = green.index_.find(nb[d]);
            green.neighbors_[i][d] = j ? *j : -1;
        }
    }

    green.columns_.resize(n);

    if (n <= opts.dense_limit) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
        for (std::size_t i = 0; i < n; ++i)
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = green.neighbors_[i][d];
                if (j >= 0) A(Eigen::Index(i), j) -= 0.25;
            }
        Eigen::MatrixXd G = A.llt().solve(
            Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n)));
        green.dense_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                green.dense_[i * n + j] = G(Eigen::Index(i), Eigen::Index(j));
    }
    return green;
}

double kac_moment_lattice(double green00, int k) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("kac_moment_lattice: k must be 1 or 2");
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= double(i) * green00;
    return v; // k! * G^k
}

double kac_moment_lattice(double R, int k, const GreenOptions& opts) {
    const LatticeGreen g = lattice_green_exact(R, opts);
    return kac_moment_lattice(g.at_origin(), k);
}

double geometric_visit_moment(double green00, int k) {
    if (k == 1) return green00;
    if (k == 2) return 2.0 * green00 * green00 - green00;
    throw std::invalid_argument("geometric_visit_moment: k must be 1 or 2");
}

HitEstimate hitting_prob_zero(double R, double r, std::uint64_t replicas,
                              std::uint64_t seed) {
    if (replicas < 1) throw std::invalid_argument("hitting_prob_zero: replicas >= 1");
    if (r == 0.0) return {1.0, 0.0};
    if (r < 1.0 || r >= R)
        throw std::invalid_argument("hitting_prob_zero: need 1 <= r < R (or r = 0)");

    const LatticeDisc disc{{0, 0}, R};
    std::vector<std::uint8_t> hit(replicas, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(replicas); ++i) {
        Rng rng(mix_seed(seed, std::uint64_t(i)));
        const double phi = 6.283185307179586476925286766559 * rng.next_unit();
        LatticePoint z{std::int32_t(std::lround(r * std::cos(phi))),
                       std::int32_t(std::lround(r * std::sin(phi)))};
        if (z.x == 0 && z.y == 0) {
            hit[std::size_t(i)] = 1;
            continue;
        }
        LatticePoint pos = z;
        while (true) {
            pos = step_lattice(pos, rng.next_dir());
            if (pos.x == 0 && pos.y == 0) {
                hit[std::size_t(i)] = 1;
                break;
            }
            if (!disc.contains(pos)) break;
        }
    }
    std::uint64_t s = 0;
    for (std::uint8_t h : hit) s += h;
    const double p = double(s) / double(replicas);
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / double(replicas));
    return {p, se};
}

double hitting_prob_zero_exact(double R, double r, double tol) {
    if (r == 0.0) return 1.0;
    if (r < 1.0 || r >= R)
        throw std::invalid_argument("hitting_prob_zero_exact: need 1 <= r < R");
    const std::vector<LatticePoint> domain = lattice_disc_interior(R);
    const std::size_t n = domain.size();
    PointMap<std::int32_t> index(2 * n);
    for (std::size_t i = 0; i < n; ++i) index[domain[i]] = std::int32_t(i);

    // u = P(T_0 < T_exit); u(0) = 1, u = 0 off the disc. Solve by SOR over
    // the interior minus the origin.
    std::vector<double> u(n, 0.0);
    const std::int32_t* zero_idx = index.find({0, 0});
    if (!zero_idx) throw std::invalid_argument("hitting_prob_zero_exact: R too small");
    u[std::size_t(*zero_idx)] = 1.0;

    std::vector<std::array<std::int32_t, 4>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint p = domain[i];
        const LatticePoint nb[4] = {{p.x + 1, p.y}, {p.x - 1, p.y},
                                    {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (int d = 0; d < 4; ++d) {
            const std::int32_t* j = index.find(nb[d]);
            neighbors[i][d] = j ? *j : -1;
        }
    }
    const double omega = 2.0 / (1.0 + std::sin(3.14159265358979323846 / (2.0 * R)));
    for (std::size_t sweeps = 0; sweeps < 4000000; ++sweeps) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::int32_t(i) == *zero_idx) continue;
            double s = 0.0;
            for (int d = 0; d < 4; ++d)
                if (neighbors[i][d] >= 0) s += 0.25 * u[std::size_t(neighbors[i][d])];
            u[i] += omega * (s - u[i]);
        }
        if (sweeps % 16 != 15) continue;
        double rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::int32_t(i) == *zero_idx) continue;
            double s = 0.0;
            for (int d = 0; d < 4; ++d)
                if (neighbors[i][d] >= 0) s += 0.25 * u[std::size_t(neighbors[i][d])];
            rmax = std::max(rmax, std::abs(s - u[i]));
        }
        if (rmax < tol) break;
    }

    // Average over the same start law as the Monte Carlo: uniform angle,
    // rounded to the nearest lattice point.
    const int n_angles = 200000;
    double acc = 0.0;
    for (int a = 0; a < n_angles; ++a) {
        const double phi = 6.283185307179586476925286766559 * (double(a) + 0.5) / n_angles;
        LatticePoint z{std::int32_t(std::lround(r * std::cos(phi))),
                       std::int32_t(std::lround(r * std::sin(phi)))};
        const std::int32_t* j = index.find(z);
        acc += j ? u[std::size_t(*j)] : 0.0;
    }
    return acc / n_angles;
}

} // namespace thick
