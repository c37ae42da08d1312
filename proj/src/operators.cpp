#include "thickpoints/operators.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "thickpoints/rng.hpp"

namespace thick {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double green_disc(double r, Vec2 x, Vec2 y) {
    if (!(r > 0.0)) throw std::domain_error("green_disc: r > 0 required");
    if (!(x.norm() < r) || !(y.norm() < r))
        throw std::domain_error("green_disc: points must lie inside D(0,r)");
    if (x.x == y.x && x.y == y.y)
        throw std::domain_error("green_disc: singular on the diagonal x = y");
    const std::complex<double> zx(x.x, x.y), zy(y.x, y.y);
    const double sep = std::abs(zx - zy);
    const double conj_factor = std::abs(1.0 - zx * std::conj(zy) / (r * r));
    return std::log(r * conj_factor / sep) / kPi;
}

double c_beta(double beta) {
    if (!(beta > 0.0) || !(beta < 2.0))
        throw std::domain_error("c_beta: beta in (0,2) required");
    return std::pow(2.0, -beta) / kPi * std::tgamma((2.0 - beta) / 2.0) /
           std::tgamma(beta / 2.0);
}

double stable_potential(double beta, Vec2 x) {
    const double n = x.norm();
    if (n == 0.0) throw std::domain_error("stable_potential: singular at x = 0");
    return c_beta(beta) * std::pow(n, beta - 2.0);
}

// ---------------------------------------------------------------- Nystrom

NystromOperator::NystromOperator(double beta, double h) : beta_(beta), h_(h) {
    if (!(beta > 0.0) || !(beta < 2.0))
        throw std::domain_error("NystromOperator: beta in (0,2) required");
    grid_n_ = int(std::lround(2.0 / h));
    if (grid_n_ < 2) throw std::invalid_argument("NystromOperator: grid too coarse");
    for (int j = 0; j < grid_n_; ++j)
        for (int i = 0; i < grid_n_; ++i) {
            const double cx = -1.0 + (i + 0.5) * h;
            const double cy = -1.0 + (j + 0.5) * h;
            if (cx * cx + cy * cy < 1.0) {
                cells_.push_back({cx, cy});
                gx_.push_back(i);
                gy_.push_back(j);
            }
        }
    if (cells_.size() < 100)
        throw std::invalid_argument("NystromOperator: need at least 100 cells in the disc");

    const double h_eq = h / std::sqrt(kPi);
    diag_ = c_beta(beta) * (2.0 / beta) * std::pow(h_eq, beta - 2.0) * h * h;

    // Kernel values depend only on the integer offset between grid cells.
    const double cb = c_beta(beta);
    offset_kernel_.assign(std::size_t(grid_n_) * grid_n_, 0.0);
    for (int dj = 0; dj < grid_n_; ++dj)
        for (int di = 0; di < grid_n_; ++di) {
            if (di == 0 && dj == 0) continue;
            const double d = h * std::sqrt(double(di) * di + double(dj) * dj);
            offset_kernel_[std::size_t(dj) * grid_n_ + di] =
                cb * std::pow(d, beta - 2.0) * h * h;
        }
}

double NystromOperator::kernel_at(std::int32_t di, std::int32_t dj) const {
    return offset_kernel_[std::size_t(std::abs(dj)) * grid_n_ + std::abs(di)];
}

double NystromOperator::entry(std::size_t i, std::size_t j) const {
    if (i == j) return diag_;
    return kernel_at(gx_[i] - gx_[j], gy_[i] - gy_[j]);
}

void NystromOperator::apply(const std::vector<double>& v, std::vector<double>& y) const {
    const std::size_t n = cells_.size();
    y.assign(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) {
        const std::int32_t xi = gx_[std::size_t(i)];
        const std::int32_t yi = gy_[std::size_t(i)];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += kernel_at(xi - gx_[j], yi - gy_[j]) * v[j];
        // offset (0,0) stores zero, so the self term enters only here
        y[std::size_t(i)] = acc + diag_ * v[std::size_t(i)];
    }
}

void NystromOperator::apply_serial(const std::vector<double>& v, std::vector<double>& y) const {
    const std::size_t n = cells_.size();
    y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += kernel_at(gx_[i] - gx_[j], gy_[i] - gy_[j]) * v[j];
        y[i] = acc + diag_ * v[i];
    }
}

PowerResult power_iteration(const NystromOperator& op, const PowerOptions& opts) {
    const std::size_t n = op.size();
    std::vector<double> v(n, 1.0 / std::sqrt(double(n))); // positive start
    std::vector<double> av;
    double lambda_prev = 0.0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        op.apply(v, av);
        double rayleigh = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rayleigh += v[i] * av[i];
            norm2 += av[i] * av[i];
        }
        const double norm = std::sqrt(norm2);
        if (!(norm > 0.0)) throw std::runtime_error("power_iteration: vanished iterate");
        if (it > 1 && std::abs(rayleigh - lambda_prev) < opts.tol) {
            double res2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = av[i] - rayleigh * v[i];
                res2 += d * d;
            }
            return {rayleigh, it, std::sqrt(res2)};
        }
        lambda_prev = rayleigh;
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;
    }
    throw std::runtime_error("power_iteration: no convergence within iteration cap");
}

PowerResult lambda_beta(double beta, double h, const PowerOptions& opts) {
    const NystromOperator op(beta, h);
    return power_iteration(op, opts);
}

// -------------------------------------------------------------------- Kac

double MeasureAtoms::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

MeasureAtoms MeasureAtoms::uniform_disc_cells(double r1, double h) {
    if (!(r1 > 0.0) || !(h > 0.0) || !(h < r1))
        throw std::invalid_argument("uniform_disc_cells: need 0 < h < r1");
    MeasureAtoms rho;
    rho.cell_h = h;
    const int m = int(std::ceil(r1 / h));
    for (int j = -m; j <= m; ++j)
        for (int i = -m; i <= m; ++i) {
            const Vec2 c{(i + 0.5) * h, (j + 0.5) * h};
            if (c.norm2() < r1 * r1) {
                rho.points.push_back(c);
                rho.weights.push_back(h * h);
            }
        }
    return rho;
}

double kac_moment_continuum(const MeasureAtoms& rho, double r, Vec2 x0, int k) {
    if (k < 1 || k > 3) throw std::invalid_argument("kac_moment_continuum: k in {1,2,3}");
    if (!(x0.norm() < r)) throw std::domain_error("kac_moment_continuum: |x0| < r required");
    const std::size_t n = rho.points.size();
    if (n == 0) return 0.0;
    if (rho.weights.size() != n)
        throw std::invalid_argument("kac_moment_continuum: atoms/weights mismatch");
    for (const Vec2& p : rho.points)
        if (!(p.norm() < r))
            throw std::domain_error("kac_moment_continuum: support outside D(0,r)");
    for (double w : rho.weights)
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("kac_moment_continuum: weights must be >= 0");
    if (k >= 2 && !(rho.cell_h > 0.0))
        throw std::invalid_argument(
            "kac_moment_continuum: k >= 2 needs a cell measure (cell_h > 0)");

    // start vector u_i = g_r(x0, y_i) (atoms at x0 use the regularized value)
    const double h_eq = rho.cell_h / std::sqrt(kPi);
    auto diag_green = [&](Vec2 y) {
        const double conj_factor = std::abs(1.0 - y.norm2() / (r * r));
        return (std::log(r * conj_factor) + std::log(1.0 / h_eq) + 0.5) / kPi;
    };
    std::vector<double> state(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 y = rho.points[i];
        const bool coincide = (y.x == x0.x && y.y == x0.y);
        if (coincide && !(rho.cell_h > 0.0))
            throw std::domain_error("kac_moment_continuum: x0 sits on a point atom");
        const double g = coincide ? diag_green(y) : green_disc(r, x0, y);
        state[i] = g * rho.weights[i];
    }

    double factor = kPi; // accumulates k! pi^k
    for (int step = 2; step <= k; ++step) {
        std::vector<double> next(n, 0.0);
#pragma omp parallel for schedule(static)
        for (std::int64_t j = 0; j < std::int64_t(n); ++j) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double g = (std::size_t(j) == i)
                                     ? diag_green(rho.points[i])
                                     : green_disc(r, rho.points[i], rho.points[std::size_t(j)]);
                acc += state[i] * g;
            }
            next[std::size_t(j)] = acc * rho.weights[std::size_t(j)];
        }
        state = std::move(next);
        factor *= kPi * double(step);
    }
    double total = 0.0;
    for (double s : state) total += s;
    return factor * total;
}

double kac_moment_continuum_k1_direct(const MeasureAtoms& rho, double r, Vec2 x0) {
    double total = 0.0;
    for (std::size_t i = 0; i < rho.points.size(); ++i)
        total += green_disc(r, x0, rho.points[i]) * rho.weights[i];
    return kPi * total;
}

// ------------------------------------------------------------- quadrature

McEstimate intersection_first_moment_mc(double r, double r1, Vec2 x0, Vec2 x0p,
                                        std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("intersection_first_moment_mc: samples >= 1");
    if (!(r1 > 0.0) || !(r1 <= r / 2.0))
        throw std::invalid_argument("intersection_first_moment_mc: need 0 < r1 <= r/2");
    const double tol = 1e-9 * r1;
    if (std::abs(x0.norm() - r1) > tol || std::abs(x0p.norm() - r1) > tol)
        throw std::invalid_argument(
            "intersection_first_moment_mc: starts must lie on the r1 circle");

    Rng rng(seed);
    double sum = 0.0, sum2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec2 y;
        do {
            y = {r1 * (2.0 * rng.next_unit() - 1.0), r1 * (2.0 * rng.next_unit() - 1.0)};
        } while (y.norm2() >= r1 * r1 || (y.x == x0.x && y.y == x0.y) ||
                 (y.x == x0p.x && y.y == x0p.y));
        const double v = green_disc(r, x0, y) * green_disc(r, x0p, y);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / double(samples);
    const double var = std::max(sum2 / double(samples) - mean * mean, 0.0);
    const double area = kPi * r1 * r1;
    McEstimate out;
    out.estimate = kPi * area * mean;
    out.standard_error = kPi * area * std::sqrt(var / double(samples));
    return out;
}

double moment_bound_curve(int k, double r, double r1, double c) {
    if (k < 1) throw std::invalid_argument("moment_bound_curve: k >= 1 required");
    if (!(r1 > 0.0) || !(r1 <= r)) throw std::invalid_argument("moment_bound_curve: r1 <= r");
    if (!(c >= 0.0)) throw std::invalid_argument("moment_bound_curve: c >= 0 required");
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    return kfact * kfact * std::pow(std::log(r / r1) + c, 2.0 * k);
}

} // namespace thick
