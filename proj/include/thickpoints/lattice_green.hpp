#pragma once
// Exact Green's function of the simple random walk killed outside the open
// lattice disc D_0(R): G(x,y) = expected visits to y strictly before exit,
// started at x. Solves (I - P_interior) G = I. Small domains use a dense
// Cholesky factorization; larger ones solve single columns with red-black
// SOR (OpenMP) against a residual target of 1e-10 per entry. A serial
// Gauss-Seidel reference sweep is kept for tests and the benchmark.

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "thickpoints/geometry.hpp"

namespace thick {

struct GreenOptions {
    std::size_t point_budget = 100000; // capacity error above this
    std::size_t dense_limit = 2200;    // full-matrix path below this
    double residual_tol = 1e-10;       // max-norm residual per entry
};

class LatticeGreen {
  public:
    double radius() const { return radius_; }
    const std::vector<LatticePoint>& domain() const { return domain_; }
    bool has_dense() const { return !dense_.empty(); }

    // G(x, y); iterative domains solve and cache the column of y.
    double at(LatticePoint x, LatticePoint y) const;
    double at_origin() const { return at({0, 0}, {0, 0}); }

    // Row of G against a fixed y (one iterative solve), indexed like domain().
    const std::vector<double>& column(LatticePoint y) const;

  private:
    friend LatticeGreen lattice_green_exact(double R, const GreenOptions&);

    int index_of(LatticePoint p) const;
    std::vector<double> solve_column(std::size_t col) const;

    double radius_ = 0.0;
    GreenOptions opts_{};
    std::vector<LatticePoint> domain_;
    PointMap<std::int32_t> index_{64};
    std::vector<double> dense_; // row-major n x n when small
    // neighbor structure for the iterative path
    std::vector<std::array<std::int32_t, 4>> neighbors_;
    mutable std::vector<std::unique_ptr<std::vector<double>>> columns_;
};

LatticeGreen lattice_green_exact(double R, const GreenOptions& opts = {});

// Serial Gauss-Seidel sweeps for (I-P)g = e_col; reference kernel used by
// tests and the benchmark against the red-black SOR path.
std::vector<double> green_column_serial_gs(const std::vector<LatticePoint>& domain,
                                           const std::vector<std::array<std::int32_t, 4>>& neighbors,
                                           std::size_t col, double tol,
                                           std::size_t max_sweeps = 4000000);

// Interior points of D_0(R), in scan order.
std::vector<LatticePoint> lattice_disc_interior(double R);

// Paper-form reference k! * G_R(0,0)^k for k in {1,2}.
double kac_moment_lattice(double R, int k, const GreenOptions& opts = {});
double kac_moment_lattice(double green00, int k);

// Moments of the exact discrete visit law (geometric with mean G):
// k=1 -> G, k=2 -> 2G^2 - G.
double geometric_visit_moment(double green00, int k);

struct HitEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Monte Carlo estimate of P^z(T_0 < T_exit(D_0(R))), starts on the lattice
// circle nearest radius r (r = 0 degenerates to probability one).
HitEstimate hitting_prob_zero(double R, double r, std::uint64_t replicas,
                              std::uint64_t seed);

// Exact Dirichlet solve of the same hitting probability, averaged over the
// same start circle; diagnostic companion to the Monte Carlo estimate.
double hitting_prob_zero_exact(double R, double r, double tol = 1e-12);

} // namespace thick
