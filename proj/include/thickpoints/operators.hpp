#pragma once
// Exact continuum numerics: the closed-form disc Green's function, the
// stable 0-potential density, the operator norm Lambda_beta by Nystrom
// discretization and power iteration, Kac moments for atomic/cell measures,
// and Monte Carlo quadrature of the first intersection moment.

#include <cstdint>
#include <vector>

#include "thickpoints/geometry.hpp"

namespace thick {

// g_r(x,y) = (1/pi) log( r |1 - x conj(y)/r^2| / |x - y| ), points as complex
// numbers; symmetric, positive inside, vanishing at the boundary.
double green_disc(double r, Vec2 x, Vec2 y);

// c_beta = 2^{-beta} pi^{-1} Gamma((2-beta)/2) / Gamma(beta/2).
double c_beta(double beta);

// u^0(x) = c_beta |x|^{beta-2}.
double stable_potential(double beta, Vec2 x);

// Nystrom discretization of K_beta f(x) = int_{D(0,1)} u^0(x-y) f(y) dy over
// square cells of side h whose centers lie inside the unit disc. Off-diagonal
// entries u^0(x_i-x_j) h^2; the diagonal replaces the singular self term by
// the exact kernel average over the equal-area disc of a cell:
// c_beta (2/beta) h_eq^{beta-2} h^2 with h_eq = h/sqrt(pi).
class NystromOperator {
  public:
    NystromOperator(double beta, double h);

    std::size_t size() const { return cells_.size(); }
    double beta() const { return beta_; }
    double h() const { return h_; }
    const std::vector<Vec2>& cells() const { return cells_; }

    double entry(std::size_t i, std::size_t j) const;

    // y = A v; the parallel path computes rows independently (OpenMP) and is
    // bit-identical to the serial reference for any thread count.
    void apply(const std::vector<double>& v, std::vector<double>& y) const;
    void apply_serial(const std::vector<double>& v, std::vector<double>& y) const;

  private:
    double beta_;
    double h_;
    double diag_;
    int grid_n_;
    std::vector<Vec2> cells_;
    std::vector<std::int32_t> gx_, gy_;     // integer grid coords per cell
    std::vector<double> offset_kernel_;     // u^0 at offset (|di|,|dj|) * h^2
    double kernel_at(std::int32_t di, std::int32_t dj) const;
};

struct PowerResult {
    double lambda = 0.0;
    int iterations = 0;
    double residual = 0.0; // ||Av - lambda v||_2 at exit
};

struct PowerOptions {
    double tol = 1e-10;     // successive Rayleigh quotient difference
    int max_iterations = 100000;
};

PowerResult power_iteration(const NystromOperator& op, const PowerOptions& opts = {});

// Largest eigenvalue of the Nystrom matrix at grid h.
PowerResult lambda_beta(double beta, double h, const PowerOptions& opts = {});

// Finite measure given by weighted atoms; cell_h > 0 marks a cell measure
// (atoms are cell centers carrying weight h^2 each, or any weights) and
// fixes the diagonal regularization scale. k >= 2 requires cell_h > 0.
struct MeasureAtoms {
    std::vector<Vec2> points;
    std::vector<double> weights;
    double cell_h = 0.0;

    double total_mass() const;
    // Cell-uniform (Lebesgue) measure on D(0, r1) at cell side h.
    static MeasureAtoms uniform_disc_cells(double r1, double h);
};

// Kac moment: k! pi^k sum over ordered atom sequences of
// prod_j g_r(y_{j-1}, y_j) w_j, y_0 = x0, evaluated in matrix form.
double kac_moment_continuum(const MeasureAtoms& rho, double r, Vec2 x0, int k);

// Direct O(atoms) evaluation of the k = 1 case; dual route for tests.
double kac_moment_continuum_k1_direct(const MeasureAtoms& rho, double r, Vec2 x0);

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// pi |D(0,r1)| E_y[ g_r(x0,y) g_r(x0p,y) ], y uniform on D(0,r1); the k = 1
// moment integral of the intersection estimator (paper configuration
// |x0| = |x0p| = r1 <= r/2).
McEstimate intersection_first_moment_mc(double r, double r1, Vec2 x0, Vec2 x0p,
                                        std::uint64_t samples, std::uint64_t seed);

// (k!)^2 (log(r/r1) + c)^{2k}; plotting bound, c supplied by the caller.
double moment_bound_curve(int k, double r, double r1, double c);

} // namespace thick
