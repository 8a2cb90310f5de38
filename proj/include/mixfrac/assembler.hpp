#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mixfrac/greens.hpp"
#include "mixfrac/hyperbolic.hpp"
#include "mixfrac/problem.hpp"
#include "mixfrac/representation.hpp"
#include "mixfrac/tau1solver.hpp"
#include "mixfrac/volterra.hpp"

namespace mixfrac {

struct DiscretizationConfig {
    int n = 128;           // cells of the trace / Volterra grid on [0,1]
    int out_n = 32;        // output grid cells per unit length
    int check_n = 32;      // rows/columns of the Omega0 residual grid
    int n_images = 5;
    double series_tol = 1e-14;
    double quad_tol = 1e-12;
    bool gamma_factor_enabled = false;

    void validate() const;
};

struct Sample {
    double x, y, u;
    hyperbolic::Domain domain;
};

/// Residual norms (max-abs) of the problem conditions plus continuity checks.
struct Diagnostics {
    double pde_parabolic = 0.0;   // L1 Caputo vs central u_xx on Omega0 rows y >= 1/4
    double pde_hyperbolic = 0.0;  // 5-point wave residual in the triangles
    double nonlocal = 0.0;        // a1 u(-t,t) + a2 u(t,-t) - a3
    double char_cb = 0.0;         // u - phi1 on CB
    double char_be = 0.0;         // u - phi2 on BE
    double transmission = 0.0;    // lim D^lambda u(x,0+) - u_y(x,0-)
    double jump_ab = 0.0, jump_aa0 = 0.0, jump_bb0 = 0.0;      // value continuity
    double flux_jump_aa0 = 0.0, flux_jump_bb0 = 0.0;           // u_x continuity
    double kernel_tail = 0.0;     // worst image-truncation bound seen

    /// The five condition residuals (1.1)-(1.5), with the PDE as the larger of its two parts.
    std::vector<std::pair<std::string, double>> conditions() const;
    /// Every entry, in a fixed order.
    std::vector<std::pair<std::string, double>> all() const;
    double worst() const;
};

/// Everything the pipeline produced; u can be evaluated anywhere in the closed domain.
class Reconstruction {
public:
    Reconstruction(ProblemSpec spec, const DiscretizationConfig& disc);

    double u(double x, double y) const;
    /// Which part of the domain owns (x, y); type-change lines go to Omega0.
    hyperbolic::Domain classify(double x, double y) const;

    const ProblemSpec& spec() const noexcept { return spec_; }
    const DiscretizationConfig& disc() const noexcept { return disc_; }
    const greens::KernelCache& kernels() const noexcept { return *cache_; }
    const tau1::Tau1Solution& tau1() const noexcept { return tau1_; }
    const volterra::VolterraSystem& system() const noexcept { return system_; }
    const hyperbolic::TraceTable& traces() const noexcept { return traces_; }
    const Omega0Representation& omega0() const noexcept { return *omega0_; }

    enum class Fault { Nu1, Nu3, Mu2 };
    /// Copy with one trace shifted by delta (mu2 also moves tau2, nu2 consistently).
    Reconstruction with_fault(Fault which, double delta) const;

private:
    void rebuild_omega0();

    ProblemSpec spec_;
    DiscretizationConfig disc_;
    std::shared_ptr<const greens::KernelCache> cache_;
    tau1::Tau1Solution tau1_;
    volterra::VolterraSystem system_;
    hyperbolic::TraceTable traces_;
    std::function<double(double)> tau1_fine_;  // cubic Hermite on a fine grid
    std::shared_ptr<const Omega0Representation> omega0_;
};

struct SolutionField {
    std::vector<Sample> samples;
    Diagnostics diagnostics;
    std::shared_ptr<const Reconstruction> solution;
};

/// Full pipeline: tau1 -> nu1 -> f1, f2 -> march -> traces -> samples on the
/// output grid (spacing 1/out_n) in all four parts -> diagnostics.
SolutionField solve_problem(const ProblemSpec& spec, const DiscretizationConfig& disc);

Diagnostics verify_conditions(const Reconstruction& r);

/// Output samples: Omega0 grid points plus the lattice points of the triangles.
std::vector<Sample> sample_field(const Reconstruction& r, int out_n);

}  // namespace mixfrac
