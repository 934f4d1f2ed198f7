#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace b1lab {

/// Run configuration: rule orders, grids, seeds and every tolerance the
/// verification suite uses. Values load from key=value lines ('#' comments);
/// unknown keys are rejected.
struct Config {
    // truncation and quadrature orders
    std::size_t N = 64;
    std::size_t R = 128;
    std::size_t M = 256;
    std::vector<double> agrid_radii = {0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99};
    std::size_t agrid_angles = 16;
    std::uint64_t seed = 1905;

    // probe-specific orders (resolvent portraits and the constant search use
    // a lighter rule; their thresholds are coarse)
    std::size_t portrait_R = 32;
    std::size_t portrait_M = 64;
    std::size_t search_R = 16;
    std::size_t search_M = 32;
    std::size_t winding_M = 2048;

    // declared constants and thresholds
    double blowup_lb = 1e3;
    double coeff_growth = 1e6;
    double c_ig = 4.0;
    double c_cphi = 8.0;
    double cap_cphi = 1e3;

    // tolerances, as fixed by the acceptance criteria
    double tol_quad_norm = 1e-12;
    double tol_quad_oracle = 1e-10;
    double tol_lemma1 = 1e-8;
    double tol_chain = 1e-6;
    double tol_sharp = 1e-10;
    double tol_sandwich = 1e-6;
    double tol_intertwine = 1e-10;
    double tol_exact = 1e-13;
    double tol_triangular = 1e-14;
    double tol_neumann = 1e-8;
    double tol_search_oracle = 0.01;
    double essnorm_ratio = 0.95;
    double decay_factor = 0.1;
    double equivalence_band = 20.0;
    double hardy_cross = 1e-4;

    static Config load(const std::string& path);
    void set(const std::string& key, const std::string& value);

    /// Canonical key=value dump (also the config echo embedded in reports).
    std::string echo() const;
};

}  // namespace b1lab
