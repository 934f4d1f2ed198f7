#pragma once

#include <map>
#include <string>

#include "b1lab/operators.hpp"

namespace b1lab {

/// Deterministic family of test functions, all analytic past the closed disk:
/// monomials, Moebius atoms over an a-grid, shifted atoms sigma_a - a, random
/// atomic combinations with l^1 weights, and random polynomials with unit-box
/// coefficients. Reproducible for a fixed seed.
struct Corpus {
    struct Spec {
        std::size_t monomial_max = 16;       // z^0 .. z^monomial_max
        std::vector<double> atom_radii = {0.3, 0.6, 0.8};
        std::size_t atom_angles = 4;
        bool shifted_atoms = true;
        std::size_t atom_combos = 8;         // random atomic combinations
        std::size_t combo_atoms = 4;         // atoms per combination
        std::size_t random_polys = 8;
        std::size_t poly_degree = 32;
        double atom_radius_cap = 0.85;
    };

    std::vector<FuncExpr> funcs;
    std::uint64_t seed = 0;

    static Corpus standard(std::uint64_t seed) { return standard(seed, Spec{}); }
    static Corpus standard(std::uint64_t seed, const Spec& spec);
};

/// Two-sided bound report for an operator norm: a certified lower bound from
/// corpus maximization and, where one of the boundedness theorems supplies it,
/// an upper constant.
struct BoundReport {
    double lower = 0.0;
    std::optional<double> upper;
    std::string witness;  // rendered argmax function
    double err_est = 0.0;
    std::map<std::string, double> constants;
};

/// lower = max over the corpus of ||Op f||_B1 / ||f||_B1 (series path at
/// degree N). Upper constants: Tg: (1+pi)||g - g(0)||_B1; Mg: (2pi+2)||g||_B1;
/// Ig: c_ig (||g||_inf + ||g||_{Z1}) with the declared constant c_ig.
BoundReport opnorm_lower(const OperatorSpec& op, const Corpus& corpus, std::size_t N,
                         const DiskRule& rule, const AGrid& agrid, double c_ig = 4.0);

/// Rows (r, ||g - g_r||_B1) of the dilation approximation; the tail decays to
/// zero exactly when g can be approximated by the compact dilates.
struct DecayRow {
    double r;
    double value;
    double err_est;
};
std::vector<DecayRow> tg_essnorm_decay(const FuncExpr& g, const std::vector<double>& radii,
                                       const DiskRule& rule);

/// ||sigma_a - a||_B1 evaluated by its exact series expansion (robust for
/// centers arbitrarily close to the boundary, where quadrature cannot resolve
/// the concentrating second derivative).
double shifted_atom_b1_norm(double abs_a);

/// max_n |g(a_n)| with witnesses f_n = sigma_{a_n} - a_n; the reported witness
/// norms ||f_n||_B1 quantify the gap to a normalized lower bound.
struct IgEssReport {
    double value = 0.0;
    cplx argmax_a{0.0, 0.0};
    struct Row {
        cplx a;
        double g_abs;
        double witness_norm;
    };
    std::vector<Row> rows;
};
IgEssReport ig_essnorm_lower(const FuncExpr& g, const std::vector<cplx>& a_seq,
                             const DiskRule& rule);

/// Winding number of theta -> g(e^{i theta}) - lambda around 0 via summed
/// principal-branch phase increments; equals the number of solutions of
/// g(z) = lambda in the disk. Rejects lambda closer than 1e-9 to the sampled
/// curve or sampled too coarsely to trust the increments.
int winding_number(const FuncExpr& g, cplx lambda, std::size_t M);

/// Coefficients of 1/(g - lambda) by circle projection, with a flag when the
/// coefficients grow past the given threshold (a pole inside the disk).
struct ReciprocalSeries {
    TaylorSeries series;
    double max_coeff = 0.0;
    bool grew = false;
};
ReciprocalSeries reciprocal_series(const FuncExpr& g, cplx lambda, std::size_t N,
                                   double growth_threshold = 1e6);

enum class CellFlag { Finite, Blowup, Indeterminate };
const char* cell_flag_name(CellFlag f);

struct PortraitCell {
    cplx lambda;
    int winding = 0;
    double resolvent_lb = 0.0;  // +inf on blowup cells
    CellFlag flag = CellFlag::Indeterminate;
};

struct Portrait {
    double x0, x1, y0, y1, step;
    std::vector<PortraitCell> cells;
};

struct PortraitOptions {
    std::size_t N = 64;
    std::size_t winding_M = 2048;
    double blowup_lb = 1e3;
    double coeff_growth = 1e6;
    double annulus_lo = 0.0;  // cells with annulus_lo < |lambda| < annulus_hi skipped
    double annulus_hi = 0.0;
};

/// Resolvent-norm map over a lambda rectangle for M_g or I_g. Cells with
/// winding >= 1 are flagged BLOWUP outright (the reciprocal symbol has a pole
/// in the disk); winding-0 cells get resolvent lower bounds by corpus
/// maximization, with the growth and blowup thresholds deciding the flag.
/// For I_g the origin always lies in the spectrum (constants are annihilated)
/// and is flagged BLOWUP.
Portrait resolvent_portrait(OpKind kind, const FuncExpr& g, double x0, double x1, double y0,
                            double y1, double step, const Corpus& corpus, const DiskRule& rule,
                            const PortraitOptions& opt);

/// Derivative-free maximization of ||f g||_B1 / (||f||_B1 ||g||_B1).
enum class SearchFamily { Atoms3, Poly2 };

struct SearchReport {
    double best_ratio = 0.0;
    std::string witness_f, witness_g;
    double ceiling = 0.0;    // 2 pi + 2
    double err_est = 0.0;
    std::size_t evaluations = 0;
};

/// Coordinate pattern search with shrinking step (0.2 down to 1e-4),
/// restarted from `restarts` seeded corpus points; atom centers are box
/// constrained to |a| <= 0.95. The returned best is re-measured on
/// `final_rule`.
SearchReport product_constant_search(std::uint64_t seed, std::size_t restarts,
                                     SearchFamily family, const DiskRule& search_rule,
                                     const DiskRule& final_rule);

/// Dense two-stage parameter sweep over degree-<=2 polynomial pairs, the
/// independent reference point for the pattern search.
SearchReport product_constant_poly2_oracle(const DiskRule& search_rule,
                                           const DiskRule& final_rule);

/// Boundedness probe for C_phi: lower = max over the a-grid of
/// ||sigma_a o phi||_B1 through the closed-form path (no series composition).
/// When phi(0) = 0 the upper constant assembles
/// c_cphi (||phi'||_inf^2 + ||phi||_Z1 ||phi'||_inf + ||phi'||_inf + 1).
BoundReport cphi_bounded_probe(const FuncExpr& phi, const AGrid& agrid, const DiskRule& rule,
                               double c_cphi = 8.0);

/// ||T_g^K f / lambda^{K+1}||_B1, the K-th Neumann term of the resolvent
/// series at lambda; vanishing tails witness lambda outside the spectrum.
double neumann_tail(const FuncExpr& g, cplx lambda, const TaylorSeries& f, std::size_t K,
                    std::size_t N, const DiskRule& rule);

}  // namespace b1lab
