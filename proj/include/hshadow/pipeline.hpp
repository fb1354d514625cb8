#pragma once

#include "hshadow/dsl.hpp"
#include "hshadow/hp_graph.hpp"
#include "hshadow/polytope.hpp"
#include "hshadow/spectral.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hshadow {

/// Checked inputs shared by the limit computations: phi validated, f_A read
/// off a spanning tree, psi = phi^m where m is the order of f_A,ab.
struct PreparedMap {
    GraphMap phi;
    TrainTrackReport report;
    SpanningTree tree;
    Automorphism f_a;
    IntMatrix f_ab;
    unsigned order = 1;
    bool hypotheses_hold = true;
    GraphMap psi;
};

/// ValidationError if phi is not a train track, or if f_A,ab has infinite
/// order and the input does not override the hypotheses.
PreparedMap prepare(const ProblemSpec& spec);

/// Columns indexed by HP edges, rows by edges of G: x -> sum x_eta H_eff(eta).
LinearMapExact label_map(const HPGraph& hp);
/// Coordinate projection R^E -> R^A.
LinearMapExact reading_projection(const SpanningTree& tree, std::size_t edges);
LinearMapExact to_rational(const IntMatrix& m);

/// H_eff(Sigma_1(HP_phi)) in R^E, no rescaling.
RationalPolytope graph_shadow_polytope(const GraphMap& phi);

struct ShadowLimit {
    RationalPolytope polytope;        // in Q^n, conjugator applied
    RationalPolytope graph_polytope;  // H_eff(Sigma_1(HP_psi)) in Q^E
    Integer sigma_vertices = 0;  // simple cycles of the HP graph
    unsigned order = 1;
    Rational scale = 1;  // applied to graph_polytope: 1/order
    bool hypotheses_hold = true;
    IntMatrix f_ab;
};

ShadowLimit compute_shadow_limit(const ProblemSpec& spec);

struct DarknessLimit {
    AlgebraicVector point;  // in Q[rho]^n, conjugator applied
    PointD approx;
    AlgebraicVector graph_point;  // sum Q_eta H_eff(eta) in Q[rho]^E for psi
    unsigned order = 1;
    Rational scale = 1;
    bool hypotheses_hold = true;
    PFData pf;  // of psi
};

DarknessLimit compute_darkness_limit(const ProblemSpec& spec);

/// Length function on G selected by the input's choice.
LengthFunction select_length(const ProblemSpec& spec, LengthChoice choice);
/// Restriction to the edges outside the tree, i.e. a length on the rose of F_n.
LengthFunction restrict_to_free_letters(const LengthFunction& l, const SpanningTree& tree);

/// The automorphism whose orbits are measured: f_A, or h f_A h^-1.
Automorphism measured_automorphism(const ProblemSpec& spec);

inline constexpr std::array<double, 3> kBallRadii{0.05, 0.1, 0.2};

struct ConvergenceRow {
    unsigned k = 0;
    std::size_t word_length = 0;
    std::optional<double> hausdorff;   // to the predicted polytope
    std::optional<double> successive;  // to the rescaled shadow at k + 1
    std::optional<std::array<double, 3>> ball_mass;
    std::optional<double> mean_distance;  // |barycenter of the darkness measure - predicted point|
    double seconds = 0.0;
};

struct ConvergenceReport {
    std::string seed;
    std::vector<ConvergenceRow> rows;
    std::optional<RationalPolytope> predicted;
    std::optional<PointD> predicted_point;
    std::optional<double> fitted_c;
    unsigned burn_in = 3;
    bool monotone_after_burn_in = true;
    std::optional<bool> final_ball_ok;

    bool passed() const { return monotone_after_burn_in && final_ball_ok.value_or(true); }
};

/// One report per seed. Prediction comes from `predicted:` when present,
/// else from the limit computations; without either, only successive
/// distances are reported (Cauchy check).
std::vector<ConvergenceReport> verify_convergence(const ProblemSpec& spec, unsigned kmax, LengthChoice length,
                                                  std::size_t budget = kDefaultLengthBudget, unsigned burn_in = 3);

/// Barycenter of a darkness measure, in rescaled coordinates.
PointD darkness_mean(const SegmentMeasure& mu);

/// Least squares fit of d ~ C / k.
double fit_inverse_k(const std::vector<std::pair<unsigned, double>>& samples);

/// Exact squared Hausdorff distance from (1/k) shd to P in the forward
/// direction (attained at lattice vertices), and from a dyadic sample of P
/// to the rescaled segments backwards.
Rational squared_hausdorff_exact(const RationalPolytope& p, const ShadowAccumulator& acc, unsigned k, unsigned depth = 3);

struct EquivarianceRow {
    std::size_t length = 0;
    std::size_t samples = 0;
    double max_distance = 0.0;
};

struct PowerCheck {
    unsigned power = 1;
    std::optional<Rational> scalar;  // s with vertices(f^L) = s vertices(f)
    bool equals_power = false;
    bool equals_inverse_power = false;
};

struct EquivarianceReport {
    std::vector<EquivarianceRow> rows;
    double max_distance = 0.0;
    std::vector<PowerCheck> powers;
};

/// d_H(shd h(w), h_ab shd w) for random reduced w of length 2^0 .. 2^max_log,
/// and the scalar relating the graph polytopes of phi and phi^L.
EquivarianceReport verify_equivariance_and_power(const ProblemSpec& spec, const Automorphism& h,
                                                 const std::vector<unsigned>& powers, unsigned max_log_length = 10,
                                                 unsigned samples_per_length = 8, std::uint64_t seed = 1);

struct MassCheck {
    std::vector<double> empirical;  // m^A(phi^k p), k = 0..kmax
    double displayed_formula = 0.0;  // mu^A |v|_A / (mu |v|_1)
    double direct_formula = 0.0;     // sum_A v_e l(e) / sum_E v_e l(e)
    std::string matches;             // "direct", "displayed", "both" or "neither"
};

/// p must be legal. v is the eigenvector giving limiting edge counts.
MassCheck mass_ratio_check(const PreparedMap& prep, const GraphPath& p, const LengthFunction& l, unsigned kmax);

struct RatioCheck {
    std::vector<double> legal_over_reduced;    // l(phi^k q) / l((phi^k p)^red)
    std::vector<double> total_over_reduced;    // l(phi^k p) / l((phi^k p)^red)
    double minimum = 0.0;
    bool stable = false;  // last two ratios agree to 1e-3 relative
};

/// q is the longest legal subpath of p.
RatioCheck ratio_check(const GraphMap& phi, const GraphPath& p, const LengthFunction& l, unsigned kmax);

}  // namespace hshadow
