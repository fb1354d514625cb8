#pragma once

#include "hshadow/graphs.hpp"
#include "hshadow/shadows.hpp"
#include "hshadow/spectral.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hshadow {

/// One crossing: segment `segment` (0-based) of phi(source) runs over
/// edge `target` in direction `dir`.
struct HPEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    int dir = 1;
    std::size_t segment = 0;
    /// 2 H = 2 y - d-hat, y the half-point of the segment in the shadow of phi(source).
    LatticePoint label2;
    /// 2 (H + R_w) where w = iota(source) and R_w = phi_ab t_w - t_w for a
    /// path t_w from the basepoint. Equal to label2 on roses.
    LatticePoint effective_label2;
    /// y - e-hat / 2 (integral): offset used by the exact iteration.
    LatticePoint step_offset;
};

struct HPGraph {
    std::size_t dim = 0;  // number of edges of G
    std::vector<HPEdge> edges;
    IntMatrix phi_ab;     // column j = hat(phi(e_j))
    std::vector<std::string> vertex_names;  // edge names of G

    /// Underlying digraph: one vertex per edge of G.
    DirectedGraph digraph() const;
    IntMatrix adjacency() const;
    std::vector<std::size_t> out_edges(std::size_t v) const;
};

/// Edge images must be immersed.
HPGraph build_hp_graph(const GraphMap& phi);

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

/// HP(phi^k(p)) for the untightened iterate, by dynamic programming over
/// (HP vertex, accumulated offset). Throws BudgetExceeded when the number of
/// stored states passes `budget`.
HalfPointSet hp_iterate(const HPGraph& hp, const GraphPath& p, unsigned k, std::size_t budget = kDefaultStateBudget);
HalfPointSet hp_iterate_serial(const HPGraph& hp, const GraphPath& p, unsigned k,
                               std::size_t budget = kDefaultStateBudget);

/// Direct computation: iterate phi on p without tightening, take half-points.
HalfPointSet direct_half_points(const GraphMap& phi, const GraphPath& p, unsigned k,
                                std::size_t budget = kDefaultLengthBudget);

struct MarkovWeights {
    AlgebraicVector mu;          // per HP edge: l(target) / (rho l(source))
    AlgebraicMatrix transition;  // aggregated over parallel HP edges
    AlgebraicVector pi;          // linear solve of pi P = pi
    AlgebraicVector pi_closed;   // u_d l(d) / Z
};

/// Throws ValidationError if outgoing weights do not sum to 1 (l is not a
/// train length function for rho) or the two stationary vectors differ.
MarkovWeights markov_weights(const HPGraph& hp, const PFData& pf, const LengthFunction& l);

struct LimitDarknessPoint {
    AlgebraicVector q;      // per HP edge: pi(source) mu
    AlgebraicVector point;  // sum q H_eff
    PointD approx;
};

LimitDarknessPoint limit_darkness_point(const HPGraph& hp, const MarkovWeights& w);

/// DOT export with H labels and weights.
std::string to_dot(const HPGraph& hp, const MarkovWeights* w = nullptr);

}  // namespace hshadow
