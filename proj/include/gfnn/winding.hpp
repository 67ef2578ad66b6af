#pragma once
// Torus-winding witnesses. For nonzero reals (a_1..a_d) of rational dimension
// k with decomposition a_p = sum_j Q_pj a_j, the orbit t -> (a_p t) mod 1
// lies exactly on the k-torus {Q u mod 1}; a witness is a time |t| > R whose
// orbit point comes within tol (sup metric on the torus) of the target point
// Q (a_1 s_1, .., a_k s_k). The exact cell coordinates r (with the relation
// a_p t = (Q (a_1 r_1, .., a_k r_k))_p mod 1 holding exactly) are recovered
// by reducing modulo the integer lattice {u in Z^k : Q u in Z^d}.
//
// Also: admissible-abscissa selection away from a pole shift set.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gfnn/symbolic.hpp"
#include "gfnn/tanh_series.hpp"

namespace gfnn {

struct WindingWitness {
  double t = 0.0;
  std::vector<double> r;       // exact cell recovery, r -> target as residual -> 0
  double residual = 0.0;       // max_p dist_Z(a_p t - (Q (a .* target))_p)
  std::vector<double> target;  // kept so the residual can be recomputed
};

struct WindingBudget {
  std::uint64_t max_evals = 20'000'000;
};

// Distance of the orbit at time t from the target point, sup metric.
double winding_residual(const std::vector<double>& values, const QDecomposition& decomp,
                        const std::vector<double>& target, double t);

// k = 1 uses the exact lattice period; k = 2 tries continued-fraction
// convergent denominators of the basis ratio first; everything else (and any
// miss) falls back to a grid scan over expanding ranges. Ties prefer the
// smallest |t|. NotFound (nullopt) when the budget is exhausted.
std::optional<WindingWitness> winding_search(const std::vector<double>& values,
                                             const QDecomposition& decomp,
                                             const std::vector<double>& target,
                                             double min_abs_t, double tol,
                                             const WindingBudget& budget = {});

// First point of [lo, hi] (by gap midpoints) at distance >= margin from every
// point of the union of (shifts - theta) / omega over the given first-layer
// pairs. Throws when no admissible point exists at this margin.
double choose_A(const std::vector<std::pair<double, double>>& first_layer,
                const TanhSeries& series, double lo, double hi, double margin);

}  // namespace gfnn
