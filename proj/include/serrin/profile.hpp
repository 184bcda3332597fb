#pragma once

#include "serrin/fitting.hpp"
#include "serrin/reduced.hpp"

#include <vector>

namespace serrin {

/// Torsional energy of an unperturbed geodesic ball B_eps(p).
struct GeodesicBall {
    double eps = 0.0;
    double J = 0.0;         // 1 / int_{B_eps} u dvol_g
    double J_scaled = 0.0;  // J eps^{N+2}, the energy in the rescaled metric
    double volume = 0.0;    // |B_eps(p)|_g
};

GeodesicBall J_geodesic_ball(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                             Fidelity fidelity = Fidelity::ExactChart);

/// Volume of B_eps(p); only the metric is assembled.
double geodesic_ball_volume(const ModelManifold& m, const Vec& p, double eps, const BallSolver& solver,
                            Fidelity fidelity = Fidelity::ExactChart);

/// Radius eps with |B_eps(p)| = volume to relative accuracy 1e-10, by a
/// bracketed root solve around the Euclidean radius.  Throws EnvelopeError
/// when no bracket is found below eps = 0.5.
double match_volume(const ModelManifold& m, const Vec& p, double volume, const BallSolver& solver,
                    Fidelity fidelity = Fidelity::ExactChart);

/// J_1 (v / |B_1|)^{-(N+2)/N}, the torsional energy of the Euclidean ball of
/// volume v.
double euclidean_profile(int dim, double volume);

struct ProfilePoint {
    double volume = 0.0;
    double J_ball = 0.0;       // J(B_eps(p)) at matched volume
    double T_euclidean = 0.0;
    double ratio = 0.0;        // J_ball / T_euclidean
    double eps_used = 0.0;
    double volume_error = 0.0;  // relative
};

/// Geodesic-ball upper bound for the isochoric profile at p, for each
/// volume of the grid.
std::vector<ProfilePoint> profile_expansion(const ModelManifold& m, const Vec& p, const std::vector<double>& volumes,
                                            const BallSolver& solver, int workers = 1);

/// ratio - 1 fitted by v^{2/N}, v^{3/N}, v^{4/N}.
PowerFit fit_profile(int dim, const std::vector<ProfilePoint>& table);

}  // namespace serrin
