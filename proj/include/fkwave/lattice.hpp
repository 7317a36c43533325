#pragma once

#include <vector>

#include "fkwave/field.hpp"
#include "fkwave/params.hpp"

namespace fkwave {

enum class ChainForce { sgn, psi_eps, linear };

struct ChainState {
    std::vector<double> positions;  // sites k in [-K, K]
    std::vector<double> velocities;
    double time = 0.0;
    int driven_band = 4; // outer sites following the exact translate
};

struct TrajectorySample {
    double t;
    double max_error; // max over interior sites of |u_k(t) - u(k - c t)|
    double energy;
};

struct SimResult {
    double max_error = 0.0;
    double energy_drift_rate = 0.0; // max |E(t) - E(0)| / t over samples
    std::vector<TrajectorySample> trajectory;
};

// Velocity-Verlet integration of u_k'' = (Delta_D u)_k - alpha u_k + alpha psi'(u_k)
// from traveling-wave initial data, outer bands driven by the exact translate.
SimResult simulate(const CompositeField& u, const Params& p, int K, double T, double dt,
                   ChainForce force, int sample_every = 10);

} // namespace fkwave
