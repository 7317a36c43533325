#pragma once

#include <functional>
#include <vector>

namespace fkwave {

// Nodes and weights of 24-point Gauss-Legendre on [-1, 1].
const std::vector<double>& gl24_nodes();
const std::vector<double>& gl24_weights();

// Integrate f over [a, b] with Gauss-Legendre panels split at the integers
// (where the closed-form profiles have seams).
double integrate_piecewise(const std::function<double(double)>& f, double a, double b);

} // namespace fkwave
