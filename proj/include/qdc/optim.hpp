#pragma once

// Minimal Nelder-Mead simplex minimizer. Deterministic: fixed coefficients,
// fixed initial simplex construction, no randomness. Good enough for the
// low-dimensional smooth objectives used by the discord search.

#include <functional>
#include <vector>

namespace qdc {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    bool converged = false;
    int evaluations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double initial_step,
                             double step_tol, int max_iter);

}  // namespace qdc
