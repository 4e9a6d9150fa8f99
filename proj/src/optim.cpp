#include "qdc/optim.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, double initial_step,
                             double step_tol, int max_iter) {
    const size_t d = x0.size();
    std::vector<std::vector<double>> pts(d + 1, x0);
    for (size_t i = 0; i < d; ++i) pts[i + 1][i] += initial_step;

    std::vector<double> vals(d + 1);
    int evals = 0;
    for (size_t i = 0; i <= d; ++i) {
        vals[i] = f(pts[i]);
        ++evals;
    }

    auto diameter = [&]() {
        double m = 0.0;
        for (size_t i = 1; i <= d; ++i)
            for (size_t k = 0; k < d; ++k) m = std::max(m, std::abs(pts[i][k] - pts[0][k]));
        return m;
    };

    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<size_t> order(d + 1);
        for (size_t i = 0; i <= d; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return vals[a] < vals[b]; });
        {
            std::vector<std::vector<double>> np(d + 1);
            std::vector<double> nv(d + 1);
            for (size_t i = 0; i <= d; ++i) {
                np[i] = pts[order[i]];
                nv[i] = vals[order[i]];
            }
            pts.swap(np);
            vals.swap(nv);
        }
        if (diameter() < step_tol) {
            converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k) centroid[k] += pts[i][k] / static_cast<double>(d);

        auto blend = [&](double coeff) {
            std::vector<double> x(d);
            for (size_t k = 0; k < d; ++k)
                x[k] = centroid[k] + coeff * (pts[d][k] - centroid[k]);
            return x;
        };

        const std::vector<double> xr = blend(-1.0);
        const double fr = f(xr);
        ++evals;
        if (fr < vals[0]) {
            const std::vector<double> xe = blend(-2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
        } else if (fr < vals[d - 1]) {
            pts[d] = xr;
            vals[d] = fr;
        } else {
            const bool outside = fr < vals[d];
            const std::vector<double> xc = blend(outside ? -0.5 : 0.5);
            const double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, vals[d])) {
                pts[d] = xc;
                vals[d] = fc;
            } else {
                for (size_t i = 1; i <= d; ++i) {
                    for (size_t k = 0; k < d; ++k)
                        pts[i][k] = pts[0][k] + 0.5 * (pts[i][k] - pts[0][k]);
                    vals[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= d; ++i)
        if (vals[i] < vals[best]) best = i;
    return {pts[best], vals[best], converged, evals};
}

}  // namespace qdc
