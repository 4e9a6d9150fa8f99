#include "qdc/rng.hpp"

#include <cmath>

namespace qdc {

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::vector<double> Rng::simplex(int k) {
    std::vector<double> p(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        p[i] = -std::log(uniform());
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace qdc
