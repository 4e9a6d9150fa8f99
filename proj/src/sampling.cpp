#include "qdc/sampling.hpp"

#include <cmath>

namespace qdc {

namespace {

// Modified Gram-Schmidt over explicit column vectors; rows may exceed cols.
std::vector<std::vector<cd>> orthonormal_columns(int rows, int cols, Rng& rng) {
    std::vector<std::vector<cd>> v(cols, std::vector<cd>(rows));
    for (auto& col : v)
        for (cd& x : col) x = cd(rng.gaussian(), rng.gaussian());
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < j; ++i) {
            cd g = 0.0;
            for (int r = 0; r < rows; ++r) g += std::conj(v[i][r]) * v[j][r];
            for (int r = 0; r < rows; ++r) v[j][r] -= g * v[i][r];
        }
        double norm = 0.0;
        for (const cd& x : v[j]) norm += std::norm(x);
        norm = std::sqrt(norm);
        for (cd& x : v[j]) x /= norm;
    }
    return v;
}

}  // namespace

Matrix sample_haar_unitary(int n, Rng& rng) {
    const auto cols = orthonormal_columns(n, n, rng);
    Matrix u(n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) u(r, c) = cols[c][r];
    return u;
}

Matrix sample_gaussian_hermitian(int n, Rng& rng) {
    Matrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = rng.gaussian();
        for (int j = i + 1; j < n; ++j) {
            const cd v(rng.gaussian(), rng.gaussian());
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

Matrix sample_density(int n, Rng& rng) {
    Matrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cd(rng.gaussian(), rng.gaussian());
    Matrix rho = g * g.adjoint();
    rho *= cd(1.0 / rho.trace().real(), 0.0);
    return rho;
}

BipartiteState sample_random_state(int dim_a, int dim_b, uint64_t seed) {
    Rng rng(seed);
    return make_bipartite_state(dim_a, dim_b, sample_density(dim_a * dim_b, rng));
}

BipartiteState sample_zero_discord_state(int dim_a, int dim_b, int k, uint64_t seed) {
    if (k < 1 || k > dim_b)
        throw DimensionMismatch("sample_zero_discord_state: need 1 <= k <= dim_b");
    Rng rng(seed);
    const auto basis = orthonormal_columns(dim_b, k, rng);
    const auto p = rng.simplex(k);
    Matrix rho(dim_a * dim_b);
    for (int outcome = 0; outcome < k; ++outcome) {
        const Matrix a = sample_density(dim_a, rng);
        Matrix proj(dim_b);
        for (int r = 0; r < dim_b; ++r)
            for (int c = 0; c < dim_b; ++c)
                proj(r, c) = basis[outcome][r] * std::conj(basis[outcome][c]);
        rho += p[outcome] * kron(a, proj);
    }
    return make_bipartite_state(dim_a, dim_b, std::move(rho));
}

QuantumChannel sample_random_channel(int n, int kraus_rank, uint64_t seed) {
    if (n < 2) throw DimensionMismatch("sample_random_channel: dimension must be >= 2");
    if (kraus_rank < 1 || kraus_rank > n * n)
        throw DimensionMismatch("sample_random_channel: rank must lie in [1, n^2]");
    Rng rng(seed);
    const auto isometry = orthonormal_columns(n * kraus_rank, n, rng);
    QuantumChannel ch;
    ch.dim = n;
    for (int k = 0; k < kraus_rank; ++k) {
        Matrix x(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) x(r, c) = isometry[c][k * n + r];
        ch.kraus.push_back(x);
    }
    return ch;
}

QuantumChannel sample_unital_channel(int n, int num_unitaries, uint64_t seed) {
    if (num_unitaries < 1)
        throw DimensionMismatch("sample_unital_channel: need at least one unitary");
    Rng rng(seed);
    const auto p = rng.simplex(num_unitaries);
    QuantumChannel ch;
    ch.dim = n;
    for (int k = 0; k < num_unitaries; ++k)
        ch.kraus.push_back(std::sqrt(p[k]) * sample_haar_unitary(n, rng));
    return ch;
}

QuantumChannel sample_isotropic_channel(int n, IsotropicBranch branch, uint64_t seed,
                                        IsotropicParams* params_out) {
    Rng rng(seed);
    const Matrix u = sample_haar_unitary(n, rng);
    const auto [lo, hi] = isotropic_weight_range(n, branch);
    // Keep clear of both the CP boundary and the decohering point w = 0.
    double w = 0.0;
    while (std::abs(w) < 0.02) w = rng.uniform(lo * 0.95, hi * 0.95);
    if (params_out) *params_out = {u, branch, w};
    return make_isotropic(u, w, branch);
}

QuantumChannel sample_decohering_channel(int n, uint64_t seed, DecoheringParams* params_out) {
    Rng rng(seed);
    const Matrix basis = sample_haar_unitary(n, rng);
    // Random POVM: n Gaussian Gram pieces G_i G_i^dag, normalized by the
    // inverse square root of their sum.
    std::vector<Matrix> raw;
    Matrix total(n);
    for (int i = 0; i < n; ++i) {
        Matrix g(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) g(r, c) = cd(rng.gaussian(), rng.gaussian());
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const auto eig = eig_hermitian(total, 1e-8);
    Matrix inv_root(n);
    for (int k = 0; k < n; ++k) {
        const double s = 1.0 / std::sqrt(eig.eigenvalues[k]);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                inv_root(r, c) += s * eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
    }
    std::vector<Matrix> povm;
    for (const Matrix& w : raw) povm.push_back(inv_root * w * inv_root);
    if (params_out) *params_out = {povm, basis};
    return make_decohering(povm, basis);
}

QuantumChannel sample_qubit_cpu_channel(uint64_t seed, QubitCpuParams* params_out) {
    Rng rng(seed);
    QubitCpuParams p;
    p.unitary = sample_haar_unitary(2, rng);
    p.lambda = rng.uniform(0.0, 1.0);
    // Draw the contraction parameters inside the unit operator-norm ball by
    // rejection from a box; stay slightly inside so fits are well posed.
    for (;;) {
        p.alpha = cd(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
        p.beta = cd(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
        p.gamma = cd(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9));
        if (std::abs(p.beta) + std::abs(p.gamma) < 0.05) continue;
        Matrix s(2);
        s(0, 0) = p.alpha;
        s(0, 1) = p.beta;
        s(1, 0) = p.gamma;
        s(1, 1) = -p.alpha;
        if (operator_norm(s) <= 0.98) break;
    }
    if (params_out) *params_out = p;
    return make_qubit_cpu(p);
}

}  // namespace qdc
