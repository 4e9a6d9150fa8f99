#include "qdc/discord.hpp"

#include <algorithm>
#include <cmath>

#include "qdc/optim.hpp"
#include "qdc/rng.hpp"

namespace qdc {

namespace {

constexpr double kProbabilityFloor = 1e-14;
constexpr double kEntropyClamp = -1e-12;
constexpr double kSimplexStepTol = 1e-7;

double entropy_from_eigenvalues(const std::vector<double>& w, double scale) {
    double s = 0.0;
    for (double p : w) {
        if (p < kEntropyClamp * std::max(1.0, scale))
            throw NotDensityMatrix("entropy: eigenvalue " + std::to_string(p) +
                                   " is negative beyond tolerance");
        if (p <= 0.0) continue;
        s -= p * std::log2(p);
    }
    return s;
}

// Conditional state of party A given outcome vector u on party B, times the
// outcome probability: M[a][b] = sum_{s,t} rho[(a,s),(b,t)] conj(u_s) u_t.
Matrix unnormalized_conditional(const BipartiteState& st, const std::vector<cd>& u) {
    const int m = st.dim_a, n = st.dim_b;
    Matrix out(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            cd sum = 0.0;
            for (int s = 0; s < n; ++s) {
                const cd us = std::conj(u[s]);
                for (int t = 0; t < n; ++t) sum += us * st.rho(a * n + s, b * n + t) * u[t];
            }
            out(a, b) = sum;
        }
    return out;
}

double conditional_entropy_of_vectors(const BipartiteState& st,
                                      const std::vector<std::vector<cd>>& vectors) {
    double total = 0.0;
    for (const auto& u : vectors) {
        const Matrix m = unnormalized_conditional(st, u);
        const double p = m.trace().real();
        if (p < kProbabilityFloor) continue;
        const auto eig = eig_hermitian(m, 1e-6);
        std::vector<double> w(eig.eigenvalues);
        for (double& x : w) x /= p;
        total += p * entropy_from_eigenvalues(w, 1.0);
    }
    return total;
}

std::vector<std::vector<cd>> qubit_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    const cd e = std::polar(1.0, phi);
    return {{cd(c, 0.0), e * s}, {-std::conj(e) * s, cd(c, 0.0)}};
}

// U = diag(1, e^{i p6}, e^{i p7}) G01(p0,p1) G02(p2,p3) G12(p4,p5); the
// columns sweep every orthonormal 3-basis as the parameters vary.
Matrix qutrit_unitary(const std::vector<double>& p) {
    auto givens = [](int a, int b, double theta, double phi) {
        Matrix g = Matrix::identity(3);
        const double c = std::cos(theta), s = std::sin(theta);
        const cd e = std::polar(1.0, phi);
        g(a, a) = c;
        g(b, b) = c;
        g(a, b) = -s * std::conj(e);
        g(b, a) = s * e;
        return g;
    };
    Matrix d = Matrix::identity(3);
    d(1, 1) = std::polar(1.0, p[6]);
    d(2, 2) = std::polar(1.0, p[7]);
    return d * givens(0, 1, p[0], p[1]) * givens(0, 2, p[2], p[3]) * givens(1, 2, p[4], p[5]);
}

std::vector<std::vector<cd>> columns_of(const Matrix& u) {
    const int n = u.dim();
    std::vector<std::vector<cd>> cols(n, std::vector<cd>(n));
    for (int k = 0; k < n; ++k)
        for (int r = 0; r < n; ++r) cols[k][r] = u(r, k);
    return cols;
}

}  // namespace

BipartiteState make_bipartite_state(int dim_a, int dim_b, Matrix rho, double tol) {
    if (dim_a < 1 || dim_b < 1)
        throw DimensionMismatch("bipartite state: party dimensions must be positive");
    if (rho.dim() != dim_a * dim_b)
        throw DimensionMismatch("bipartite state: matrix dimension is not dim_a * dim_b");
    if (!rho.all_finite()) throw NotDensityMatrix("bipartite state: non-finite entries");
    if (!is_hermitian(rho, tol)) throw NotDensityMatrix("bipartite state: not hermitian");
    if (std::abs(rho.trace() - cd(1.0, 0.0)) > 1e-10)
        throw NotDensityMatrix("bipartite state: trace is not 1");
    if (min_eigenvalue(rho, std::max(tol, 1e-8)) < -tol * norm_scale(rho))
        throw NotDensityMatrix("bipartite state: not positive semidefinite");
    return {dim_a, dim_b, std::move(rho)};
}

BipartiteState swap_parties(const BipartiteState& s) {
    const int m = s.dim_a, n = s.dim_b;
    Matrix out(m * n);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < m; ++c)
                for (int d = 0; d < n; ++d)
                    out(b * m + a, d * m + c) = s.rho(a * n + b, c * n + d);
    return {n, m, std::move(out)};
}

Matrix reduced_a(const BipartiteState& s) { return partial_trace(s.rho, s.dim_a, s.dim_b, true); }
Matrix reduced_b(const BipartiteState& s) { return partial_trace(s.rho, s.dim_a, s.dim_b, false); }

std::vector<std::vector<Matrix>> blocks(const BipartiteState& s) {
    const int m = s.dim_a, n = s.dim_b;
    std::vector<std::vector<Matrix>> out(m, std::vector<Matrix>(m, Matrix(n)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) out[i][j](r, c) = s.rho(i * n + r, j * n + c);
    return out;
}

double zero_discord_residual(const BipartiteState& s) {
    const auto b = blocks(s);
    std::vector<const Matrix*> flat;
    for (const auto& row : b)
        for (const Matrix& m : row) flat.push_back(&m);
    double worst = 0.0;
    for (size_t p = 0; p < flat.size(); ++p)
        for (size_t q = p + 1; q < flat.size(); ++q)
            worst = std::max(worst, commutator(*flat[p], *flat[q]).frobenius_norm());
    return worst;
}

bool is_zero_discord_b(const BipartiteState& s, double tol) {
    return zero_discord_residual(s) <= tol;
}

double von_neumann_entropy(const Matrix& rho, double tol) {
    if (!is_hermitian(rho, std::max(tol, 1e-8)))
        throw NotDensityMatrix("entropy: input not hermitian");
    if (std::abs(rho.trace() - cd(1.0, 0.0)) > 1e-8)
        throw NotDensityMatrix("entropy: trace is not 1");
    const auto eig = eig_hermitian(rho, std::max(tol, 1e-8));
    return entropy_from_eigenvalues(eig.eigenvalues, 1.0);
}

double mutual_information(const BipartiteState& s, double tol) {
    return von_neumann_entropy(reduced_a(s), tol) + von_neumann_entropy(reduced_b(s), tol) -
           von_neumann_entropy(s.rho, tol);
}

MeasurementBasis basis_from_unitary_columns(const Matrix& u) {
    require_unitary(u);
    return {columns_of(u)};
}

void require_orthonormal(const MeasurementBasis& basis, int dim, double tol) {
    if (static_cast<int>(basis.vectors.size()) != dim)
        throw DimensionMismatch("measurement basis: need exactly dim vectors");
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(basis.vectors[i].size()) != dim)
            throw DimensionMismatch("measurement basis: vector length mismatch");
        for (int j = 0; j < dim; ++j) {
            cd g = 0.0;
            for (int r = 0; r < dim; ++r)
                g += std::conj(basis.vectors[i][r]) * basis.vectors[j][r];
            const cd want = (i == j) ? cd(1.0, 0.0) : cd(0.0, 0.0);
            if (std::abs(g - want) > tol)
                throw NotUnitary("measurement basis: vectors are not orthonormal");
        }
    }
}

std::vector<MeasurementOutcome> post_measurement(const BipartiteState& s,
                                                 const MeasurementBasis& basis) {
    require_orthonormal(basis, s.dim_b);
    std::vector<MeasurementOutcome> out;
    for (const auto& u : basis.vectors) {
        Matrix m = unnormalized_conditional(s, u);
        const double p = m.trace().real();
        if (p < kProbabilityFloor) continue;
        m *= cd(1.0 / p, 0.0);
        out.push_back({p, std::move(m)});
    }
    return out;
}

double measured_conditional_entropy(const BipartiteState& s, const MeasurementBasis& basis) {
    require_orthonormal(basis, s.dim_b);
    return conditional_entropy_of_vectors(s, basis.vectors);
}

DiscordResult discord_b(const BipartiteState& s, double tol) {
    const int n = s.dim_b;
    if (n != 2 && n != 3)
        throw UnsupportedDimension("discord_b: measured party must have dimension 2 or 3");

    const double base = von_neumann_entropy(reduced_b(s), tol) -
                        von_neumann_entropy(s.rho, tol);

    double best = 0.0;
    std::vector<std::vector<cd>> best_vectors;
    int evals = 0;
    bool converged = false;

    auto consider = [&](const std::vector<std::vector<cd>>& vecs, double value) {
        if (best_vectors.empty() || value < best) {
            best = value;
            best_vectors = vecs;
        }
    };

    // Closed-form candidates first: the eigenbasis of rho_B, the common
    // eigenbasis of the state blocks (exact for zero-discord states), and
    // the computational basis.
    {
        const auto eig = eig_hermitian(reduced_b(s), std::max(tol, 1e-8));
        const auto vecs = columns_of(eig.eigenvectors);
        consider(vecs, conditional_entropy_of_vectors(s, vecs));
        ++evals;
    }
    {
        const auto blk = blocks(s);
        std::vector<Matrix> parts;
        for (int i = 0; i < s.dim_a; ++i)
            for (int j = i; j < s.dim_a; ++j) {
                const Matrix h = 0.5 * (blk[i][j] + blk[i][j].adjoint());
                const Matrix k = cd(0.0, -0.5) * (blk[i][j] - blk[i][j].adjoint());
                parts.push_back(h);
                if (i != j) parts.push_back(k);
            }
        const Matrix v = simultaneous_eigenbasis(parts, std::max(tol, 1e-8));
        const auto vecs = columns_of(v);
        consider(vecs, conditional_entropy_of_vectors(s, vecs));
        ++evals;
    }
    {
        const auto vecs = columns_of(Matrix::identity(n));
        consider(vecs, conditional_entropy_of_vectors(s, vecs));
        ++evals;
    }

    if (n == 2) {
        auto objective = [&](const std::vector<double>& p) {
            return conditional_entropy_of_vectors(s, qubit_basis(p[0], p[1]));
        };
        double grid_best = 0.0;
        std::vector<double> grid_arg{0.0, 0.0};
        bool first = true;
        for (int it = 0; it < 64; ++it)
            for (int ip = 0; ip < 128; ++ip) {
                const double theta = M_PI * (it + 0.5) / 64.0;
                const double phi = 2.0 * M_PI * ip / 128.0;
                const double v = objective({theta, phi});
                ++evals;
                if (first || v < grid_best) {
                    grid_best = v;
                    grid_arg = {theta, phi};
                    first = false;
                }
            }
        const auto nm = nelder_mead(objective, grid_arg, 0.05, kSimplexStepTol, 2000);
        evals += nm.evaluations;
        converged = nm.converged;
        consider(qubit_basis(nm.x[0], nm.x[1]), nm.value);
        consider(qubit_basis(grid_arg[0], grid_arg[1]), grid_best);
    } else {
        auto objective = [&](const std::vector<double>& p) {
            return conditional_entropy_of_vectors(s, columns_of(qutrit_unitary(p)));
        };
        Rng rng(0xD15C0DEull ^ 0x9E3779B97F4A7C15ull);
        converged = true;
        for (int start = 0; start < 32; ++start) {
            std::vector<double> x0(8);
            for (double& x : x0) x = rng.uniform(0.0, 2.0 * M_PI);
            const auto nm = nelder_mead(objective, x0, 0.4, kSimplexStepTol, 4000);
            evals += nm.evaluations;
            converged = converged && nm.converged;
            consider(columns_of(qutrit_unitary(nm.x)), nm.value);
        }
    }

    DiscordResult out;
    out.value = std::max(0.0, base + best);
    out.basis.vectors = best_vectors;
    out.converged = converged;
    out.evaluations = evals;
    return out;
}

}  // namespace qdc
