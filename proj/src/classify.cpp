#include "qdc/classify.hpp"

#include <algorithm>
#include <cmath>

#include "qdc/rng.hpp"
#include "qdc/sampling.hpp"

namespace qdc {

namespace {

// Hermitian operator basis: diagonal units, then real and imaginary
// off-diagonal combinations. Spans all hermitians; not normalized.
std::vector<Matrix> hermitian_basis(int n) {
    std::vector<Matrix> out;
    for (int k = 0; k < n; ++k) out.push_back(matrix_unit(n, k, k));
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            out.push_back(matrix_unit(n, k, l) + matrix_unit(n, l, k));
            out.push_back(cd(0.0, 1.0) * (matrix_unit(n, k, l) - matrix_unit(n, l, k)));
        }
    return out;
}

// Orthonormal basis of the traceless hermitian subspace (generalized
// Gell-Mann set), Hilbert-Schmidt normalized.
std::vector<Matrix> traceless_orthonormal_basis(int n) {
    std::vector<Matrix> out;
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            out.push_back(inv_root2 * (matrix_unit(n, k, l) + matrix_unit(n, l, k)));
            out.push_back(cd(0.0, inv_root2) * (matrix_unit(n, k, l) - matrix_unit(n, l, k)));
        }
    for (int d = 1; d < n; ++d) {
        Matrix g(n);
        const double s = 1.0 / std::sqrt(static_cast<double>(d) * (d + 1));
        for (int j = 0; j < d; ++j) g(j, j) = s;
        g(d, d) = -s * static_cast<double>(d);
        out.push_back(g);
    }
    return out;
}

Matrix isotropic_action(const Matrix& u, double w, IsotropicBranch branch, const Matrix& a) {
    const int n = u.dim();
    const Matrix g = (branch == IsotropicBranch::Unitary) ? a : a.transpose();
    Matrix out = w * (u * g * u.adjoint());
    const cd tr = a.trace();
    if (tr != cd(0.0, 0.0))
        out += ((1.0 - w) * tr / static_cast<double>(n)) * Matrix::identity(n);
    return out;
}

void set_reason(std::string* why, const std::string& reason) {
    if (why) *why = reason;
}

// Full superoperator as an n^2 x n^2 complex matrix, column (i, j) holding
// the image of E_ij flattened row-major.
Matrix superoperator(const QuantumChannel& ch) {
    const int n = ch.dim;
    Matrix s(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Matrix img = apply(ch, matrix_unit(n, i, j));
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) s(r * n + c, i * n + j) = img(r, c);
        }
    return s;
}

struct SingularExtremes {
    double smin = 0.0;
    double smax = 0.0;
    std::vector<cd> weak_right;  // right-singular vector of smin
};

// Via the hermitian dilation [[0, S], [S^dag, 0]], whose spectrum is
// {+/- sigma_k}. Unlike the Gram route this keeps absolute accuracy
// ~1e-15 * ||S|| for the small singular values, so an exactly singular
// superoperator reads as ~1e-15 instead of the sqrt of roundoff.
SingularExtremes singular_extremes(const Matrix& s) {
    const int m = s.dim();
    Matrix d(2 * m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
            d(r, m + c) = s(r, c);
            d(m + c, r) = std::conj(s(r, c));
        }
    const auto eig = eig_hermitian(d, 1e-6);
    SingularExtremes out;
    out.smax = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
    int best = 0;
    for (int k = 1; k < 2 * m; ++k)
        if (std::abs(eig.eigenvalues[k]) < std::abs(eig.eigenvalues[best])) best = k;
    out.smin = std::abs(eig.eigenvalues[best]);
    // A zero eigenvalue of the dilation splits into [u; 0] and [0; v]
    // pieces, so among the (near-)minimal eigenvectors take the one with
    // the largest lower half; that half is the right-singular direction.
    const double window = out.smin + 1e-13 * std::max(1.0, out.smax);
    double best_vnorm = -1.0;
    for (int k = 0; k < 2 * m; ++k) {
        if (std::abs(eig.eigenvalues[k]) > window) continue;
        double vnorm = 0.0;
        for (int r = 0; r < m; ++r) vnorm += std::norm(eig.eigenvectors(m + r, k));
        if (vnorm > best_vnorm) {
            best_vnorm = vnorm;
            best = k;
        }
    }
    out.weak_right.resize(m);
    double norm = 0.0;
    for (int r = 0; r < m; ++r) {
        out.weak_right[r] = eig.eigenvectors(m + r, best);
        norm += std::norm(out.weak_right[r]);
    }
    norm = std::sqrt(norm);
    if (norm > 1e-12)
        for (cd& z : out.weak_right) z /= norm;
    return out;
}

std::optional<CommutingPairCounterexample> verify_reverse_pair(
    const QuantumChannel& ch, const Matrix& a, const Matrix& b, uint64_t seed) {
    const double in_comm = commutator(a, b).frobenius_norm();
    if (in_comm <= 1e-3 * norm_scale(a) * norm_scale(b)) return std::nullopt;
    const Matrix ia = apply(ch, a), ib = apply(ch, b);
    const double out_comm = commutator(ia, ib).frobenius_norm();
    if (out_comm > 1e-7 * norm_scale(ia) * norm_scale(ib)) return std::nullopt;
    return CommutingPairCounterexample{a, b, out_comm, seed};
}

}  // namespace

std::string family_name(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::CompletelyDecohering:
            return "completely_decohering";
        case ChannelFamily::NontrivialIsotropic:
            return "nontrivial_isotropic";
        case ChannelFamily::QubitCPU:
            return "qubit_commutativity_preserving";
        default:
            return "creates_discord";
    }
}

BipartiteState apply_channel_b(const BipartiteState& s, const QuantumChannel& ch) {
    if (ch.dim != s.dim_b)
        throw DimensionMismatch("apply_channel_b: channel does not match party B");
    const int m = s.dim_a, n = s.dim_b;
    Matrix out(m * n);
    const auto blk = blocks(s);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Matrix img = apply(ch, blk[i][j]);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) out(i * n + r, j * n + c) = img(r, c);
        }
    return make_bipartite_state(m, n, std::move(out), 1e-7);
}

bool range_commutative(const QuantumChannel& ch, double tol) {
    std::vector<Matrix> images;
    for (const Matrix& g : hermitian_basis(ch.dim)) images.push_back(apply(ch, g));
    for (size_t a = 0; a < images.size(); ++a)
        for (size_t b = a + 1; b < images.size(); ++b) {
            const double thr =
                tol * std::max(1.0, images[a].frobenius_norm() * images[b].frobenius_norm());
            if (commutator(images[a], images[b]).frobenius_norm() > thr) return false;
        }
    return true;
}

DecoheringParams extract_decohering(const QuantumChannel& ch, double tol) {
    const int n = ch.dim;
    if (!range_commutative(ch, tol))
        throw NotDecohering("extract_decohering: channel range is not commutative");

    std::vector<Matrix> images;
    for (const Matrix& g : hermitian_basis(n)) images.push_back(apply(ch, g));
    const Matrix basis = simultaneous_eigenbasis(images, std::max(tol, 1e-8));

    // W_i picks up matrix-unit coefficients: (W_i)_{lk} = <e_i|L(E_kl)|e_i>.
    std::vector<Matrix> povm(n, Matrix(n));
    std::vector<Matrix> unit_images;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const Matrix img = apply(ch, matrix_unit(n, k, l));
            for (int i = 0; i < n; ++i) {
                cd val = 0.0;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        val += std::conj(basis(r, i)) * img(r, c) * basis(c, i);
                povm[i](l, k) = val;
            }
            unit_images.push_back(img);
        }
    for (Matrix& w : povm) w = 0.5 * (w + w.adjoint());

    const double gate = std::max(10.0 * tol, 1e-8);
    Matrix total(n);
    for (const Matrix& w : povm) {
        if (!is_psd(w, std::max(tol, 1e-8)))
            throw NotDecohering("extract_decohering: recovered effect is not PSD");
        total += w;
    }
    if ((total - Matrix::identity(n)).frobenius_norm() > gate * std::sqrt(double(n)))
        throw NotDecohering("extract_decohering: recovered effects do not sum to identity");

    size_t idx = 0;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l, ++idx) {
            Matrix recon(n);
            for (int i = 0; i < n; ++i) {
                const cd coeff = povm[i](l, k);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        recon(r, c) += coeff * basis(r, i) * std::conj(basis(c, i));
            }
            if ((recon - unit_images[idx]).frobenius_norm() > gate)
                throw NotDecohering("extract_decohering: reconstruction misses at tolerance");
        }
    return {povm, basis};
}

std::optional<IsotropicParams> fit_isotropic(const QuantumChannel& ch, double tol,
                                             std::string* why) {
    const int n = ch.dim;
    const double gate = std::max(10.0 * tol, 1e-8);
    const auto rep = is_cptp(ch, std::max(tol, 1e-9));
    if (!rep.tp) {
        set_reason(why, "channel is not trace preserving");
        return std::nullopt;
    }
    if (!rep.unital) {
        set_reason(why, "channel is not unital");
        return std::nullopt;
    }

    // Action on the traceless hermitian subspace as a real matrix; an
    // isotropic channel acts there as w times an orthogonal map.
    const auto basis = traceless_orthonormal_basis(n);
    const int d = static_cast<int>(basis.size());
    std::vector<std::vector<double>> m(d, std::vector<double>(d));
    for (int b = 0; b < d; ++b) {
        const Matrix img = apply(ch, basis[b]);
        for (int a = 0; a < d; ++a) m[a][b] = hs_inner(basis[a], img).real();
    }
    double trace_gram = 0.0;
    for (int a = 0; a < d; ++a)
        for (int k = 0; k < d; ++k) trace_gram += m[k][a] * m[k][a];
    const double weight_mag = std::sqrt(trace_gram / d);
    double gram_defect = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double g = 0.0;
            for (int k = 0; k < d; ++k) g += m[k][a] * m[k][b];
            if (a == b) g -= weight_mag * weight_mag;
            gram_defect = std::max(gram_defect, std::abs(g));
        }
    if (gram_defect > gate) {
        set_reason(why, "traceless action is not a scaled orthogonal map");
        return std::nullopt;
    }
    if (weight_mag <= std::max(tol, 1e-9)) {
        set_reason(why, "mixing weight is zero at tolerance; the channel is "
                        "completely depolarizing, a decohering form");
        return std::nullopt;
    }

    // Diagonal probe with unit spectral gaps; its image must be the probe's
    // spectrum conjugated by the unitary we are after.
    Matrix probe(n);
    for (int k = 0; k < n; ++k) probe(k, k) = k - 0.5 * (n - 1);
    const Matrix probe_img = apply(ch, probe);

    double best_resid = 0.0;
    std::optional<IsotropicParams> best;
    for (const IsotropicBranch branch : {IsotropicBranch::Unitary, IsotropicBranch::Transpose}) {
        const auto [lo, hi] = isotropic_weight_range(n, branch);
        for (const double w : {weight_mag, -weight_mag}) {
            if (w < lo - 1e-12 || w > hi + 1e-12) continue;
            const auto eig = eig_hermitian(cd(1.0 / w, 0.0) * probe_img, 1e-6);
            bool spectra_match = true;
            for (int k = 0; k < n; ++k)
                if (std::abs(eig.eigenvalues[k] - probe(k, k).real()) > 1e-5)
                    spectra_match = false;
            if (!spectra_match) continue;

            // Column phases: the image of E_0k + E_k0 links eigenvector 0
            // to eigenvector k and exposes their relative phase.
            Matrix u(n);
            for (int r = 0; r < n; ++r) u(r, 0) = eig.eigenvectors(r, 0);
            bool phases_ok = true;
            for (int k = 1; k < n; ++k) {
                const Matrix link =
                    cd(1.0 / w, 0.0) *
                    apply(ch, matrix_unit(n, 0, k) + matrix_unit(n, k, 0));
                cd z = 0.0;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c)
                        z += std::conj(eig.eigenvectors(r, 0)) * link(r, c) *
                             eig.eigenvectors(c, k);
                if (std::abs(z) < 0.5) {
                    phases_ok = false;
                    break;
                }
                const cd phase = std::conj(z) / std::abs(z);
                for (int r = 0; r < n; ++r) u(r, k) = phase * eig.eigenvectors(r, k);
            }
            if (!phases_ok) continue;

            double resid = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Matrix e = matrix_unit(n, i, j);
                    resid = std::max(
                        resid,
                        (apply(ch, e) - isotropic_action(u, w, branch, e)).frobenius_norm());
                }
            if (resid <= gate && (!best || resid < best_resid)) {
                best_resid = resid;
                best = IsotropicParams{u, branch, w};
            }
        }
    }
    if (!best) set_reason(why, "no branch/sign candidate reconstructs the channel");
    return best;
}

std::optional<QubitCpuParams> fit_qubit_cpu(const QuantumChannel& ch, double tol,
                                            std::string* why) {
    if (ch.dim != 2) throw DimensionMismatch("fit_qubit_cpu: qubit channels only");
    const double gate = std::max(10.0 * tol, 1e-8);
    const auto rep = is_cptp(ch, std::max(tol, 1e-9));
    if (!rep.tp) {
        set_reason(why, "channel is not trace preserving");
        return std::nullopt;
    }
    if (!rep.unital) {
        set_reason(why, "channel is not unital");
        return std::nullopt;
    }

    // L(E_00) = U diag(l, 1-l) U^dag fixes l and the basis; the swap gauge
    // is broken by taking l >= 1/2, so U's first column carries the larger
    // eigenvalue. Any eigenbasis works when the spectrum degenerates, since
    // the off-diagonal data is read in the same frame it is written back.
    const auto eig = eig_hermitian(apply(ch, matrix_unit(2, 0, 0)), std::max(tol, 1e-8));
    const double lambda = std::min(1.0, std::max(0.5, eig.eigenvalues[1]));
    Matrix u(2);
    for (int r = 0; r < 2; ++r) {
        u(r, 0) = eig.eigenvectors(r, 1);
        u(r, 1) = eig.eigenvectors(r, 0);
    }
    // Phase gauge: rotate each column so its largest entry is real positive.
    for (int c = 0; c < 2; ++c) {
        const int big = (std::abs(u(0, c)) >= std::abs(u(1, c))) ? 0 : 1;
        const double mag = std::abs(u(big, c));
        if (mag > 1e-14) {
            const cd phase = std::conj(u(big, c)) / mag;
            u(0, c) *= phase;
            u(1, c) *= phase;
        }
    }

    const Matrix x = u.adjoint() * apply(ch, matrix_unit(2, 0, 1)) * u;
    const double root = std::sqrt(std::max(0.0, lambda * (1.0 - lambda)));
    QubitCpuParams p;
    p.unitary = u;
    p.lambda = lambda;
    p.alpha = (root > 1e-8) ? x(0, 0) / root : cd(0.0, 0.0);
    p.beta = x(0, 1) / lambda;
    p.gamma = (1.0 - lambda > 1e-8) ? x(1, 0) / (1.0 - lambda) : cd(0.0, 0.0);

    if (std::abs(p.beta) + std::abs(p.gamma) <= 1e-9) {
        set_reason(why, "degenerate form: beta and gamma vanish, the channel "
                        "is completely decohering");
        return std::nullopt;
    }
    if (lambda >= 1.0 - 1e-9 && std::abs(p.beta) <= 1e-9) {
        set_reason(why, "degenerate form: lambda = 1 with beta = 0");
        return std::nullopt;
    }

    double resid = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Matrix e = matrix_unit(2, i, j);
            resid = std::max(resid,
                             (apply(ch, e) - qubit_cpu_apply(p, e)).frobenius_norm());
        }
    if (resid > gate) {
        set_reason(why, "recovered parameters do not reconstruct the channel");
        return std::nullopt;
    }
    return p;
}

ChannelClass classify(const QuantumChannel& ch, const ClassifyOptions& opts) {
    const auto rep = is_cptp(ch, std::max(opts.tol, 1e-9));
    if (!rep.cp || !rep.tp)
        throw NotCPTP("classify: input is not a channel (cp=" + std::to_string(rep.cp) +
                      ", tp=" + std::to_string(rep.tp) + ")");

    ChannelClass out;
    if (range_commutative(ch, opts.tol)) {
        out.family = ChannelFamily::CompletelyDecohering;
        out.decohering = extract_decohering(ch, opts.tol);
        return out;
    }
    if (auto iso = fit_isotropic(ch, opts.tol)) {
        out.family = ChannelFamily::NontrivialIsotropic;
        out.isotropic = std::move(iso);
        return out;
    }
    if (ch.dim == 2) {
        if (auto cpu = fit_qubit_cpu(ch, opts.tol)) {
            out.family = ChannelFamily::QubitCPU;
            out.qubit_cpu = std::move(cpu);
            return out;
        }
    }

    out.family = ChannelFamily::CreatesDiscord;
    for (int trial = 0; trial < opts.witness_tries; ++trial) {
        const uint64_t seed = derive_seed(opts.witness_seed, trial);
        const BipartiteState in = sample_zero_discord_state(2, ch.dim, ch.dim, seed);
        const BipartiteState img = apply_channel_b(in, ch);
        const double out_resid = zero_discord_residual(img);
        if (out_resid > opts.witness_threshold) {
            out.witness =
                DiscordWitness{in, img, zero_discord_residual(in), out_resid, seed};
            break;
        }
    }
    return out;
}

std::optional<CommutingPairCounterexample> preserves_commutativity_probe(
    const QuantumChannel& ch, int trials, uint64_t seed, double tol) {
    (void)tol;
    const int n = ch.dim;
    for (int trial = 0; trial < trials; ++trial) {
        const uint64_t s = derive_seed(seed, trial);
        Rng rng(s);
        const Matrix v = sample_haar_unitary(n, rng);
        Matrix a(n), b(n);
        for (int k = 0; k < n; ++k) {
            const double wa = rng.uniform(-1.0, 1.0);
            const double wb = rng.uniform(-1.0, 1.0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const cd vv = v(r, k) * std::conj(v(c, k));
                    a(r, c) += wa * vv;
                    b(r, c) += wb * vv;
                }
        }
        const Matrix ia = apply(ch, a), ib = apply(ch, b);
        const double out_comm = commutator(ia, ib).frobenius_norm();
        if (out_comm > 1e-7 * norm_scale(ia) * norm_scale(ib))
            return CommutingPairCounterexample{a, b, out_comm, s};
    }
    return std::nullopt;
}

std::optional<CommutingPairCounterexample> reverse_commutativity_probe(
    const QuantumChannel& ch, int trials, uint64_t seed, double tol) {
    const int n = ch.dim;
    for (int trial = 0; trial < trials; ++trial) {
        const uint64_t s = derive_seed(seed ^ 0xA5A5A5A5ull, trial);
        Rng rng(s);
        const Matrix a = sample_gaussian_hermitian(n, rng);
        const Matrix b = sample_gaussian_hermitian(n, rng);
        if (auto hit = verify_reverse_pair(ch, a, b, s)) return hit;
    }
    // Directed attempt along the superoperator's weakest direction; only
    // meaningful when the channel is close to singular, and verified like
    // any other pair before being reported.
    const auto ext = singular_extremes(superoperator(ch));
    if (ext.smin <= std::max(tol, 1e-9) * std::max(1.0, ext.smax)) {
        Matrix k(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) k(r, c) = ext.weak_right[r * n + c];
        const Matrix kh = 0.5 * (k + k.adjoint());
        const Matrix ka = cd(0.0, -0.5) * (k - k.adjoint());
        const Matrix& kernel_dir = (kh.frobenius_norm() >= ka.frobenius_norm()) ? kh : ka;
        Rng rng(derive_seed(seed ^ 0x5A5A5A5Aull, 0));
        for (int attempt = 0; attempt < 16; ++attempt) {
            const Matrix a = sample_gaussian_hermitian(n, rng);
            if (auto hit = verify_reverse_pair(ch, a, a + kernel_dir, 0)) return hit;
        }
    }
    return std::nullopt;
}

BothDirectionsReport both_directions_report(const QuantumChannel& ch, double tol) {
    BothDirectionsReport rep;
    const auto ext = singular_extremes(superoperator(ch));
    rep.sigma_min = ext.smin;
    rep.sigma_max = ext.smax;
    rep.injective = ext.smin > std::max(tol, 1e-9) * std::max(1.0, ext.smax);

    ClassifyOptions opts;
    opts.tol = tol;
    opts.witness_tries = 0;
    const ChannelClass cls = classify(ch, opts);
    rep.family = cls.family;

    if (ch.dim >= 3) {
        rep.both = cls.family == ChannelFamily::NontrivialIsotropic;
        return rep;
    }
    rep.both = (cls.family == ChannelFamily::QubitCPU ||
                cls.family == ChannelFamily::NontrivialIsotropic) &&
               rep.injective;

    if (cls.family == ChannelFamily::QubitCPU) {
        // Literal reading of the published parameter conditions, kept as a
        // diagnostic. The determinant of the normal form's superoperator is
        // (2l-1)(l^2|beta|^2 - (1-l)^2|gamma|^2), so the alpha-dependent
        // disjunct admits maps that are not actually injective; rank wins.
        const auto& p = *cls.qubit_cpu;
        const double thr = 1e-9;
        const double l = p.lambda;
        const double ab = std::abs(p.alpha), bb = std::abs(p.beta), gb = std::abs(p.gamma);
        bool clause = std::abs(l - 0.5) > thr && (bb + gb) > thr;
        if (l >= 1.0 - thr && bb <= thr) clause = false;
        if (l <= thr && gb <= thr) clause = false;
        const bool interior = l > thr && l < 1.0 - thr;
        const double balance = std::abs(l * bb - (1.0 - l) * gb);
        if (interior && bb > thr && gb > thr) {
            if (ab <= thr) {
                clause = clause && balance > thr;
            } else {
                const double twist =
                    std::abs(l * std::conj(p.beta) * p.alpha -
                             (1.0 - l) * p.gamma * std::conj(p.alpha));
                clause = clause && (balance > thr || twist > thr);
            }
        }
        rep.clause_verdict = clause;
        if (clause != rep.both)
            rep.diagnostic =
                "literal parameter clauses say " + std::string(clause ? "true" : "false") +
                " but superoperator rank says " + std::string(rep.both ? "true" : "false");
    }
    return rep;
}

bool both_directions(const QuantumChannel& ch, double tol) {
    return both_directions_report(ch, tol).both;
}

}  // namespace qdc
