#include "qaa/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Dense>

#include "qaa/rng.hpp"
#include "qaa/state.hpp"

namespace qaa {

namespace {

SpectrumSlice diagonal_lowest_k(const KLocalOperator& h, int k, bool want_vectors) {
    const std::uint64_t dim = h.dim();
    // k smallest diagonal entries; ties resolved toward the smaller index
    using Entry = std::pair<double, std::uint64_t>;
    std::priority_queue<Entry> heap;  // max-heap of the current best k
    for (std::uint64_t b = 0; b < dim; ++b) {
        const double e = h.diagonal_energy(static_cast<std::uint32_t>(b));
        if (heap.size() < static_cast<std::size_t>(k)) {
            heap.emplace(e, b);
        } else if (Entry(e, b) < heap.top()) {
            heap.pop();
            heap.emplace(e, b);
        }
    }
    std::vector<Entry> best;
    while (!heap.empty()) {
        best.push_back(heap.top());
        heap.pop();
    }
    std::sort(best.begin(), best.end());

    SpectrumSlice out;
    for (const auto& [e, b] : best) {
        out.energies.push_back(e);
        out.residual_norms.push_back(0.0);
        if (want_vectors) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
            v[static_cast<Eigen::Index>(b)] = 1.0;
            out.eigenvectors.push_back(std::move(v));
        }
    }
    return out;
}

SpectrumSlice dense_lowest_k(const KLocalOperator& h, int k, bool want_vectors) {
    const Eigen::MatrixXd m = h.materialize_dense();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    SpectrumSlice out;
    for (int i = 0; i < k; ++i) {
        const double e = es.eigenvalues()[i];
        const Eigen::VectorXd v = es.eigenvectors().col(i);
        out.energies.push_back(e);
        out.residual_norms.push_back((m * v - e * v).norm());
        if (want_vectors) out.eigenvectors.push_back(v);
    }
    return out;
}

// Block Krylov with full reorthogonalization.  The search space grows by the
// residuals of the lowest `blk` Ritz pairs each step (equivalent Krylov space to
// block Lanczos); when the basis hits max_basis it thick-restarts on the lowest
// Ritz vectors.  Ritz values of a converged cluster are accurate to
// ||residual||^2 / (gap to the rest of the spectrum), which is what resolves
// near-degenerate pairs without needing residuals below the pair splitting.
SpectrumSlice krylov_lowest_k(const KLocalOperator& h, int k, const SolverOptions& opts,
                              bool want_vectors) {
    const Eigen::Index dim = static_cast<Eigen::Index>(h.dim());
    const int blk = std::min<int>(k + 2, static_cast<int>(dim));
    int max_basis = opts.max_basis;
    if (max_basis <= 0) max_basis = std::max(10 * blk, 80);
    if (dim >= (Eigen::Index{1} << 16)) max_basis = std::min(max_basis, std::max(4 * blk, 48));
    max_basis = std::min<int>(max_basis, static_cast<int>(dim));
    const int keep = std::min(max_basis - blk, std::max(max_basis / 2, 2 * blk));

    Eigen::MatrixXd V(dim, max_basis);
    Eigen::MatrixXd HV(dim, max_basis);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(max_basis, max_basis);
    int nb = 0;

    Rng rng(opts.seed);
    const double ortho_eps = 1e-10;

    // appends candidate columns after double orthogonalization against V[:, :nb];
    // near-null candidates are dropped (replaced by seeded random directions when
    // nothing at all survives)
    auto append_block = [&](Eigen::MatrixXd cand) -> int {
        int added = 0;
        for (Eigen::Index c = 0; c < cand.cols() && nb + added < max_basis; ++c) {
            Eigen::VectorXd w = cand.col(c);
            const double scale = w.norm();
            for (int pass = 0; pass < 2; ++pass)
                w -= V.leftCols(nb + added) * (V.leftCols(nb + added).transpose() * w);
            const double nrm = w.norm();
            if (nrm <= std::max(scale, 1.0) * ortho_eps) continue;
            V.col(nb + added) = w / nrm;
            ++added;
        }
        return added;
    };

    auto extend = [&](Eigen::MatrixXd cand) -> bool {
        int added = append_block(std::move(cand));
        while (added == 0) {
            // stagnated or fully spanned: try a fresh random direction
            if (nb >= static_cast<int>(dim)) return false;
            added = append_block(random_unit_vector(dim, rng));
            if (added == 0) return false;
        }
        // H times the new columns, then the new rows/columns of T = V^T H V
        for (int c = 0; c < added; ++c) {
            Eigen::VectorXd hv(dim);
            h.apply(V.col(nb + c).data(), hv.data());
            HV.col(nb + c) = hv;
        }
        const auto Vold = V.leftCols(nb + added);
        const auto HVnew = HV.middleCols(nb, added);
        T.block(0, nb, nb + added, added) = Vold.transpose() * HVnew;
        T.block(nb, 0, added, nb) = T.block(0, nb, nb, added).transpose();
        nb += added;
        return true;
    };

    {
        Eigen::MatrixXd start(dim, blk);
        for (int c = 0; c < blk; ++c) start.col(c) = random_unit_vector(dim, rng);
        if (!extend(std::move(start)))
            throw SolverFailure("lowest_k: could not build a start block", {}, {});
    }

    std::vector<double> last_res, last_en;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        Eigen::MatrixXd Tsym =
            0.5 * (T.topLeftCorner(nb, nb) + T.topLeftCorner(nb, nb).transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tsym);
        const int nritz = std::min(nb, std::max(k, blk));

        // residuals of the lowest Ritz pairs
        Eigen::MatrixXd Y = es.eigenvectors().leftCols(nritz);
        Eigen::MatrixXd RV = HV.leftCols(nb) * Y;  // H * ritz vectors
        last_res.assign(static_cast<std::size_t>(nritz), 0.0);
        last_en.assign(static_cast<std::size_t>(nritz), 0.0);
        Eigen::MatrixXd res(dim, nritz);
        for (int i = 0; i < nritz; ++i) {
            const double theta = es.eigenvalues()[i];
            res.col(i) = RV.col(i) - theta * (V.leftCols(nb) * Y.col(i));
            last_en[static_cast<std::size_t>(i)] = theta;
            last_res[static_cast<std::size_t>(i)] = res.col(i).norm();
        }

        bool done = nb >= k;
        for (int i = 0; i < k && done; ++i)
            if (last_res[static_cast<std::size_t>(i)] > opts.tol) done = false;
        if (done) {
            SpectrumSlice out;
            for (int i = 0; i < k; ++i) {
                out.energies.push_back(es.eigenvalues()[i]);
                out.residual_norms.push_back(last_res[static_cast<std::size_t>(i)]);
                if (want_vectors) out.eigenvectors.push_back(V.leftCols(nb) * Y.col(i));
            }
            return out;
        }

        if (nb + blk > max_basis) {
            // thick restart on the lowest `keep` Ritz vectors; T becomes diagonal
            const int m = std::min(keep, nb);
            Eigen::MatrixXd Yk = es.eigenvectors().leftCols(m);
            Eigen::MatrixXd Vk = V.leftCols(nb) * Yk;
            Eigen::MatrixXd HVk = HV.leftCols(nb) * Yk;
            V.leftCols(m) = Vk;
            HV.leftCols(m) = HVk;
            T.setZero();
            for (int i = 0; i < m; ++i) T(i, i) = es.eigenvalues()[i];
            nb = m;
        }

        const int nexp = std::min(blk, nritz);
        if (!extend(res.leftCols(nexp))) break;
    }

    throw SolverFailure("lowest_k: no convergence within max_iter", last_en, last_res);
}

}  // namespace

SpectrumSlice lowest_k(const KLocalOperator& h, int k, const SolverOptions& opts,
                       bool want_vectors) {
    const std::uint64_t dim = h.dim();
    if (k < 1) throw std::invalid_argument("lowest_k: k must be >= 1");
    if (static_cast<std::uint64_t>(k) > dim)
        throw std::invalid_argument("lowest_k: k exceeds the Hilbert-space dimension");
    if (h.is_diagonal()) return diagonal_lowest_k(h, k, want_vectors);
    if (dim <= static_cast<std::uint64_t>(std::max(opts.dense_threshold, 3 * (k + 2))))
        return dense_lowest_k(h, k, want_vectors);
    return krylov_lowest_k(h, k, opts, want_vectors);
}

}  // namespace qaa
