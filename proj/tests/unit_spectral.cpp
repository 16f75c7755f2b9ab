#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qaa/afm.hpp"
#include "qaa/ec3.hpp"
#include "qaa/eigensolve.hpp"
#include "qaa/path.hpp"
#include "qaa/perturbation.hpp"
#include "qaa/rng.hpp"
#include "qaa/scaling.hpp"
#include "qaa/sweep.hpp"

using namespace qaa;

namespace {

KLocalOperator random_zx_operator(int n, std::uint64_t seed) {
    Rng rng(seed);
    KLocalOperator op(n);
    for (int i = 0; i < n; ++i) {
        op.add_z({i}, rng.uniform(-1.0, 1.0));
        op.add_x(i, rng.uniform(-1.0, 1.0));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) op.add_z({i, j}, rng.uniform(-1.0, 1.0));
    return op;
}

Eigen::VectorXd dense_eigenvalues(const KLocalOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.materialize_dense(),
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

SolverOptions krylov_forced() {
    SolverOptions o;
    o.dense_threshold = 1;  // exercise the iterative path even at small dims
    return o;
}

}  // namespace

TEST_CASE("free spins: exact endpoint spectrum") {
    const int n = 5;
    const SpectrumSlice s = lowest_k(transverse_field_driver(n), 2);
    REQUIRE(s.energies.size() == 2);
    CHECK(std::abs(s.energies[0] + 5.0) <= 1e-10);
    CHECK(std::abs(s.energies[1] + 3.0) <= 1e-10);
}

TEST_CASE("iterative solver matches dense diagonalization") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const KLocalOperator op = random_zx_operator(8, derive_seed(77, seed));
        const Eigen::VectorXd want = dense_eigenvalues(op);
        const SpectrumSlice got = lowest_k(op, 4, krylov_forced(), false);
        REQUIRE(got.energies.size() == 4);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(got.energies[i] - want[i]) <= 1e-8);
    }
}

TEST_CASE("eigenvectors satisfy the eigenvalue equation") {
    const KLocalOperator op = random_zx_operator(7, 123);
    const SpectrumSlice s = lowest_k(op, 3, krylov_forced(), true);
    REQUIRE(s.eigenvectors.size() == 3);
    for (int i = 0; i < 3; ++i) {
        const Eigen::VectorXd& v = s.eigenvectors[static_cast<std::size_t>(i)];
        CHECK(std::abs(v.norm() - 1.0) <= 1e-10);
        CHECK((op.apply(v) - s.energies[static_cast<std::size_t>(i)] * v).norm() <= 1e-7);
        CHECK(s.residual_norms[static_cast<std::size_t>(i)] <= 1e-8);
    }
}

TEST_CASE("diagonal operators are solved exactly") {
    const Ec3Cost ec = ec3_to_cost(random_ec3(10, 0.8, 3));
    const KLocalOperator op = ec.cost.to_operator();
    std::vector<double> want = op.diagonal_energies();
    std::partial_sort(want.begin(), want.begin() + 5, want.end());
    const SpectrumSlice got = lowest_k(op, 5, {}, true);
    for (int i = 0; i < 5; ++i) CHECK(got.energies[static_cast<std::size_t>(i)] == want[static_cast<std::size_t>(i)]);
    // eigenvectors are basis states
    for (const auto& v : got.eigenvectors) CHECK(v.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("energies are invariant under a constant shift") {
    KLocalOperator op = random_zx_operator(8, 9);
    const SpectrumSlice base = lowest_k(op, 2, krylov_forced(), false);
    op.add_constant(3.7);
    const SpectrumSlice shifted = lowest_k(op, 2, krylov_forced(), false);
    CHECK(std::abs(shifted.energies[0] - base.energies[0] - 3.7) <= 1e-8);
    CHECK(std::abs(shifted.energies[1] - base.energies[1] - 3.7) <= 1e-8);
}

TEST_CASE("ground energy is independent of how many levels are requested") {
    const KLocalOperator op = random_zx_operator(9, 21);
    const double e1 = lowest_k(op, 1, krylov_forced(), false).energies[0];
    const double e4 = lowest_k(op, 4, krylov_forced(), false).energies[0];
    CHECK(std::abs(e1 - e4) <= 1e-8);
}

TEST_CASE("k beyond the Hilbert space dimension is rejected") {
    CHECK_THROWS(lowest_k(transverse_field_driver(1), 3));
    CHECK_THROWS(lowest_k(transverse_field_driver(2), 0));
}

TEST_CASE("pure-driver path has gap 2(1-s) and zero matrix element") {
    // zero problem operator: H(s) = (1-s) * sum X
    const AnnealingPath path{KLocalOperator(4), transverse_field_driver(4)};
    const OperatorFamily fam = path.family_s();
    const GapProfile prof = gap_sweep(fam, {0.0, 0.25, 0.5, 0.75}, 2);
    for (const GapPoint& pt : prof.grid) {
        CHECK(!pt.failed);
        CHECK(pt.gap == doctest::Approx(2.0 * (1.0 - pt.param)).epsilon(1e-8));
        CHECK(pt.v10_valid);
        // dH/ds = -driver commutes with H(s): no off-diagonal element
        CHECK(std::abs(pt.v10) <= 1e-6);
    }
}

TEST_CASE("two-level sweep refines to the analytic minimum") {
    const double a = 1.0, b = 0.05;
    const OperatorFamily fam = landau_zener_family(a, b);
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
    GapProfile prof = gap_sweep(fam, grid, 2);
    CHECK(prof.min_index == 10);
    CHECK(refine_profile_min(fam, prof, 1e-10));
    CHECK(prof.refined);
    CHECK(prof.min_param == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(prof.min_gap == doctest::Approx(2.0 * b).epsilon(1e-9));

    // gap on the grid matches 2 sqrt(a^2 (s-1/2)^2 + b^2)
    for (const GapPoint& pt : prof.grid) {
        const double d = a * (pt.param - 0.5);
        CHECK(pt.gap == doctest::Approx(2.0 * std::sqrt(d * d + b * b)).epsilon(1e-8));
    }

    // matrix element at the crossing is the sweep slope
    const GapPoint& mid = prof.grid[10];
    CHECK(mid.v10 == doctest::Approx(a).epsilon(1e-6));
}

TEST_CASE("adiabatic time bound peaks as slope over squared gap") {
    const double a = 1.0, b = 0.05;
    const OperatorFamily fam = landau_zener_family(a, b);
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(i / 40.0);
    const GapProfile prof = gap_sweep(fam, grid, 2);
    const double bound = adiabatic_time_bound(prof);
    CHECK(bound == doctest::Approx(a / (4.0 * b * b)).epsilon(1e-4));
}

TEST_CASE("degenerate grid point forces an infinite bound") {
    // ferromagnetic pair: H(1) has the doubly degenerate aligned ground pair
    KLocalOperator zz(2);
    zz.add_z({0, 1}, -1.0);
    const AnnealingPath path{zz, transverse_field_driver(2)};
    const GapProfile prof = gap_sweep(path.family_s(), {0.0, 0.5, 1.0}, 2);
    CHECK(prof.grid[2].degenerate);
    CHECK(std::isinf(adiabatic_time_bound(prof)));
}

TEST_CASE("level tracking stays aligned with sorted energies away from crossings") {
    const Ec3Cost ec = ec3_to_cost(random_ec3(6, 0.62, 11));
    const AnnealingPath path = build_annealing_path(ec.cost);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
    const GapProfile prof = gap_sweep(path.family_s(), grid, 3);
    REQUIRE(prof.tracking.size() == grid.size());
    for (const auto& t : prof.tracking) REQUIRE(t.size() == 3);
    CHECK(prof.tracking.front() == std::vector<int>{0, 1, 2});
}

TEST_CASE("single-spin series matches the closed form") {
    // E(sigma) = -sigma: ground at sigma=+1, exact ground energy -sqrt(1+lambda^2)
    ClassicalCostFunction cost(1);
    cost.add_field(0, 1.0);
    const PerturbationSeries s = rs_perturbation(cost, SpinConfiguration(1u, 1), 2);
    REQUIRE(s.coeffs.size() == 3);
    CHECK(s.coeffs[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(s.coeffs[1] == doctest::Approx(-0.5).epsilon(1e-12));   // -lambda^2/2
    CHECK(s.coeffs[2] == doctest::Approx(0.125).epsilon(1e-12));  // +lambda^4/8
    const double lam = 0.05;
    CHECK(s.evaluate(lam) ==
          doctest::Approx(-std::sqrt(1.0 + lam * lam)).epsilon(1e-9));
}

TEST_CASE("series truncation error drops by sixteen per halving of lambda") {
    const Ec3Cost ec = ec3_to_cost(random_ec3(6, 0.62, 1));
    // unique classical ground needed for a clean series
    const KLocalOperator h0 = ec.cost.to_operator();
    std::vector<double> diag = h0.diagonal_energies();
    std::vector<double> sorted = diag;
    std::sort(sorted.begin(), sorted.end());
    REQUIRE(sorted[1] - sorted[0] > 0.5);

    const SpinConfiguration ground(ec.cost.argmin_energy(), 6);
    const PerturbationSeries s = rs_perturbation(ec.cost, ground, 1);

    const AnnealingPath path = build_annealing_path(ec.cost);
    auto exact_ground = [&](double lam) {
        return dense_eigenvalues(path.at_lambda(lam))[0];
    };
    const double err2 = std::abs(exact_ground(0.02) - s.evaluate(0.02));
    const double err1 = std::abs(exact_ground(0.01) - s.evaluate(0.01));
    REQUIRE(err1 > 0.0);
    const double ratio = err2 / err1;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("degenerate reachable configuration raises a resonance error") {
    ClassicalCostFunction cost(2);  // all four configurations at zero energy
    CHECK_THROWS_AS(rs_perturbation(cost, SpinConfiguration(0u, 2), 1), ResonanceError);
}

TEST_CASE("crossing location from two truncated series") {
    PerturbationSeries a;
    a.coeffs = {0.0, -1.0};  // E = -lambda^2
    PerturbationSeries b;
    b.coeffs = {-0.5, 0.0};  // E = -1/2
    const auto hit = crossing_location_estimate(a, b, 1.0);
    REQUIRE(hit.has_value());
    CHECK(*hit == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));

    PerturbationSeries c;
    c.coeffs = {0.0, 1.0};  // moves away: no crossing
    CHECK(!crossing_location_estimate(c, b, 1.0).has_value());
}

TEST_CASE("critical transverse-field chain gaps close polynomially") {
    // Gamma = 1, h = 0 sits at the continuous transition; gap ~ 1/L
    std::vector<double> sizes, gaps;
    for (int L : {6, 8, 10, 12}) {
        const KLocalOperator op = build_afm_chain(L, 0.0, 1.0, Boundary::periodic);
        const SpectrumSlice s = lowest_k(op, 2, {}, false);
        sizes.push_back(static_cast<double>(L));
        gaps.push_back(s.energies[1] - s.energies[0]);
    }
    const ScalingFit fit = fit_gap_scaling(sizes, gaps);
    CHECK(fit.preferred == "polynomial");
    CHECK(fit.polynomial.r_squared >= 0.98);
    CHECK(fit.polynomial.rate == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("solver reports partial results on iteration exhaustion") {
    const KLocalOperator op = random_zx_operator(10, 5);
    SolverOptions tight = krylov_forced();
    tight.max_iter = 3;  // cannot possibly converge
    tight.tol = 1e-14;
    try {
        lowest_k(op, 4, tight, false);
        FAIL("expected SolverFailure");
    } catch (const SolverFailure& f) {
        CHECK(!f.best_energies.empty());
        CHECK(f.best_residuals.size() == f.best_energies.size());
    }
}
