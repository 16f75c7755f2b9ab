#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <bit>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qaa/afm.hpp"
#include "qaa/cost.hpp"
#include "qaa/ec3.hpp"
#include "qaa/lbit.hpp"
#include "qaa/path.hpp"
#include "qaa/rng.hpp"

using namespace qaa;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("single EC3 clause scores exactly-one-true") {
    EC3Instance inst;
    inst.n_vars = 3;
    inst.clauses = {{0, 1, 2}};
    // satisfied by the three one-hot assignments only
    for (std::uint32_t x = 0; x < 8; ++x) {
        const int ones = std::popcount(x);
        CHECK(inst.cost(x) == (ones - 1) * (ones - 1));
        CHECK(inst.satisfied_by(x) == (ones == 1));
    }
    CHECK(inst.satisfiable());
}

TEST_CASE("four clauses over four variables are unsatisfiable") {
    EC3Instance inst;
    inst.n_vars = 4;
    inst.clauses = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    CHECK(!inst.satisfiable());
    int best = 1 << 20;
    for (std::uint32_t x = 0; x < 16; ++x) best = std::min(best, inst.cost(x));
    CHECK(best == 1);  // one-hot assignments violate exactly one clause
}

TEST_CASE("spin image reproduces the clause cost for every assignment") {
    Rng rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        const EC3Instance inst = random_ec3(8, 0.62, derive_seed(17, trial));
        const Ec3Cost ec = ec3_to_cost(inst);
        CHECK(ec.constant == doctest::Approx(static_cast<double>(inst.clauses.size())));
        for (std::uint32_t x = 0; x < 256; ++x)
            CHECK(ec.cost.energy(x) + ec.constant ==
                  doctest::Approx(static_cast<double>(inst.cost(x))).epsilon(1e-14));
        // operator image agrees with the cost function on the diagonal
        const KLocalOperator op = ec.cost.to_operator();
        for (std::uint32_t x = 0; x < 256; x += 7)
            CHECK(op.diagonal_energy(x) == doctest::Approx(ec.cost.energy(x)).epsilon(1e-14));
    }
}

TEST_CASE("random_ec3 respects the clause-count and ordering contract") {
    const EC3Instance inst = random_ec3(12, 0.62, 99);
    CHECK(inst.n_vars == 12);
    CHECK(inst.seed == 99);
    CHECK(static_cast<int>(inst.clauses.size()) == 7);  // round(0.62 * 12)

    std::set<std::array<int, 3>> seen;
    for (std::size_t a = 0; a < inst.clauses.size(); ++a) {
        const auto& c = inst.clauses[a];
        CHECK(c[0] >= 0);
        CHECK(c[0] < c[1]);
        CHECK(c[1] < c[2]);
        CHECK(c[2] < 12);
        CHECK(seen.insert(c).second);  // distinct
        if (a) CHECK(inst.clauses[a - 1] < c);  // lexicographic
    }

    // same seed same instance; different seed differs
    CHECK(random_ec3(12, 0.62, 99).clauses == inst.clauses);
    CHECK(random_ec3(12, 0.62, 100).clauses != inst.clauses);
    // alpha rounds to the nearest clause count
    CHECK(random_ec3(10, 0.25, 1).clauses.size() == 3);  // round(2.5) away from zero
}

TEST_CASE("EC3 file round trip is byte exact") {
    const EC3Instance inst = random_ec3(10, 0.8, 4242);
    const std::string p1 = "ec3_roundtrip_a.tmp";
    const std::string p2 = "ec3_roundtrip_b.tmp";
    save_ec3(inst, p1);
    const EC3Instance back = load_ec3(p1);
    CHECK(back.n_vars == inst.n_vars);
    CHECK(back.seed == inst.seed);
    CHECK(back.clauses == inst.clauses);
    save_ec3(back, p2);
    CHECK(slurp(p1) == slurp(p2));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    CHECK_THROWS(load_ec3("does_not_exist.tmp"));
}

TEST_CASE("annealing path endpoints are the problem and the driver") {
    const Ec3Cost ec = ec3_to_cost(random_ec3(6, 0.62, 5));
    const AnnealingPath path = build_annealing_path(ec.cost);

    const KLocalOperator h1 = path.at_s(1.0);
    CHECK(h1.is_diagonal());
    for (std::uint32_t x = 0; x < 64; ++x)
        CHECK(h1.diagonal_energy(x) == doctest::Approx(ec.cost.energy(x)).epsilon(1e-14));

    const KLocalOperator h0 = path.at_s(0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0.materialize_dense());
    CHECK(es.eigenvalues()[0] == doctest::Approx(-6.0).epsilon(1e-12));

    CHECK(path.at_lambda(0.0).is_diagonal());
    CHECK_THROWS_AS(path.at_lambda(-0.1), std::invalid_argument);

    // s-derivative is problem minus driver
    Eigen::VectorXd v = Eigen::VectorXd::Zero(64);
    v[13] = 1.0;
    const Eigen::VectorXd d = path.s_derivative().apply(v);
    const Eigen::VectorXd want = path.problem.apply(v) - path.driver.apply(v);
    CHECK((d - want).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("two-site chain gets a single bond") {
    const double h = 0.3, gamma = 0.7;
    const KLocalOperator op = build_afm_chain(2, h, gamma, Boundary::periodic);
    Eigen::MatrixXd want(4, 4);
    // basis order 00, 10, 01, 11 (site 0 is bit 0); staggered field is +h Z0 - h Z1
    want.setZero();
    want(0, 0) = 1.0 - h + h;
    want(1, 1) = -1.0 + h + h;
    want(2, 2) = -1.0 - h - h;
    want(3, 3) = 1.0 + h - h;
    want(0, 1) = want(1, 0) = gamma;
    want(0, 2) = want(2, 0) = gamma;
    want(1, 3) = want(3, 1) = gamma;
    want(2, 3) = want(3, 2) = gamma;
    CHECK((op.materialize_dense() - want).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("three-site ring is frustrated") {
    const KLocalOperator op = build_afm_chain(3, 0.0, 0.0, Boundary::periodic);
    const std::vector<double> e = op.diagonal_energies();
    double emin = 1e300;
    int mult = 0;
    for (double v : e) emin = std::min(emin, v);
    for (double v : e)
        if (v == emin) ++mult;
    CHECK(emin == doctest::Approx(-1.0));  // one unsatisfied bond
    CHECK(mult == 6);                      // all single-domain-wall states
}

TEST_CASE("open three-site chain orders perfectly") {
    const KLocalOperator op = build_afm_chain(3, 0.0, 0.0, Boundary::open);
    const std::vector<double> e = op.diagonal_energies();
    CHECK(e[0b010] == doctest::Approx(-2.0));
    CHECK(e[0b101] == doctest::Approx(-2.0));
    for (std::uint32_t b = 0; b < 8; ++b)
        if (b != 0b010 && b != 0b101) CHECK(e[b] > -2.0);
}

TEST_CASE("even ring ground pair is the Neel doublet") {
    const KLocalOperator op = build_afm_chain(4, 0.0, 0.0, Boundary::periodic);
    const std::vector<double> e = op.diagonal_energies();
    CHECK(e[0b0101] == doctest::Approx(-4.0));
    CHECK(e[0b1010] == doctest::Approx(-4.0));
    for (std::uint32_t b = 0; b < 16; ++b)
        if (b != 0b0101 && b != 0b1010) CHECK(e[b] >= -4.0 + 4.0 - 1e-12);
}

TEST_CASE("chain length below two is rejected") {
    CHECK_THROWS(build_afm_chain(1, 0.0, 0.3, Boundary::periodic));
}

TEST_CASE("lbit sampling is seed-stable with integer couplings at lambda zero") {
    const LBitModel m = sample_lbit_model(8, 31);
    CHECK(m.n_spins == 8);
    REQUIRE(m.field_series.size() == 8);
    REQUIRE(m.pair_series.size() == 28);  // all i<j

    for (int i = 0; i < 8; ++i) {
        const double h0 = lbit_field_at(m, i, 0.0);
        CHECK(h0 == doctest::Approx(std::round(h0)).epsilon(1e-15));
        CHECK(h0 >= m.params.int_range_lo - 1e-15);
        CHECK(h0 <= m.params.int_range_hi + 1e-15);
    }
    for (std::size_t p = 0; p < m.pair_series.size(); ++p) {
        const auto& ps = m.pair_series[p];
        CHECK(ps.i < ps.j);
        const double j0 = lbit_pair_at(m, p, 0.0);
        if (ps.j - ps.i == 1) {
            CHECK(j0 == doctest::Approx(std::round(j0)).epsilon(1e-15));
        } else {
            CHECK(j0 == 0.0);  // integer part lives on nearest neighbors only
        }
    }

    const LBitModel again = sample_lbit_model(8, 31);
    CHECK(again.field_series == m.field_series);
    for (std::size_t p = 0; p < m.pair_series.size(); ++p)
        CHECK(again.pair_series[p].coeffs == m.pair_series[p].coeffs);
}

TEST_CASE("lbit operator, cost function and family agree") {
    const LBitModel m = sample_lbit_model(6, 7);
    const double lambda = 0.37;
    const KLocalOperator op = evaluate_lbit(m, lambda);
    CHECK(op.is_diagonal());
    const ClassicalCostFunction cost = lbit_cost_at(m, lambda);
    for (std::uint32_t b = 0; b < 64; ++b)
        CHECK(op.diagonal_energy(b) == doctest::Approx(cost.energy(b)).epsilon(1e-12));

    // family with probe 0 is the diagonal operator itself
    const OperatorFamily fam = lbit_lambda_family(m);
    CHECK(fam.n_spins == 6);
    CHECK(fam.at(lambda).is_diagonal());
    CHECK(!lbit_lambda_family(m, 0.05).at(lambda).is_diagonal());

    // analytic lambda-derivative matches a central difference
    const double eps = 1e-6;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(64, 0.125);
    const Eigen::VectorXd fd =
        (fam.at(lambda + eps).apply(v) - fam.at(lambda - eps).apply(v)) / (2 * eps);
    const Eigen::VectorXd an = fam.derivative(lambda).apply(v);
    CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("hand-built lbit model crosses where the field changes sign") {
    LBitModel m;
    m.n_spins = 2;
    m.params.series_order = 1;
    m.field_series = {{1.0, -2.0}, {1.0, 0.0}};  // h0 = 1 - 2 lambda, h1 = 1
    LBitPairSeries pair;
    pair.i = 0;
    pair.j = 1;
    pair.coeffs = {0.0, 0.0};
    m.pair_series = {pair};

    const std::vector<LBitCrossing> xs = find_ground_crossings(m, 0.0, 1.0, 101);
    REQUIRE(xs.size() == 1);
    CHECK(xs[0].lambda == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(xs[0].hamming_d == 1);
    CHECK(xs[0].lower_before.bits == 0b11u);  // both spins up while h0 > 0
    CHECK(xs[0].lower_after.bits == 0b10u);
}

TEST_CASE("cost function accumulates couplings by mask") {
    ClassicalCostFunction cost(3);
    cost.add_field(0, 0.5);
    cost.add_field(0, 0.25);
    cost.add_coupling({0, 1}, 1.0);
    cost.add_coupling({1, 0}, 0.5);  // order-insensitive
    cost.add_coupling_mask(0b101u, -1.0);
    cost.add_constant(2.0);
    CHECK(cost.field(0) == doctest::Approx(0.75));
    CHECK(cost.pair_coupling(0, 1) == doctest::Approx(1.5));
    CHECK(cost.pair_coupling(1, 2) == 0.0);
    // E = c - sum_S J_S prod sigma
    const SpinConfiguration c(0b011u, 3);  // s0=+1 s1=+1 s2=-1
    const double want = 2.0 - (0.75 * 1 + 1.5 * 1 + (-1.0) * (1 * -1));
    CHECK(cost.energy(c) == doctest::Approx(want).epsilon(1e-14));
    CHECK(cost.argmin_energy() < 8u);

    CHECK_THROWS(cost.add_field(3, 1.0));
    CHECK_THROWS(cost.add_coupling({1}, 1.0));
}
