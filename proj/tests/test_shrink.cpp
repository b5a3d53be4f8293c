#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "oracles.hpp"
#include "sfd/common.hpp"
#include "sfd/shrink.hpp"

using namespace sfd;

namespace {

DenseMatrix axis_rows(std::initializer_list<std::pair<std::size_t, double>> rows, std::size_t d) {
    DenseMatrix m(rows.size(), d);
    std::size_t i = 0;
    for (auto [axis, scale] : rows) m(i++, axis) = scale;
    return m;
}

} // namespace

TEST_CASE("dense_shrink on orthogonal rows") {
    // rows 3e1, 2e2, 1e3; ell = 2 -> singular values (3,2), keep sqrt(9-4)=sqrt5 on e1.
    DenseMatrix a = axis_rows({{0, 3.0}, {1, 2.0}, {2, 1.0}}, 4);
    DenseMatrix b = dense_shrink(a, 2);
    REQUIRE(b.rows == 2);
    CHECK(std::abs(b(0, 0)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
    for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(b(0, j)) < 1e-10);
    for (std::size_t j = 0; j < 4; ++j) CHECK(b(1, j) == 0.0); // row ell is exactly zero
}

TEST_CASE("dense_shrink with rank below ell recovers exactly") {
    DenseMatrix a(2, 3);
    a(0, 0) = 1.0;
    a(1, 0) = 1.0;
    DenseMatrix b = dense_shrink(a, 2);
    CHECK(std::abs(b(0, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    DenseMatrix diff = oracle::gram_difference(a, b);
    for (double v : diff.data) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("dense_shrink Frobenius bookkeeping on tall input") {
    Rng rng(8);
    DenseMatrix a = oracle::random_dense(8, 5, rng); // tall: uses the A^T A route
    DenseMatrix b = dense_shrink(a, 4);
    std::vector<double> sv_sq = oracle::singular_sq(a);
    // |A|_F^2 - |B|_F^2 = 4 s4^2 + s5^2 (the subtracted floor plus the dropped tail).
    const double expect = 4.0 * sv_sq[3] + sv_sq[4];
    CHECK(frob_sq(a) - frob_sq(b) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("dense_shrink validation") {
    DenseMatrix a(3, 4);
    CHECK_THROWS_AS(dense_shrink(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(dense_shrink(a, 4), std::invalid_argument);
}

TEST_CASE("sparse_shrink exact recovery at rank one") {
    SparseBuffer buf(4);
    buf.append_row({{0}, {2.0}});
    buf.append_row({{0}, {1.0}});
    PowerConfig cfg;
    Rng rng(2);
    DenseMatrix b = sparse_shrink(buf, 2, cfg, rng);
    DenseMatrix diff = oracle::gram_difference(oracle::densify(buf), b);
    for (double v : diff.data) CHECK(std::abs(v) < 1e-8 * buf.frob_sq());
    CHECK(diff(0, 0) == doctest::Approx(0.0).epsilon(1e-8)); // B'TB' = 5 e1 e1^T
}

TEST_CASE("shrink outputs never overestimate directional energy") {
    // Property 1, deterministic: min-eig(A^TA - B^TB) >= -1e-8 |A|_F^2.
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng(400 + seed);
        const std::size_t m = 6 + rng.uniform_below(10);
        const std::size_t d = 8 + rng.uniform_below(16);
        const std::size_t ell = 2 + rng.uniform_below(std::min(m, d) - 1);
        SparseBuffer buf = oracle::random_sparse(m, d, 0.35, rng);
        DenseMatrix dense = oracle::densify(buf);

        DenseMatrix bs = sparse_shrink(buf, ell, PowerConfig{}, rng);
        const double min_s = oracle::eig_extremes(oracle::gram_difference(dense, bs),
                                                  buf.frob_sq()).second;
        CHECK(min_s >= -1e-8 * buf.frob_sq());

        if (m <= d) {
            DenseMatrix bd = dense_shrink(dense, ell);
            const double min_d = oracle::eig_extremes(oracle::gram_difference(dense, bd),
                                                      buf.frob_sq()).second;
            CHECK(min_d >= -1e-8 * buf.frob_sq());
        }
    }
}

TEST_CASE("sparse_shrink strengthened property 2 and property 3") {
    const std::size_t m = 100, d = 60, ell = 8;
    int p2_ok = 0, p3_ok = 0;
    const int seeds = 50;
    for (int seed = 0; seed < seeds; ++seed) {
        Rng rng(7000 + seed);
        SparseBuffer buf = oracle::random_sparse(m, d, 0.15, rng);
        DenseMatrix dense = oracle::densify(buf);
        DenseMatrix b = sparse_shrink(buf, ell, PowerConfig{}, rng);

        std::vector<double> sv_sq = oracle::singular_sq(dense);
        const double s_ell_sq = sv_sq[ell - 1];
        const double diff_norm = oracle::spectral_norm_dense(
            oracle::gram_difference(dense, b), buf.frob_sq());
        if (diff_norm <= (41.0 / 16.0) * s_ell_sq) ++p2_ok;
        if (buf.frob_sq() - frob_sq(b) >= (3.0 / 4.0) * ell * s_ell_sq) ++p3_ok;
    }
    CHECK(p2_ok >= 45);
    CHECK(p3_ok >= 45);
}

TEST_CASE("verify_spectral trivial operators") {
    Rng rng(5);
    VerifierState state;
    state.delta = 0.1;

    SymOp zero = [](const std::vector<double>& x) {
        return std::vector<double>(x.size(), 0.0);
    };
    CHECK(verify_spectral(zero, 20, state, rng));
    CHECK(state.i == 1);

    SymOp ident = [](const std::vector<double>& x) { return x; };
    CHECK(verify_spectral(ident, 20, state, rng));
    CHECK(state.i == 2);

    SymOp triple = [](const std::vector<double>& x) {
        std::vector<double> y = x;
        for (double& v : y) v *= 3.0;
        return y;
    };
    CHECK_FALSE(verify_spectral(triple, 20, state, rng));
    CHECK(state.i == 3);

    // delta_i budget accounting: delta/2 + delta/8 + delta/18.
    CHECK(state.delta_spent ==
          doctest::Approx(0.1 / 2.0 + 0.1 / 8.0 + 0.1 / 18.0).epsilon(1e-12));
    CHECK(state.delta_spent < state.delta);
}

TEST_CASE("verify_spectral completeness on a planted spike") {
    // C = 2.5 v v^T + 0.5 (I - v v^T); should be rejected almost always.
    const std::size_t d = 50;
    Rng rng(99);
    std::vector<double> v = unit_sphere_vector(d, rng);
    SymOp spike = [&](const std::vector<double>& x) {
        double ip = 0.0;
        for (std::size_t i = 0; i < d; ++i) ip += v[i] * x[i];
        std::vector<double> y(d);
        for (std::size_t i = 0; i < d; ++i) y[i] = 0.5 * x[i] + 2.0 * ip * v[i];
        return y;
    };
    int rejected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        VerifierState state;
        state.delta = 0.1;
        if (!verify_spectral(spike, d, state, rng)) ++rejected;
    }
    CHECK(rejected >= 190); // 1 - delta_1 = 0.95 of trials, with margin
}

TEST_CASE("boosted_sparse_shrink exact recovery branch") {
    SparseBuffer buf(6);
    buf.append_row({{0, 1}, {1.0, 2.0}});
    buf.append_row({{0, 1}, {2.0, 4.0}});
    buf.append_row({{0, 1}, {-1.0, -2.0}});
    VerifierState state;
    PowerConfig cfg;
    Rng rng(3);
    ShrinkReport report = boosted_sparse_shrink(buf, 3, state, cfg, rng);
    CHECK(report.attempts == 1);
    CHECK(report.delta_hat == 0.0);
    CHECK(state.i == 0); // no verification needed
    DenseMatrix diff = oracle::gram_difference(oracle::densify(buf), report.b);
    for (double v : diff.data) CHECK(std::abs(v) < 1e-8 * buf.frob_sq());
}

TEST_CASE("boosted_sparse_shrink delta formula and accepted spectral bound") {
    const std::size_t m = 60, d = 30, ell = 6;
    for (int seed = 0; seed < 10; ++seed) {
        Rng rng(1300 + seed);
        SparseBuffer buf = oracle::random_sparse(m, d, 0.2, rng);
        VerifierState state;
        state.delta = 0.1;
        PowerConfig cfg;
        ShrinkReport report = boosted_sparse_shrink(buf, ell, state, cfg, rng);

        const double drop = buf.frob_sq() - frob_sq(report.b);
        CHECK(report.delta_hat ==
              doctest::Approx(drop / (kAlpha * ell)).epsilon(1e-12));
        CHECK(report.delta_hat >= 0.0);
        CHECK(report.attempts >= 1);

        // Accepted outputs satisfy the success definition against the oracle.
        const double diff_norm = oracle::spectral_norm_dense(
            oracle::gram_difference(oracle::densify(buf), report.b), buf.frob_sq());
        CHECK(diff_norm <= report.delta_hat * (1.0 + 1e-9));
    }
}
