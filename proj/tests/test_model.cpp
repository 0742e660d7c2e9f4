#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ccw/model.hpp"
#include "test_oracles.hpp"

using namespace ccw;
using Catch::Approx;

TEST_CASE("ModelParams validation") {
    CHECK_NOTHROW(ModelParams{1.0, 0.2, 0.3, -4.0}.validate());
    CHECK_NOTHROW(ModelParams{1e-9, 0.0, 0.0, 0.0}.validate());
    CHECK_THROWS_AS(ModelParams{0.0, 0.0, 0.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams{-1.0, 0.0, 0.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams{1.0, -0.1, 0.0, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams{1.0, 0.0, -0.1, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams{1.0, 0.6, 0.4, 0.0}.validate(), std::invalid_argument);
    // the coupling must stay bounded away from zero
    CHECK_THROWS_AS(ModelParams{1.0, 0.5, 0.5 - 1e-13, 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams{1.0, 0.0, 0.0, std::nan("")}.validate(), std::invalid_argument);

    const ModelParams p{2.0, 0.2, 0.1, 0.3};
    CHECK(p.coupling() == Approx(0.7));
    CHECK(p.effective_field() == Approx(0.4));
}

TEST_CASE("FiniteModel validation and rounding") {
    CHECK_NOTHROW(FiniteModel{10, 3, 2, 5}.validate());
    CHECK_THROWS_AS(FiniteModel{10, 3, 2, 4}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(FiniteModel{0, 0, 0, 0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(FiniteModel{10, -1, 6, 5}.validate(), std::invalid_argument);

    const FiniteModel fm = FiniteModel::from_fractions(1000, 0.3, 0.2);
    CHECK(fm.n_plus == 300);
    CHECK(fm.n_minus == 200);
    CHECK(fm.n_free == 500);
    CHECK(fm.s_n() == Approx(0.3));

    // halfway cases round away from zero
    CHECK(FiniteModel::from_fractions(10, 0.25, 0.0).n_plus == 3);
    CHECK(FiniteModel::from_fractions(10, 0.0, 0.15).n_minus == 2);
}

TEST_CASE("sector magnetization is affine and within range") {
    const FiniteModel fm{10, 3, 2, 5};
    CHECK_THROWS_AS(sector_magnetization(fm, -1), std::out_of_range);
    CHECK_THROWS_AS(sector_magnetization(fm, 6), std::out_of_range);
    double prev = sector_magnetization(fm, 0).m_n;
    CHECK(prev == Approx(0.1 - 0.5));
    for (std::int64_t k = 1; k <= fm.n_free; ++k) {
        const double m = sector_magnetization(fm, k).m_n;
        CHECK(m - prev == Approx(2.0 / 10.0));
        prev = m;
    }
    CHECK(prev == Approx(0.1 + 0.5));
}

TEST_CASE("free energy closed-form values") {
    for (const ModelParams& p : {ModelParams{1.0, 0.0, 0.0, 0.0}, ModelParams{3.0, 0.2, 0.1, -0.4},
                                 ModelParams{0.5, 0.4, 0.4, 2.0}}) {
        CHECK(free_energy(p, 0.0) == 0.0);
    }
    const ModelParams p{1.0, 0.0, 0.0, 0.0};
    CHECK(free_energy(p, 1.0) == Approx(-0.5 + std::log(2.0)).epsilon(1e-14));
    CHECK(free_energy(p, -1.0) == Approx(-0.5 + std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(free_energy(p, 1.0 + 1e-12), std::domain_error);
    CHECK_THROWS_AS(free_energy(p, -1.5), std::domain_error);
}

TEST_CASE("free energy is even when the effective field vanishes") {
    // dyadic parameters make h_eff == 0 exactly; the two sides must agree
    // bit for bit on the grid
    const ModelParams exact[] = {
        {2.0, 0.25, 0.25, 0.0}, {1.5, 0.25, 0.125, -0.125}, {4.0, 0.0, 0.5, 0.5}};
    for (const ModelParams& p : exact) {
        REQUIRE(p.effective_field() == 0.0);
        for (int i = 0; i <= 1000; ++i) {
            const double z = -1.0 + 2.0 * i / 1000.0;
            CHECK(free_energy(p, z) == free_energy(p, -z));
        }
    }
    // generic h = r - s leaves a ~1e-17 residual field
    const ModelParams generic{3.0, 0.3, 0.1, 0.1 - 0.3};
    for (int i = 0; i <= 1000; ++i) {
        const double z = -1.0 + 2.0 * i / 1000.0;
        CHECK(free_energy(generic, z) == Approx(free_energy(generic, -z)).margin(1e-15));
    }
}

TEST_CASE("derivative against central finite differences") {
    const ModelParams p{2.0, 0.2, 0.1, 0.3};
    const auto f = [&](double z) { return free_energy(p, z); };
    CHECK(free_energy_deriv(p, 0.3) ==
          Approx(ccw_test::central_difference(f, 0.3, 1e-6)).margin(1e-8));

    ccw_test::Rng rng(911);
    for (int draw = 0; draw < 10; ++draw) {
        const double s = rng.uniform(0.0, 0.45);
        const double r = rng.uniform(0.0, 0.45);
        const ModelParams q{rng.uniform(0.1, 5.0), s, r, rng.uniform(-2.0, 2.0)};
        const auto g = [&](double z) { return free_energy(q, z); };
        for (int i = 0; i < 100; ++i) {
            const double z = rng.uniform(-0.99, 0.99);
            CHECK(free_energy_deriv(q, z) ==
                  Approx(ccw_test::central_difference(g, z, 1e-6)).margin(1e-7));
        }
    }
}

TEST_CASE("derivative domain and zeros") {
    const ModelParams p{1.3, 0.25, 0.25, 0.0};
    REQUIRE(p.effective_field() == 0.0);
    CHECK(free_energy_deriv(p, 0.0) == 0.0);
    CHECK_THROWS_AS(free_energy_deriv(p, 1.0), std::domain_error);
    CHECK_THROWS_AS(free_energy_deriv(p, -1.0), std::domain_error);

    // spontaneous root of z = tanh(2z), from the fixed-point oracle
    const double z0 = ccw_test::fixed_point_tanh(2.0, 0.0);
    const ModelParams cw{2.0, 0.0, 0.0, 0.0};
    CHECK(std::fabs(free_energy_deriv(cw, z0)) < 1e-10);
    CHECK(z0 == Approx(0.957504).margin(1e-6));
}

TEST_CASE("self-consistency residual matches the stationarity condition") {
    const ModelParams sym{1.3, 0.25, 0.25, 0.0};
    CHECK(self_consistency_residual(sym, 0.0) == 0.0);

    // at beta = 1/t with no effective field, z = 0 is the unique root
    const ModelParams crit{2.0, 0.25, 0.25, 0.0};
    REQUIRE(crit.beta * crit.coupling() == 1.0);
    CHECK(self_consistency_residual(crit, 0.0) == 0.0);
    for (int i = 0; i <= 2000; ++i) {
        const double z = -1.0 + 2.0 * i / 2000.0;
        if (std::fabs(z) < 1e-3) continue;
        CHECK(self_consistency_residual(crit, z) * z > 0.0);
    }

    // roots of the residual and of the derivative coincide
    ccw_test::Rng rng(4242);
    for (int draw = 0; draw < 20; ++draw) {
        const double s = rng.uniform(0.0, 0.4);
        const ModelParams q{rng.uniform(0.2, 4.0), s, rng.uniform(0.0, 0.4),
                            rng.uniform(-1.0, 1.0)};
        // bisect the residual on [-1, 1]; it changes sign across the interval
        double lo = -1.0, hi = 1.0;
        REQUIRE(self_consistency_residual(q, lo) < 0.0);
        REQUIRE(self_consistency_residual(q, hi) > 0.0);
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (self_consistency_residual(q, mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double root = 0.5 * (lo + hi);
        CHECK(std::fabs(free_energy_deriv(q, root)) < 1e-10);
    }
}

TEST_CASE("per-site Hamiltonian closed form") {
    const FiniteModel all_free{10, 0, 0, 10};
    CHECK(hamiltonian_per_site(all_free, 0.0, 10) == Approx(-0.55).epsilon(1e-14));

    const FiniteModel mixed{10, 3, 2, 5};
    CHECK(hamiltonian_per_site(mixed, 0.0, 0) == Approx(-0.13).epsilon(1e-14));
    CHECK_THROWS_AS(hamiltonian_per_site(mixed, 0.0, 6), std::out_of_range);
}

TEST_CASE("per-site Hamiltonian equals the explicit pairwise sum") {
    // two explicit spin vectors with equal k share their energy exactly
    const std::vector<int> a = {1, 1, -1, -1, 1, -1, 1, 1};
    const std::vector<int> b = {1, -1, 1, 1, -1, 1, 1, -1};  // same k, different sites
    CHECK(ccw_test::pairwise_energy_per_site(a, 0.7) ==
          ccw_test::pairwise_energy_per_site(b, 0.7));

    ccw_test::Rng rng(100);
    for (int n = 2; n <= 12; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            const std::int64_t n_plus = rng.integer(0, n / 2);
            const std::int64_t n_minus = rng.integer(0, n - n_plus);
            const FiniteModel fm{n, n_plus, n_minus, n - n_plus - n_minus};
            const double h = rng.uniform(-1.0, 1.0);
            for (std::int64_t k = 0; k <= fm.n_free; ++k) {
                std::vector<int> spins;
                spins.insert(spins.end(), fm.n_plus, 1);
                spins.insert(spins.end(), fm.n_minus, -1);
                spins.insert(spins.end(), k, 1);
                spins.insert(spins.end(), fm.n_free - k, -1);
                CHECK(hamiltonian_per_site(fm, h, k) ==
                      Approx(ccw_test::pairwise_energy_per_site(spins, h)).margin(1e-12));
            }
        }
    }
}

TEST_CASE("magnetization map") {
    CHECK(magnetization_from_z(ModelParams{1.0, 0.3, 0.3, 0.0}, 0.0) == 0.0);
    CHECK(magnetization_from_z(ModelParams{1.0, 0.6, 0.2, 0.0}, -1.0) == Approx(0.2));
    ccw_test::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        CHECK(magnetization_from_z(ModelParams{1.0, 0.0, 0.0, 0.0}, z) == z);
    }

    // monotone in z and onto [s-r-t, s-r+t]
    const ModelParams p{1.0, 0.2, 0.1, 0.0};
    double prev = magnetization_from_z(p, -1.0);
    CHECK(prev == Approx(0.1 - 0.7));
    for (int i = 1; i <= 100; ++i) {
        const double m = magnetization_from_z(p, -1.0 + 2.0 * i / 100.0);
        CHECK(m > prev);
        prev = m;
    }
    CHECK(prev == Approx(0.1 + 0.7));
}
