#include <doctest.h>

#include <cmath>

#include "cyclicity/errors.hpp"
#include "cyclicity/gentrig.hpp"

using namespace cyc;

TEST_CASE("gamma function spot values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(0.25) == doctest::Approx(3.6256099082219083).epsilon(1e-12));
}

TEST_CASE("periods: classical value and Gamma-formula cross-check") {
    CHECK(period_tn(1) == doctest::Approx(2 * M_PI).epsilon(1e-14));
    // 2*sqrt(pi/2)*Gamma(1/4)/Gamma(3/4)
    double t2 = 2 * std::sqrt(M_PI / 2) * gamma_fn(0.25) / gamma_fn(0.75);
    CHECK(period_tn(2) == doctest::Approx(t2).epsilon(1e-14));
    CHECK(period_tn(2) == doctest::Approx(7.416298).epsilon(1e-6));
    for (int n = 1; n <= 5; ++n) {
        const GenTrigTable& tab = GenTrigTable::get(n);
        CHECK(std::fabs(tab.return_time() - tab.period()) <= 1e-9);
    }
    CHECK_THROWS_AS(gen_trig(0, 1.0), DomainError);
}

TEST_CASE("pinned values of Cs and Sn") {
    auto [c0, s0] = gen_trig(3, 0.0);
    CHECK(c0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s0 == doctest::Approx(0.0).epsilon(1e-12));

    auto [c1, s1] = gen_trig(1, M_PI / 2);
    CHECK(c1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s1 == doctest::Approx(1.0).epsilon(1e-12));

    auto [ch, sh] = gen_trig(2, period_tn(2) / 2);
    CHECK(ch == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(sh == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("fundamental relation on a tight grid") {
    for (int n = 1; n <= 5; ++n) {
        const GenTrigTable& tab = GenTrigTable::get(n);
        for (int i = 0; i < 1000; ++i) {
            double th = tab.period() * i / 1000.0;
            auto [cs, sn] = tab.eval(th);
            CHECK(std::fabs(std::pow(cs, 2 * n) + n * sn * sn - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("queries reduce modulo the stored period") {
    const GenTrigTable& tab = GenTrigTable::get(3);
    double T = tab.period();
    for (double th : {0.3, 1.7, 4.0}) {
        auto [c1, s1] = tab.eval(th);
        auto [c2, s2] = tab.eval(th + 5 * T);
        auto [c3, s3] = tab.eval(th - 3 * T);
        CHECK(c1 == doctest::Approx(c2).epsilon(1e-12));
        CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));
        CHECK(c1 == doctest::Approx(c3).epsilon(1e-12));
        CHECK(s1 == doctest::Approx(s3).epsilon(1e-12));
    }
}
