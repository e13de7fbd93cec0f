#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kcontour/jet.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace kcontour;

namespace {

// F(r, t) = r^2 cos(2t), the workhorse example throughout the tests.
Jet2 r2cos2t(const Jet2& r, const Jet2& t) { return r * r * cos(2.0 * t); }

bool jet_close(const Jet2& a, const Jet2& b, double tol) {
    return std::abs(a.v - b.v) <= tol && std::abs(a.du - b.du) <= tol &&
           std::abs(a.dv - b.dv) <= tol && std::abs(a.duu - b.duu) <= tol &&
           std::abs(a.duv - b.duv) <= tol && std::abs(a.dvv - b.dvv) <= tol;
}

} // namespace

TEST_CASE("seed jets carry unit derivative seeds") {
    const Jet2 c = Jet2::constant(3.5);
    CHECK(c.v == 3.5);
    CHECK(c.du == 0.0);
    CHECK(c.dv == 0.0);

    const Jet2 u = Jet2::var_u(2.0);
    CHECK(u.v == 2.0);
    CHECK(u.du == 1.0);
    CHECK(u.dv == 0.0);
    CHECK(u.duu == 0.0);

    const Jet2 v = Jet2::var_v(-1.0);
    CHECK(v.v == -1.0);
    CHECK(v.du == 0.0);
    CHECK(v.dv == 1.0);
}

TEST_CASE("r^2 cos(2t) at (1, 0) has the known jet") {
    // F = r^2 cos 2t: F_r = 2r cos 2t, F_t = -2r^2 sin 2t,
    // F_rr = 2 cos 2t, F_rt = -4r sin 2t, F_tt = -4 r^2 cos 2t.
    const Jet2 j = eval_jet2(r2cos2t, 1.0, 0.0);
    CHECK(j.v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(j.du == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(j.dv == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(j.duu == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(j.duv == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(j.dvv == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("jet evaluation matches central differences on smooth fields") {
    const ScalarField fields[] = {
        r2cos2t,
        [](const Jet2& x, const Jet2& y) { return exp(x) * cos(2.0 * y); },
        [](const Jet2& u, const Jet2& v) { return sqrt(u * u + v * v + 1.0); },
        [](const Jet2& u, const Jet2& v) { return atan2(v, u + 3.0); },
        [](const Jet2& u, const Jet2& v) { return log(u + 2.0) * sin(v) + pow(u + 1.5, 2.5); },
    };
    const double pts[][2] = {{1.0, 0.3}, {0.7, -0.4}, {0.5, 1.1}};
    for (const auto& f : fields) {
        for (const auto& p : pts) {
            const Jet2 exact = eval_jet2(f, p[0], p[1]);
            const Jet2 fd = finite_difference_jet2(f, p[0], p[1]);
            CHECK(std::abs(exact.du - fd.du) <= 1e-6);
            CHECK(std::abs(exact.dv - fd.dv) <= 1e-6);
            CHECK(std::abs(exact.duu - fd.duu) <= 1e-5);
            CHECK(std::abs(exact.duv - fd.duv) <= 1e-5);
            CHECK(std::abs(exact.dvv - fd.dvv) <= 1e-5);
        }
    }
}

TEST_CASE("arithmetic satisfies linearity and the product rule") {
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double u0 = unif(rng), v0 = unif(rng), s = unif(rng);
        const ScalarField f = [](const Jet2& u, const Jet2& v) {
            return sin(u) * cos(v) + u * u * v;
        };
        const ScalarField g = [](const Jet2& u, const Jet2& v) { return exp(0.3 * u - 0.2 * v); };
        const Jet2 a = eval_jet2(f, u0, v0);
        const Jet2 b = eval_jet2(g, u0, v0);

        // (f + s g) evaluates to a + s b component-wise.
        const Jet2 lin = eval_jet2(
            [&](const Jet2& u, const Jet2& v) { return f(u, v) + s * g(u, v); }, u0, v0);
        CHECK(jet_close(lin, a + s * b, 1e-12));

        // Product rule: (fg)' entries match the jet product.
        const Jet2 prod = eval_jet2(
            [&](const Jet2& u, const Jet2& v) { return f(u, v) * g(u, v); }, u0, v0);
        CHECK(jet_close(prod, a * b, 1e-12));
    }
}

TEST_CASE("quotient and composition are consistent") {
    const ScalarField f = [](const Jet2& u, const Jet2& v) {
        return (u * u + 1.0) / (v * v + 2.0);
    };
    const Jet2 exact = eval_jet2(f, 0.8, -0.6);
    const Jet2 fd = finite_difference_jet2(f, 0.8, -0.6);
    CHECK(std::abs(exact.du - fd.du) <= 1e-6);
    CHECK(std::abs(exact.dvv - fd.dvv) <= 1e-5);

    // exp(log x) == x for positive arguments, including derivatives.
    const Jet2 roundtrip = eval_jet2(
        [](const Jet2& u, const Jet2& v) { return exp(log(u)) + 0.0 * v; }, 1.7, 0.0);
    CHECK(roundtrip.v == doctest::Approx(1.7).epsilon(1e-14));
    CHECK(roundtrip.du == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(roundtrip.duu) <= 1e-13);
}

TEST_CASE("pow handles integer exponents on non-positive bases") {
    const Jet2 cube = pow(Jet2::var_u(-2.0), 3.0);
    CHECK(cube.v == doctest::Approx(-8.0));
    CHECK(cube.du == doctest::Approx(12.0));
    CHECK(cube.duu == doctest::Approx(-12.0));

    const Jet2 sq0 = pow(Jet2::var_u(0.0), 2.0);
    CHECK(sq0.v == 0.0);
    CHECK(sq0.du == 0.0);
    CHECK(sq0.duu == doctest::Approx(2.0));

    CHECK_THROWS_AS(pow(Jet2::var_u(-1.0), 0.5), DomainError);
    CHECK_THROWS_AS(pow(Jet2::var_u(0.0), -1.0), DomainError);
}

TEST_CASE("domain errors name the offending primitive") {
    CHECK_THROWS_WITH_AS(log(Jet2::constant(0.0)), "log: non-positive argument", DomainError);
    CHECK_THROWS_WITH_AS(log(Jet2::constant(-1.0)), "log: non-positive argument", DomainError);
    CHECK_THROWS_WITH_AS(sqrt(Jet2::constant(-4.0)), "sqrt: non-positive argument", DomainError);
    CHECK_THROWS_WITH_AS(Jet2::constant(1.0) / Jet2::constant(0.0),
                         "divide: zero denominator", DomainError);
    CHECK_THROWS_WITH_AS(atan2(Jet2::constant(0.0), Jet2::constant(0.0)),
                         "atan2: both arguments zero", DomainError);
}

TEST_CASE("atan2 covers all quadrants with correct derivatives") {
    const double pi = std::numbers::pi;
    const double cases[][3] = {
        {1.0, 1.0, pi / 4.0},  {1.0, -1.0, 3.0 * pi / 4.0},
        {-1.0, -1.0, -3.0 * pi / 4.0}, {-1.0, 1.0, -pi / 4.0},
    };
    for (const auto& c : cases) {
        const Jet2 a = atan2(Jet2::var_v(c[0]), Jet2::var_u(c[1]));
        CHECK(a.v == doctest::Approx(c[2]).epsilon(1e-14));
        // d/dy atan2(y, x) = x / (x^2 + y^2), d/dx = -y / (x^2 + y^2)
        const double q = c[0] * c[0] + c[1] * c[1];
        CHECK(a.dv == doctest::Approx(c[1] / q).epsilon(1e-14));
        CHECK(a.du == doctest::Approx(-c[0] / q).epsilon(1e-14));
    }
}

TEST_CASE("finite difference oracle rejects non-positive steps") {
    CHECK_THROWS_AS(finite_difference_jet2(r2cos2t, 1.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(finite_difference_jet2(r2cos2t, 1.0, 0.0, -1e-4), DomainError);
}
