#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "relax/fft.hpp"
#include "relax/ops.hpp"
#include "relax/rng.hpp"
#include "relax/snapshot_io.hpp"

using namespace relax;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_field(const Grid& g, std::uint64_t seed, double amp = 1.0) {
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = amp * keyed_symmetric(seed, i);
    return u;
}

// smooth band-limited random field (for derivative comparisons)
SpectralField smooth_random(const Grid& g, std::uint64_t seed) {
    SpectralField f = forward_transform(g, random_field(g, seed));
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double k = std::sqrt(g.xi_norm2(i));
        f.c[i] *= std::exp(-k * k);
    }
    hermitian_symmetrize(f);
    return f;
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS(Grid(0, 16, 1.0));
    CHECK_THROWS(Grid(2, 12, 1.0));  // not a power of two
    CHECK_THROWS(Grid(2, 4, 1.0));   // too small
    CHECK_THROWS(Grid(2, 16, -1.0));
    CHECK_NOTHROW(Grid(3, 8, 2.0));
    Grid g(2, 16, 4.0 * kPi);
    CHECK(g.k_fund() == doctest::Approx(0.5));
    CHECK(g.size() == 256);
}

TEST_CASE("constant field transforms to pure zero mode") {
    Grid g(2, 16, 2.0 * kPi);
    std::vector<double> u(g.size(), 1.0);
    SpectralField f = forward_transform(g, u);
    CHECK(std::abs(f.c[0] - cplx(1.0, 0.0)) < 1e-14);
    double rest = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) rest = std::max(rest, std::abs(f.c[i]));
    CHECK(rest < 1e-14);
}

TEST_CASE("cosine mode splits into two half-amplitude coefficients") {
    Grid g(1, 32, 2.0 * kPi);
    std::vector<double> u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = std::cos(2.0 * kPi * i * g.dx() / g.L);
    SpectralField f = forward_transform(g, u);
    CHECK(std::abs(f.c[1] - cplx(0.5, 0.0)) < 1e-13);
    CHECK(std::abs(f.c[g.size() - 1] - cplx(0.5, 0.0)) < 1e-13);
    int nonzero = 0;
    for (const auto& z : f.c)
        if (std::abs(z) > 1e-13) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("round trip physical-spectral-physical") {
    for (int d : {1, 2, 3}) {
        Grid g(d, d == 3 ? 8 : 32, 5.0);
        auto u = random_field(g, 11 + d);
        auto back = inverse_transform(forward_transform(g, u));
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            err = std::max(err, std::abs(back[i] - u[i]));
            scale = std::max(scale, std::abs(u[i]));
        }
        CHECK(err / scale < 1e-12);
    }
}

TEST_CASE("transform input size must match grid") {
    Grid g(2, 16, 1.0);
    std::vector<double> bad(100);
    CHECK_THROWS(forward_transform(g, bad));
}

TEST_CASE("Parseval under the chosen weights") {
    Grid g(2, 32, 3.0);
    auto u = random_field(g, 21);
    SpectralField f = forward_transform(g, u);
    double phys2 = 0.0;
    for (double x : u) phys2 += x * x;
    const double phys_norm = std::sqrt(phys2 * std::pow(g.L / g.n, g.d));
    CHECK(f.l2_norm() == doctest::Approx(phys_norm).epsilon(1e-12));
}

TEST_CASE("real input yields hermitian coefficients") {
    Grid g(2, 16, 2.0);
    SpectralField f = forward_transform(g, random_field(g, 31));
    CHECK(hermitian_defect(f) < 1e-13);
}

TEST_CASE("gradient of a constant vanishes") {
    Grid g(2, 16, 2.0 * kPi);
    SpectralField f = forward_transform(g, std::vector<double>(g.size(), 3.5));
    auto grad = gradient(f);
    for (const auto& comp : grad) CHECK(comp.l2_norm() < 1e-13);
}

TEST_CASE("gradient of sin is the scaled cosine") {
    Grid g(1, 64, 4.0 * kPi);
    std::vector<double> u(g.size()), expect(g.size());
    const double k = 2.0 * kPi / g.L;
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = std::sin(k * i * g.dx());
        expect[i] = k * std::cos(k * i * g.dx());
    }
    auto gx = inverse_transform(gradient(forward_transform(g, u))[0]);
    for (std::size_t i = 0; i < u.size(); ++i)
        CHECK(gx[i] == doctest::Approx(expect[i]).epsilon(1e-11));
}

TEST_CASE("gradient matches centered finite differences on smooth data") {
    Grid g(2, 64, 2.0 * kPi);
    SpectralField f = smooth_random(g, 41);
    auto u = inverse_transform(f);
    auto gx = inverse_transform(gradient(f)[0]);
    // axis 0 is the slow index
    const int n = g.n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double fd = (u[((i + 1) % n) * n + j] - u[((i - 1 + n) % n) * n + j]) /
                              (2.0 * g.dx());
            worst = std::max(worst, std::abs(fd - gx[i * n + j]));
        }
    // second-order FD against the spectral derivative on exp(-k^2) data
    CHECK(worst < 5e-3);
}

TEST_CASE("poisson inversion of a single mode") {
    Grid g(2, 32, 2.0 * kPi);
    SpectralField u(g);
    // mode k=(2,1), xi=(2,1)
    const std::size_t idx = 2 * static_cast<std::size_t>(g.n) + 1;
    u.c[idx] = cplx(0.7, -0.2);
    auto gv = poisson_inverse_gradient(u);
    const double k2 = 5.0;
    CHECK(std::abs(gv[0].c[idx] - cplx(0.0, 2.0 / k2) * u.c[idx]) < 1e-14);
    CHECK(std::abs(gv[1].c[idx] - cplx(0.0, 1.0 / k2) * u.c[idx]) < 1e-14);
}

TEST_CASE("poisson inversion rejects nonzero mean") {
    Grid g(2, 16, 2.0 * kPi);
    SpectralField u(g);
    u.c[0] = cplx(1e-6, 0.0);
    CHECK_THROWS_AS((void)poisson_inverse_gradient(u), std::domain_error);
    u.c[0] = cplx(1e-12, 0.0); // below tolerance: fine
    CHECK_NOTHROW((void)poisson_inverse_gradient(u));
}

TEST_CASE("poisson inversion satisfies -Lap V = u spectrally") {
    Grid g(2, 32, 5.0);
    SpectralField u = forward_transform(g, random_field(g, 51));
    u.c[0] = cplx(0.0, 0.0);
    auto gv = poisson_inverse_gradient(u);
    SpectralField div_gv = divergence(gv); // div grad V = Lap V = -u
    SpectralField resid = div_gv + u;
    resid.c[0] = cplx(0.0, 0.0);
    CHECK(resid.l2_norm() / u.l2_norm() < 1e-12);
}

TEST_CASE("helmholtz: gradient fields are purely irrotational") {
    Grid g(2, 32, 2.0 * kPi);
    SpectralField psi = smooth_random(g, 61);
    psi.c[0] = cplx(0.0, 0.0);
    auto v = gradient(psi);
    auto [P, Q] = helmholtz_project(v);
    CHECK(l2_norm(P) < 1e-12 * l2_norm(v));
    SpectralField d0 = Q[0] - v[0], d1 = Q[1] - v[1];
    CHECK(d0.l2_norm() + d1.l2_norm() < 1e-12 * l2_norm(v));
}

TEST_CASE("helmholtz: rotated gradient is divergence free") {
    Grid g(2, 32, 2.0 * kPi);
    SpectralField psi = smooth_random(g, 71);
    auto gp = gradient(psi);
    VectorField v = {SpectralField(g), SpectralField(g)};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        v[0].c[i] = -gp[1].c[i];
        v[1].c[i] = gp[0].c[i];
    }
    auto [P, Q] = helmholtz_project(v);
    CHECK(l2_norm(Q) < 1e-12 * l2_norm(v));
    CHECK(divergence(P).l2_norm() < 1e-12 * l2_norm(v));
}

TEST_CASE("helmholtz: orthogonality, reconstruction, idempotence") {
    Grid g(2, 32, 3.0);
    VectorField v = {forward_transform(g, random_field(g, 81)),
                     forward_transform(g, random_field(g, 82))};
    auto [P, Q] = helmholtz_project(v);
    CHECK(std::abs(inner_l2(P, Q)) < 1e-10 * l2_norm(v) * l2_norm(v));
    for (int ax = 0; ax < 2; ++ax) {
        SpectralField r = P[ax] + Q[ax] - v[ax];
        CHECK(r.l2_norm() < 1e-12 * l2_norm(v));
    }
    auto [PP, PQ] = helmholtz_project(P);
    CHECK(l2_norm(PQ) < 1e-12 * l2_norm(v));
    SpectralField dp = PP[0] - P[0];
    CHECK(dp.l2_norm() < 1e-12 * l2_norm(v));
    auto [QP, QQ] = helmholtz_project(Q);
    CHECK(l2_norm(QP) < 1e-12 * l2_norm(v));
    // zero mode sits in P
    VectorField c = {SpectralField(g), SpectralField(g)};
    c[0].c[0] = cplx(2.0, 0.0);
    auto [Pc, Qc] = helmholtz_project(c);
    CHECK(std::abs(Pc[0].c[0] - cplx(2.0, 0.0)) < 1e-15);
    CHECK(l2_norm(Qc) < 1e-15);
}

TEST_CASE("operators are linear and commute as Fourier multipliers") {
    Grid g(2, 32, 2.0);
    SpectralField a = forward_transform(g, random_field(g, 91));
    SpectralField b = forward_transform(g, random_field(g, 92));
    a.c[0] = b.c[0] = cplx(0.0, 0.0);
    SpectralField sum = a + b;
    auto ga = gradient(a), gb = gradient(b), gs = gradient(sum);
    for (int ax = 0; ax < 2; ++ax) {
        SpectralField r = gs[ax] - ga[ax] - gb[ax];
        CHECK(r.l2_norm() < 1e-12);
    }
    // gradient o poisson_inverse commutes with any diagonal multiplier; check
    // against laplacian as the multiplier
    auto pg = poisson_inverse_gradient(laplacian(a));
    auto gp = gradient(a);
    for (int ax = 0; ax < 2; ++ax) {
        SpectralField r = pg[ax] + gp[ax]; // grad(-Lap)^-1 Lap = -grad
        CHECK(r.l2_norm() < 1e-12 * a.l2_norm());
    }
}

TEST_CASE("snapshot round trip in both representations") {
    Grid g(2, 16, 2.5);
    SpectralField f = forward_transform(g, random_field(g, 101));
    const char* path = "snap_test.rlxf";
    for (bool physical : {false, true}) {
        save_snapshot(path, f, 1.25, physical);
        Snapshot s = load_snapshot(path);
        CHECK(s.time == doctest::Approx(1.25));
        CHECK(s.field.grid == g);
        SpectralField diff = s.field - f;
        CHECK(diff.l2_norm() < 1e-12 * f.l2_norm());
    }
    std::remove(path);
    CHECK_THROWS(load_snapshot("does_not_exist.rlxf"));
}

TEST_CASE("dealias removes only the top third") {
    Grid g(1, 32, 2.0 * kPi);
    SpectralField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f.c[i] = cplx(1.0, 0.0);
    dealias_23(f);
    // n=32: keep |k| <= 10
    CHECK(std::abs(f.c[10]) == doctest::Approx(1.0));
    CHECK(std::abs(f.c[11]) == doctest::Approx(0.0));
    CHECK(std::abs(f.c[32 - 10]) == doctest::Approx(1.0));
    CHECK(std::abs(f.c[32 - 11]) == doctest::Approx(0.0));
}
