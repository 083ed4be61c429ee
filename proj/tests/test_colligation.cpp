#include <doctest.h>

#include <cmath>

#include "aip/circle.hpp"
#include "aip/colligation.hpp"
#include "aip/errors.hpp"
#include "support.hpp"

using namespace aip;
using aip::testing::Rng;

namespace {

std::vector<AipProblem> suite()
{
    Rng rng(41);
    std::vector<AipProblem> out;
    for (int k = 0; k < 6; ++k)
        out.push_back(build_np(testing::random_np(rng, 1 + k)));
    for (int k = 0; k < 4; ++k)
        out.push_back(build_sarason(sarason_from_np(testing::random_np(rng, 1 + k))));
    for (int k = 0; k < 4; ++k)
        out.push_back(build_boundary(testing::random_boundary(rng)));
    out.push_back(build_np({{0.0, 0.5}, {0.0, 0.5}}));
    out.push_back(build_boundary({1.0, 1.0, 0.0}));
    return out;
}

} // namespace

TEST_CASE("universal colligation is unitary, extends V and has s(0) = 0")
{
    for (const AipProblem& p : suite()) {
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        const CMatrix full = cm.colligation.full();
        CHECK(unitarity_defect(full) <= 1e-10);

        const Index h = cm.dim_h0();
        const DataIsometry& iso = cm.isometry;
        const CMatrix restricted = full.topLeftCorner(h + cm.dim_e2, h + cm.dim_e1) * iso.d_v.basis;
        CHECK((restricted - iso.v * iso.d_v.basis).norm() <= 1e-9);
        CHECK((full.bottomLeftCorner(cm.dim_n1, h + cm.dim_e1) * iso.d_v.basis).norm() <= 1e-9);
        CHECK((iso.v * iso.generators_in - iso.generators_out).norm() <= 1e-9);

        CHECK(cm.split(cm.colligation.d()).s.norm() <= 1e-10);
        CHECK(cm.dim_n1 == h + cm.dim_e1 - iso.d_v.dim());
        CHECK(cm.dim_n2 == h + cm.dim_e2 - iso.d_v.dim());
    }
}

TEST_CASE("characteristic function matches its power series")
{
    for (const AipProblem& p : suite()) {
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        const UnitaryColligation& c = cm.colligation;
        for (Complex z : {Complex(0.3, 0.1), Complex(-0.2, 0.25)}) {
            const CMatrix series = testing::char_fn_series(c.a(), c.b(), c.c(), c.d(), z);
            CHECK((eval_S(cm, z) - series).norm() <= 1e-12);
        }
    }
}

TEST_CASE("coefficient matrix is contractive on the disk")
{
    for (const AipProblem& p : suite()) {
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        for (Complex z : disk_points(200, 0.99))
            CHECK(spectral_norm(eval_S(cm, z)) <= 1.0 + 1e-9);
    }
}

TEST_CASE("single node at the origin gives the classical Schur coefficient matrix")
{
    const CoefficientMatrix cm = build_coefficient_matrix(build_np({{0.0}, {0.0}}));
    REQUIRE(cm.dim_h0() == 1);
    REQUIRE(cm.dim_n1 == 1);
    REQUIRE(cm.dim_n2 == 1);
    for (Complex z : {Complex(0.4, 0.0), Complex(-0.1, 0.6)}) {
        CMatrix expected(2, 2);
        expected << 0.0, 1.0, z, 0.0;
        CHECK((eval_S(cm, z) - expected).norm() <= 1e-14);
    }
}

TEST_CASE("boundary problem with t0 = w0 = 1 and bound 1 in closed form")
{
    const CoefficientMatrix cm = build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0}));
    const double r2 = std::sqrt(2.0);
    for (Complex z : {Complex(0.0), Complex(0.3, -0.2), Complex(-0.7, 0.1)}) {
        const SBlocks b = eval_S_blocks(cm, z);
        CHECK(std::abs(b.s0(0, 0) - 1.0 / (2.0 - z)) <= 1e-14);
        CHECK(std::abs(b.s(0, 0) - z / (2.0 - z)) <= 1e-14);
        CHECK(std::abs(b.s1(0, 0) - r2 * (z - 1.0) / (2.0 - z)) <= 1e-14);
        CHECK(std::abs(b.s2(0, 0) - r2 * (z - 1.0) / (2.0 - z)) <= 1e-14);
    }
}

TEST_CASE("degenerate data leaves no free parameter")
{
    const CoefficientMatrix np = build_coefficient_matrix(build_np({{0.0, 0.5}, {0.0, 0.5}}));
    CHECK(np.dim_n1 == 0);
    CHECK(np.dim_n2 == 0);
    CHECK(std::abs(eval_S(np, 0.3)(0, 0) - 0.3) <= 1e-14);

    const CoefficientMatrix bd = build_coefficient_matrix(build_boundary({1.0, 1.0, 0.0}));
    CHECK(bd.dim_h0() == 0);
    CHECK(bd.dim_n1 == 0);
    CHECK(std::abs(eval_S(bd, Complex(0.2, 0.5))(0, 0) - 1.0) <= 1e-15);
}

TEST_CASE("Fourier representation satisfies the data identity")
{
    // t·G₀[T₂x] − G₀[T₁x] = [[I, S], [S*, I]]·(−M₂x, 0, M₁x, 0) on the circle
    Rng rng(42);
    for (int trial = 0; trial < 4; ++trial) {
        const AipProblem p = build_np(testing::random_np(rng, 2 + trial));
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        const Index n = p.dim_x();
        const Index top = cm.dim_e2 + cm.dim_n1, bot = cm.dim_e1 + cm.dim_n2;
        for (Complex t : circle_nodes(32)) {
            const FourierPair g2 = eval_fourier_G0(cm, cm.gram.embed * p.T2, t);
            const FourierPair g1 = eval_fourier_G0(cm, cm.gram.embed * p.T1, t);
            CMatrix lhs(top + bot, n);
            lhs << t * g2.plus - g1.plus, t * g2.minus - g1.minus;
            CMatrix data = CMatrix::Zero(top + bot, n);
            data.topRows(cm.dim_e2) = -p.M2;
            data.middleRows(top, cm.dim_e1) = p.M1;
            const CMatrix s = eval_S(cm, t);
            CMatrix weight(top + bot, top + bot);
            weight << CMatrix::Identity(top, top), s, s.adjoint(), CMatrix::Identity(bot, bot);
            CHECK((lhs - weight * data).norm() <= 1e-10);
        }
    }
}

TEST_CASE("colligation errors")
{
    const CMatrix one = CMatrix::Identity(1, 1);
    const UnitaryColligation trivial = UnitaryColligation::from_blocks(one, CMatrix::Zero(1, 1),
                                                                       CMatrix::Zero(1, 1), one);
    try {
        (void)eval_char_fn(trivial, 1.0);
        FAIL("expected SingularResolvent");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::SingularResolvent);
    }
    CHECK_THROWS_AS(UnitaryColligation::from_blocks(one, one, one, one), AipError);

    // Inconsistent data: the generator images cannot be isometric.
    AipProblem bad;
    bad.D = one;
    bad.T1 = 0.5 * one;
    bad.T2 = one;
    bad.M1 = one;
    bad.M2 = CMatrix::Zero(1, 1);
    try {
        (void)build_coefficient_matrix(bad);
        FAIL("expected IllDefined");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::IllDefined);
    }
}
