#include <doctest.h>

#include <cmath>

#include "aip/circle.hpp"
#include "aip/errors.hpp"
#include "aip/parametrization.hpp"
#include "support.hpp"

using namespace aip;
using aip::testing::Rng;

namespace {

SchurParameter random_constant(Rng& rng, const CoefficientMatrix& cm, double norm)
{
    return SchurParameter::constant(rng.contraction(cm.dim_n2, cm.dim_n1, norm));
}

} // namespace

TEST_CASE("every parameter interpolates the np data")
{
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const NpData d = testing::random_np(rng, 1 + trial % 7);
        const AipProblem p = build_np(d);
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        for (int k = 0; k < 5; ++k) {
            const SchurParameter om = random_constant(rng, cm, rng.uniform(0.0, 0.999));
            for (std::size_t j = 0; j < d.nodes.size(); ++j)
                CHECK(std::abs(lft_solution(cm, om, d.nodes[j])(0, 0) - d.values[j]) <= 1e-9);
        }
    }
}

TEST_CASE("single node at the origin: w = z·ω")
{
    const CoefficientMatrix cm = build_coefficient_matrix(build_np({{0.0}, {0.0}}));
    const SchurParameter om = SchurParameter::constant(CMatrix::Constant(1, 1, Complex(0.3, -0.4)));
    for (Complex z : {Complex(0.5), Complex(-0.2, 0.7)})
        CHECK(std::abs(lft_solution(cm, om, z)(0, 0) - z * Complex(0.3, -0.4)) <= 1e-14);
}

TEST_CASE("degenerate np data has the unique solution w(z) = z")
{
    const CoefficientMatrix cm = build_coefficient_matrix(build_np({{0.0, 0.5}, {0.0, 0.5}}));
    const SchurParameter om = SchurParameter::zero(0, 0);
    CHECK(std::abs(lft_solution(cm, om, Complex(0.1, 0.2))(0, 0) - Complex(0.1, 0.2)) <= 1e-14);
}

TEST_CASE("blaschke parameter is inner and so is the solution")
{
    const SchurParameter b = SchurParameter::blaschke_factor(Complex(0.3, 0.2), Complex(0.0, 1.0));
    CHECK(std::abs(b(Complex(0.3, 0.2))(0, 0)) <= 1e-15);
    Rng rng(52);
    const CoefficientMatrix cm = build_coefficient_matrix(build_np(testing::random_np(rng, 3)));
    for (Complex t : circle_nodes(64)) {
        CHECK(std::abs(std::abs(b(t)(0, 0)) - 1.0) <= 1e-13);
        CHECK(std::abs(std::abs(lft_solution(cm, b, t)(0, 0)) - 1.0) <= 1e-9);
    }
}

TEST_CASE("verify_solution on np and sarason instances")
{
    Rng rng(53);
    for (int trial = 0; trial < 6; ++trial) {
        const NpData d = testing::random_np(rng, 1 + trial % 4);
        const AipProblem np = build_np(d);
        const AipProblem sp = build_sarason(sarason_from_np(d));
        for (const AipProblem* p : {&np, &sp}) {
            const CoefficientMatrix cm = build_coefficient_matrix(*p);
            const SolutionReport r = verify_solution(*p, cm, random_constant(rng, cm, 0.9));
            CHECK(r.interp_residual <= 1e-8);
            CHECK(r.contractivity_margin <= 1e-9);
            CHECK(r.norm_equality_rel_gap <= 5e-3);
            CHECK(r.hardy_membership_residual <= 1e-10);
            CHECK(r.data_identity_residual <= 1e-8);
            CHECK(r.norm_squared.size() == static_cast<std::size_t>(p->dim_x()));
            CHECK(r.metadata.quad_n == 4096);
        }
    }
}

TEST_CASE("sarason solutions reproduce W* on the kernels")
{
    Rng rng(54);
    const NpData d = testing::random_np(rng, 3);
    const AipProblem p = build_sarason(sarason_from_np(d));
    const CoefficientMatrix cm = build_coefficient_matrix(p);
    const SchurParameter om = SchurParameter::blaschke_factor(Complex(-0.2, 0.1), 1.0);
    const SolutionReport r = verify_solution(p, cm, om);
    CHECK(r.interp_residual <= 1e-8);
    // the same solution interpolates the np values pointwise
    for (std::size_t j = 0; j < d.nodes.size(); ++j)
        CHECK(std::abs(lft_solution(cm, om, d.nodes[j])(0, 0) - d.values[j]) <= 1e-9);
}

TEST_CASE("boundary problem: strict parameters keep the norm, the critical one loses it")
{
    const AipProblem p = build_boundary({1.0, 1.0, 1.0});
    const CoefficientMatrix cm = build_coefficient_matrix(p);
    const SolutionReport strict = verify_solution(p, cm, SchurParameter::constant(CMatrix::Constant(1, 1, 0.3)));
    CHECK(strict.interp_residual <= 1e-6);
    CHECK(strict.norm_equality_gap <= 5e-3);

    // conj(s(1)) = 1 gives w ≡ 1 and F = 0, while D = 1
    const SchurParameter critical = SchurParameter::constant(CMatrix::Constant(1, 1, 1.0));
    const SolutionReport r = verify_solution(p, cm, critical);
    CHECK(std::abs(r.w_at_zero - 1.0) <= 1e-14);
    CHECK(r.norm_squared[0] <= 1e-20);
    CHECK(r.norm_equality_gap == doctest::Approx(1.0));
}

TEST_CASE("phi and psi follow their defining formulas")
{
    Rng rng(55);
    const CoefficientMatrix cm = build_coefficient_matrix(build_np(testing::random_np(rng, 2)));
    const SchurParameter om = random_constant(rng, cm, 0.7);
    const Complex z(0.2, -0.3);
    const PhiPsi pp = phi_psi(cm, om, z);
    const SBlocks s = eval_S_blocks(cm, z);
    const CMatrix o = om(z);
    CHECK(((CMatrix::Identity(1, 1) - s.s * o) * pp.phi - s.s1).norm() <= 1e-14);
    CHECK((pp.psi * (CMatrix::Identity(1, 1) - o * s.s) - s.s2).norm() <= 1e-14);
    CHECK((lft_solution(cm, om, z) - (s.s0 + pp.psi * o * s.s1)).norm() <= 1e-14);
}

TEST_CASE("range norm uses the pseudo-inverse of the weight")
{
    const CMatrix w = CMatrix::Constant(1, 1, 1.0);
    const CMatrix wp = pinv(range_weight(w));
    CVector f(2);
    f << 1.0, 1.0;
    CHECK(range_norm_sq(wp, f) == doctest::Approx(1.0));
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(SchurParameter::constant(CMatrix::Constant(1, 1, 1.01)), AipError);
    CHECK_THROWS_AS(SchurParameter::blaschke_factor(1.0, 1.0), AipError);
    const AipProblem p = build_np({{0.0, 0.5}, {0.1, 0.2}});
    const CoefficientMatrix cm = build_coefficient_matrix(p);
    try {
        (void)lft_solution(cm, SchurParameter::zero(2, 2), 0.1);
        FAIL("expected DimensionMismatch");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
    VerifyOptions vo;
    vo.quad_n = 128;
    try {
        (void)verify_solution(p, cm, SchurParameter::zero(1, 1), vo);
        FAIL("expected PreconditionViolation");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::PreconditionViolation);
    }
}
