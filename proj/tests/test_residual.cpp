#include <doctest.h>

#include <cmath>

#include "aip/circle.hpp"
#include "aip/errors.hpp"
#include "aip/residual.hpp"
#include "support.hpp"

using namespace aip;
using aip::testing::Rng;

namespace {

double min_eigenvalue(const CMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SchurParameter scalar_constant(Complex c)
{
    return SchurParameter::constant(CMatrix::Constant(1, 1, c));
}

} // namespace

TEST_CASE("a_circ at the origin and for the zero parameter")
{
    Rng rng(71);
    const CoefficientMatrix cm = build_coefficient_matrix(build_np(testing::random_np(rng, 3)));
    const Complex c(0.3, 0.5);
    CMatrix expected(2, 2);
    expected << 0.5, c, 0.0, 0.5;
    CHECK((eval_a_circ(cm, scalar_constant(c), 0.0) - expected).norm() <= 1e-14);

    const Complex z(0.2, -0.6);
    CMatrix zero_expected(2, 2);
    zero_expected << 0.5, 0.0, eval_S_blocks(cm, z).s(0, 0), 0.5;
    CHECK((eval_a_circ(cm, SchurParameter::zero(1, 1), z) - zero_expected).norm() <= 1e-14);
}

TEST_CASE("a_circ has a non-negative real part")
{
    Rng rng(72);
    const CoefficientMatrix cm = build_coefficient_matrix(build_np(testing::random_np(rng, 4)));
    const SchurParameter om = SchurParameter::blaschke_factor(Complex(0.1, 0.4), 1.0);
    for (Complex z : disk_points(100, 0.95)) {
        const CMatrix a = eval_a_circ(cm, om, z);
        CHECK(min_eigenvalue(a + a.adjoint()) >= -1e-9);
    }
}

TEST_CASE("defect vanishes for np and sarason data")
{
    const NpData d{{0.0, 0.5}, {0.2, 0.5}};
    const Complex z(0.3, 0.2);
    for (const AipProblem& p : {build_np(d), build_sarason(sarason_from_np(d))}) {
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        CHECK(eval_defect(cm, scalar_constant(0.5), z, 8192).norm() <= 2e-3);
        CHECK(eval_defect(cm, SchurParameter::blaschke_factor(-0.4, 1.0), z, 8192).norm() <= 2e-3);
    }
}

TEST_CASE("critical boundary parameter leaves a residual defect J/2")
{
    const CoefficientMatrix cm = build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0}));
    const CMatrix d = eval_defect(cm, scalar_constant(1.0), 0.0, 4096);
    CHECK((d - 0.5 * CMatrix::Ones(2, 2)).norm() <= 1e-9);
    CHECK(d.norm() > 0.05);
    CHECK(eval_defect(cm, scalar_constant(0.3), 0.0, 4096).norm() <= 2e-3);
}

TEST_CASE("spectral function at the origin is Hermitian and PSD")
{
    // a_ω(0) = ½Γ*Γ
    const CoefficientMatrix cm = build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0}));
    for (Complex c : {Complex(1.0), Complex(0.2, 0.3)}) {
        const SpectralEval se = eval_spectral(cm, scalar_constant(c), 0.0, 4096);
        CHECK((se.a_omega - se.a_omega.adjoint()).norm() <= 1e-9);
        CHECK(min_eigenvalue(se.a_omega) >= -1e-9);
        CHECK((se.a_omega + se.a_omega.adjoint() - se.defect).norm() <= 1e-9);
    }
}

TEST_CASE("defect is positive semidefinite across suites")
{
    Rng rng(73);
    std::vector<AipProblem> problems{build_np(testing::random_np(rng, 3)),
                                     build_sarason(sarason_from_np(testing::random_np(rng, 2))),
                                     build_boundary(testing::random_boundary(rng))};
    for (const AipProblem& p : problems) {
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        const SchurParameter om = scalar_constant(rng.in_disk(0.0, 0.95));
        for (int k = 0; k < 3; ++k)
            CHECK(min_eigenvalue(eval_defect(cm, om, rng.in_disk(0.0, 0.7), 4096)) >= -1e-6);
    }
}

TEST_CASE("defect vanishes exactly when the norm equality holds")
{
    Rng rng(74);
    for (int trial = 0; trial < 3; ++trial) {
        const BoundaryData bd = testing::random_boundary(rng);
        const AipProblem p = build_boundary(bd);
        const CoefficientMatrix cm = build_coefficient_matrix(p);
        const Complex crit = std::conj(eval_S_blocks(cm, bd.t0).s(0, 0));
        for (const SchurParameter& om : {scalar_constant(0.6 * rng.unimodular()), scalar_constant(crit)}) {
            const bool equality = verify_solution(p, cm, om).norm_equality_gap <= 5e-3;
            double worst = 0.0;
            for (int k = 0; k < 5; ++k)
                worst = std::max(worst, eval_defect(cm, om, rng.in_disk(0.0, 0.6), 4096).norm());
            CHECK(equality == (worst <= 2e-3));
        }
    }
}

TEST_CASE("property 2' on np, sarason and boundary data")
{
    const auto samples = circle_nodes(512);
    const NpData d{{0.0, 0.5}, {0.2, 0.5}};
    CHECK(check_property_2prime(build_coefficient_matrix(build_np(d)), samples) <= 1e-6);
    CHECK(check_property_2prime(build_coefficient_matrix(build_sarason(sarason_from_np(d))), samples) <= 1e-6);
    CHECK(check_property_2prime(build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0})), samples) <= 1e-6);
}

TEST_CASE("property 2'' rank identity")
{
    const auto samples = circle_nodes(512);
    const RankIdentity np = check_property_2doubleprime(build_coefficient_matrix(build_np({{0.0, 0.5}, {0.2, 0.5}})), samples);
    CHECK(np.holds);
    CHECK(np.lhs_rank_max == 0);

    const RankIdentity degenerate
        = check_property_2doubleprime(build_coefficient_matrix(build_np({{0.0, 0.5}, {0.0, 0.5}})), samples);
    CHECK(degenerate.holds);

    const RankIdentity bd = check_property_2doubleprime(build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0})), samples);
    CHECK(bd.holds);
}

TEST_CASE("coefficient matrix of completely indeterminate np data is inner")
{
    Rng rng(75);
    const auto samples = circle_nodes(512);
    for (int trial = 0; trial < 8; ++trial) {
        const CoefficientMatrix cm = build_coefficient_matrix(build_np(testing::random_np(rng, 1 + trial % 6)));
        REQUIRE(cm.dim_n1 == cm.dim_e1);
        CHECK(inner_defect(cm, samples) <= 1e-7);
    }
}

TEST_CASE("property 1' singular-mass gaps")
{
    const CoefficientMatrix np = build_coefficient_matrix(build_np({{0.0, 0.5}, {0.2, 0.5}}));
    const SingularMassGaps g = check_property_1prime(np, scalar_constant(0.5), 4096);
    CHECK(g.ratio1 <= 5e-3);
    CHECK(g.ratio2 <= 5e-3);

    // (1 + s)/(1 − s) = 1/(1 − z) for the critical parameter: the point mass at
    // 1 is invisible on the circle, so the gap is 1 − ½/Re(1/(1 − z)),
    // largest (0.65) at the probe z = 0.3.
    const CoefficientMatrix bd = build_coefficient_matrix(build_boundary({1.0, 1.0, 1.0}));
    const SingularMassGaps crit = check_property_1prime(bd, scalar_constant(1.0), 4096);
    CHECK(crit.ratio1 == doctest::Approx(0.65).epsilon(1e-6));
    CHECK(crit.ratio2 == doctest::Approx(0.65).epsilon(1e-6));

    const SingularMassGaps strict = check_property_1prime(bd, scalar_constant(Complex(0.2, -0.5)), 4096);
    CHECK(std::max(strict.ratio1, strict.ratio2) <= 5e-3);

    const CoefficientMatrix degenerate = build_coefficient_matrix(build_boundary({1.0, 1.0, 0.0}));
    CHECK_THROWS_AS(check_property_1prime(degenerate, SchurParameter::zero(0, 0), 1024), AipError);
}
