#include <doctest.h>

#include "aip/errors.hpp"
#include "aip/linalg.hpp"
#include "support.hpp"

using namespace aip;
using aip::testing::Rng;

namespace {

CMatrix random_isometry(Rng& rng, Index rows, Index cols)
{
    Eigen::HouseholderQR<CMatrix> qr(rng.matrix(rows, cols));
    return qr.householderQ() * CMatrix::Identity(rows, cols);
}

} // namespace

TEST_CASE("psd factor reproduces a rank-deficient Gram matrix")
{
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 2 + trial % 6;
        const Index r = 1 + trial % n;
        const CMatrix b = rng.matrix(n, r);
        const CMatrix g = b * b.adjoint();
        const PsdFactor f = hermitian_psd_decompose(g);
        CHECK(f.rank == r);
        CHECK((f.factor * f.factor.adjoint() - g).norm() <= 1e-12 * g.norm());
    }
}

TEST_CASE("psd factor is bitwise deterministic")
{
    Rng rng(12);
    const CMatrix b = rng.matrix(5, 3);
    const CMatrix g = b * b.adjoint();
    const PsdFactor f1 = hermitian_psd_decompose(g);
    const PsdFactor f2 = hermitian_psd_decompose(g);
    CHECK(f1.factor == f2.factor);
}

TEST_CASE("tied eigenvalues follow the dominant-coordinate rule")
{
    const PsdFactor f = hermitian_psd_decompose(CMatrix::Identity(3, 3));
    CHECK(f.rank == 3);
    CHECK((f.factor - CMatrix::Identity(3, 3)).norm() <= 1e-14);
}

TEST_CASE("psd factor rejects bad input")
{
    CMatrix nh(2, 2);
    nh << 1.0, 0.5, 0.0, 1.0;
    try {
        (void)hermitian_psd_decompose(nh);
        FAIL("expected NotHermitian");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::NotHermitian);
    }

    CMatrix indefinite(2, 2);
    indefinite << 1.0, 0.0, 0.0, -0.5;
    try {
        (void)hermitian_psd_decompose(indefinite);
        FAIL("expected NotPsd");
    } catch (const AipError& e) {
        CHECK(e.kind() == ErrorKind::NotPsd);
        REQUIRE(e.value().has_value());
        CHECK(*e.value() == doctest::Approx(-0.5));
    }
}

TEST_CASE("orthonormal complement is orthonormal and orthogonal")
{
    Rng rng(13);
    const Subspace s = make_subspace(random_isometry(rng, 5, 2));
    const Subspace c = orthonormal_complement(s);
    CHECK(c.dim() == 3);
    CHECK((c.basis.adjoint() * c.basis - CMatrix::Identity(3, 3)).norm() <= 1e-12);
    CHECK((s.basis.adjoint() * c.basis).norm() <= 1e-12);

    const Subspace all = orthonormal_complement(zero_subspace(4));
    CHECK((all.basis - CMatrix::Identity(4, 4)).norm() <= 1e-15);
}

TEST_CASE("truncated svd reconstructs and truncates")
{
    Rng rng(14);
    const CMatrix m = rng.matrix(5, 2) * rng.matrix(2, 4);
    const TruncatedSvd svd = truncated_svd(m);
    CHECK(svd.rank() == 2);
    CHECK((svd.u * svd.sigma.cast<Complex>().asDiagonal() * svd.v.adjoint() - m).norm() <= 1e-12 * m.norm());
    // the largest-magnitude entry of each left vector is real positive
    for (Index k = 0; k < svd.rank(); ++k) {
        Index idx = 0;
        svd.u.col(k).cwiseAbs().maxCoeff(&idx);
        CHECK(std::abs(svd.u(idx, k).imag()) <= 1e-14);
        CHECK(svd.u(idx, k).real() > 0.0);
    }
}

TEST_CASE("pinv satisfies the Penrose conditions")
{
    Rng rng(15);
    const CMatrix a = rng.matrix(4, 2) * rng.matrix(2, 5);
    const CMatrix x = pinv(a);
    const double s = a.norm();
    CHECK((a * x * a - a).norm() <= 1e-10 * s);
    CHECK((x * a * x - x).norm() <= 1e-10 * x.norm());
    CHECK(((a * x).adjoint() - a * x).norm() <= 1e-10);
    CHECK(((x * a).adjoint() - x * a).norm() <= 1e-10);
    CHECK(pinv(CMatrix::Zero(2, 3)).norm() == 0.0);
}

TEST_CASE("spectral norm and unitarity defect")
{
    CMatrix d = CMatrix::Zero(3, 3);
    d.diagonal() << 0.5, -2.0, Complex(0.0, 1.5);
    CHECK(spectral_norm(d) == doctest::Approx(2.0));
    CHECK(spectral_norm(CMatrix(0, 0)) == 0.0);
    Rng rng(16);
    CHECK(unitarity_defect(random_isometry(rng, 4, 4)) <= 1e-13);
    CHECK(unitarity_defect(2.0 * CMatrix::Identity(2, 2)) > 1.0);
}

TEST_CASE("isometry completion is unitary and extends V")
{
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Index m1 = 3 + trial % 2, m2 = 4, k = 2;
        const Subspace dom = make_subspace(random_isometry(rng, m1, k));
        const CMatrix image = random_isometry(rng, m2, k);
        const Subspace ran = make_subspace(image);
        const CMatrix v = image * dom.basis.adjoint();
        const Index n1 = m1 - k, n2 = m2 - k;
        const CMatrix u = complete_isometry_to_unitary(v, dom, ran, CMatrix::Identity(n1, n1),
                                                       CMatrix::Identity(n2, n2));
        REQUIRE(u.rows() == m2 + n1);
        REQUIRE(u.cols() == m1 + n2);
        CHECK(unitarity_defect(u) <= 1e-12);
        CHECK((u.topLeftCorner(m2, m1) * dom.basis - image).norm() <= 1e-12);
        CHECK((u.bottomLeftCorner(n1, m1) * dom.basis).norm() <= 1e-12);
    }
}

TEST_CASE("isometry completion rejects a non-isometric V")
{
    const Subspace dom = make_subspace(CMatrix::Identity(2, 1));
    const Subspace ran = make_subspace(CMatrix::Identity(2, 1));
    const CMatrix v = 2.0 * CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(complete_isometry_to_unitary(v, dom, ran, CMatrix::Identity(1, 1), CMatrix::Identity(1, 1)),
                    AipError);
}

TEST_CASE("non-finite entries are rejected")
{
    CMatrix m = CMatrix::Identity(2, 2);
    m(0, 1) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(require_finite(m, "m"), AipError);
}
