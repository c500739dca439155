#include "wcomp/lfmap.hpp"

#include <gtest/gtest.h>

using namespace wcomp;

namespace {

CVec vec(std::initializer_list<Complex> xs)
{
    CVec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (auto x : xs) v(i++) = x;
    return v;
}

LinearFractionalMap random_map(Rng& rng, int n)
{
    return {random_complex_matrix(rng, n, n, 0.5), random_ball_point(rng, n, 0.3), random_ball_point(rng, n, 0.3),
            Complex(1.0) + random_complex(rng, 0.1)};
}

}  // namespace

TEST(LfmapEval, IdentityFixesEveryPoint)
{
    const CVec z = vec({0.3, Complex(0, 0.4)});
    EXPECT_LT((eval_map(LinearFractionalMap::identity(2), z) - z).norm(), 1e-15);
}

TEST(LfmapEval, DiskInvolutionSendsZeroToA)
{
    const auto phi = make_involution(vec({0.5}));
    EXPECT_NEAR(std::abs(phi(vec({0.0}))(0) - 0.5), 0.0, 1e-15);
}

TEST(LfmapEval, AffineFixedPoint)
{
    const auto sigma = LinearFractionalMap::affine(0.5 * CMat::Identity(2, 2), vec({0.25, 0.0}));
    EXPECT_LT((sigma(vec({0.5, 0.0})) - vec({0.5, 0.0})).norm(), 1e-15);
}

TEST(LfmapEval, VanishingDenominatorThrows)
{
    const LinearFractionalMap phi(CMat::Identity(1, 1), vec({0.0}), vec({1.0}), Complex(-0.5));
    try {
        phi(vec({0.5}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishes);
    }
}

TEST(LfmapAssoc, ReadsBlocks)
{
    CMat expected(2, 2);
    expected << -1.0, 0.5, -0.5, 1.0;
    EXPECT_LT((make_involution(vec({0.5})).assoc_matrix().matrix() - expected).norm(), 1e-15);
    EXPECT_EQ((LinearFractionalMap::identity(3).assoc_matrix().matrix() - CMat::Identity(4, 4)).norm(), 0.0);
}

TEST(LfmapAssoc, RoundTrip)
{
    Rng rng(1);
    const auto phi = random_map(rng, 3);
    const auto back = LinearFractionalMap::from_assoc(phi.assoc_matrix());
    const CVec z = random_ball_point(rng, 3, 0.5);
    EXPECT_LT((back(z) - phi(z)).norm(), 1e-14);
}

TEST(LfmapAssoc, NormalizationPivots)
{
    CMat m = 2.0 * CMat::Identity(3, 3);
    EXPECT_LT((AssocMatrix(m).normalized().matrix() - CMat::Identity(3, 3)).norm(), 1e-15);
    CMat z = CMat::Zero(2, 2);
    z(0, 1) = Complex(0, 2);
    z(1, 0) = 3.0;
    const CMat n = AssocMatrix(z).normalized().matrix();
    EXPECT_NEAR(std::abs(n(0, 1) - 1.0), 0.0, 1e-15);
}

TEST(LfmapAdjoint, IdentityAndAffine)
{
    const auto id = adjoint_map(LinearFractionalMap::identity(2));
    EXPECT_TRUE(proportional(id.assoc_matrix(), LinearFractionalMap::identity(2).assoc_matrix()));

    Rng rng(2);
    const CMat a = random_complex_matrix(rng, 2, 2, 0.4);
    const CVec c = vec({0.25, Complex(0, 0.1)});
    const auto sigma = adjoint_map(LinearFractionalMap::affine(a, c));
    const CVec z = vec({0.2, Complex(0.1, -0.3)});
    const CVec expected = a.adjoint() * z / (1.0 - inner(z, c));
    EXPECT_LT((sigma(z) - expected).norm(), 1e-15);
}

TEST(LfmapAdjoint, DoubleAdjointIsOriginal)
{
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto phi = random_map(rng, 2);
        EXPECT_TRUE(proportional(adjoint_map(adjoint_map(phi)).assoc_matrix(), phi.assoc_matrix()));
    }
    const auto phi_a = make_involution(vec({0.5, 0.0}));
    EXPECT_TRUE(proportional(adjoint_map(adjoint_map(phi_a)).assoc_matrix(), phi_a.assoc_matrix()));
}

TEST(LfmapAdjoint, KreinFormConjugation)
{
    Rng rng(4);
    const auto phi = random_map(rng, 3);
    const CMat j = krein_form(3);
    const CMat m = phi.assoc_matrix().matrix();
    EXPECT_LT((adjoint_map(phi).assoc_matrix().matrix() - j * m.adjoint() * j).norm(), 1e-15);
}

TEST(LfmapAdjoint, ReversesComposition)
{
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        const auto phi = random_map(rng, 2);
        const auto tau = random_map(rng, 2);
        const auto lhs = adjoint_map(compose(phi, tau)).assoc_matrix();
        const auto rhs = adjoint_map(tau).assoc_matrix() * adjoint_map(phi).assoc_matrix();
        EXPECT_TRUE(proportional(lhs, rhs));
    }
}

TEST(LfmapCompose, IdentityIsNeutral)
{
    Rng rng(6);
    const auto phi = random_map(rng, 2);
    EXPECT_TRUE(proportional(compose(LinearFractionalMap::identity(2), phi).assoc_matrix(), phi.assoc_matrix()));
}

TEST(LfmapCompose, LinearMapsMultiply)
{
    Rng rng(7);
    const CMat a = random_complex_matrix(rng, 2, 2);
    const CMat b = random_complex_matrix(rng, 2, 2);
    const auto ab = compose(LinearFractionalMap::linear(a), LinearFractionalMap::linear(b));
    EXPECT_LT((ab.a() - a * b).norm(), 1e-14);
    EXPECT_EQ(ab.b().norm() + ab.c().norm(), 0.0);
}

TEST(LfmapCompose, FunctorialPointwise)
{
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto phi = random_map(rng, 3);
        const auto tau = random_map(rng, 3);
        const CVec z = random_ball_point(rng, 3, 0.6);
        EXPECT_LT((compose(phi, tau)(z) - phi(tau(z))).norm(), 1e-12);
    }
}

TEST(LfmapInvolution, SquaresToIdentity)
{
    Rng rng(9);
    const auto id = LinearFractionalMap::identity(2).assoc_matrix();
    EXPECT_TRUE(proportional(compose(make_involution(vec({0.5, 0.0})), make_involution(vec({0.5, 0.0}))).assoc_matrix(), id));
    for (int t = 0; t < 100; ++t) {
        const CVec a = random_ball_point(rng, 2, 0.9);
        const auto phi = make_involution(a);
        EXPECT_TRUE(proportional(compose(phi, phi).assoc_matrix(), id));
    }
}

TEST(LfmapInvolution, SpecialCases)
{
    const auto zero = make_involution(CVec::Zero(2));
    const CVec z = vec({0.3, Complex(0, 0.2)});
    EXPECT_LT((zero(z) + z).norm(), 1e-15);

    const auto disk = make_involution(vec({0.5}));
    const CVec w = vec({Complex(0.2, 0.1)});
    EXPECT_LT(std::abs(disk(w)(0) - (0.5 - w(0)) / (1.0 - 0.5 * w(0))), 1e-15);

    const auto ball = make_involution(vec({0.5, 0.0}));
    EXPECT_LT(ball(vec({0.5, 0.0})).norm(), 1e-15);
    EXPECT_LT((ball(CVec::Zero(2)) - vec({0.5, 0.0})).norm(), 1e-15);
}

TEST(LfmapInvolution, RejectsBoundary)
{
    EXPECT_THROW(make_involution(vec({0.6, 0.8})), Error);
}

TEST(LfmapKrein, Multipliers)
{
    EXPECT_NEAR(*krein_multiplier(LinearFractionalMap::identity(2).assoc_matrix()), 1.0, 1e-15);
    EXPECT_NEAR(*krein_multiplier(make_involution(vec({0.5})).assoc_matrix()), 4.0 / 3.0, 1e-14);
    EXPECT_FALSE(krein_multiplier(LinearFractionalMap::linear(2.0 * CMat::Identity(2, 2)).assoc_matrix()));
}

TEST(LfmapKrein, InvolutionMultiplier)
{
    Rng rng(10);
    for (int t = 0; t < 50; ++t) {
        const CVec a = random_ball_point(rng, 3, 0.9);
        const auto k = krein_multiplier(make_involution(a).assoc_matrix());
        ASSERT_TRUE(k);
        EXPECT_NEAR(*k, 1.0 / (1.0 - a.squaredNorm()), 1e-10 * *k);
    }
}

TEST(LfmapKrein, ScaleInvariantUpToModulus)
{
    const auto m = make_involution(vec({0.3, Complex(0, 0.2)})).assoc_matrix();
    const auto k1 = krein_multiplier(m);
    const auto k2 = krein_multiplier(AssocMatrix(Complex(0, 2.0) * m.matrix()));
    ASSERT_TRUE(k1 && k2);
    EXPECT_NEAR(*k2, *k1 / 4.0, 1e-12);
}

TEST(LfmapAutomorphism, Cases)
{
    Rng rng(11);
    EXPECT_TRUE(is_automorphism(LinearFractionalMap::linear(random_unitary(rng, 2))));
    EXPECT_TRUE(is_automorphism(make_involution(vec({0.5, 0.0}))));
    EXPECT_FALSE(is_automorphism(LinearFractionalMap::affine(0.5 * CMat::Identity(2, 2), vec({0.25, 0.0}))));
}

TEST(LfmapHeart, Cases)
{
    EXPECT_EQ((make_heart_matrix(CVec::Zero(2)) - CMat::Identity(2, 2)).norm(), 0.0);
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = std::sqrt(0.75);
    const CVec b = vec({0.5, 0.0});
    const CMat t = make_heart_matrix(b);
    EXPECT_LT((t - expected).norm(), 1e-15);
    EXPECT_LT((t * (0.5 * b) - 0.5 * b).norm(), 1e-15);
    EXPECT_THROW(make_heart_matrix(vec({1.0, 0.0})), Error);
}

TEST(LfmapHeart, FixesRealDirection)
{
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
        const CVec b = random_real_ball_point(rng, 3, 0.9);
        const CMat h = make_heart_matrix(b);
        EXPECT_LT((h * b - b).norm(), 1e-14);
        EXPECT_LT((h - h.adjoint()).norm(), 1e-14);
    }
}

TEST(LfmapLinearPart, DetectsAffineSlack)
{
    const auto lin = linear_part(LinearFractionalMap::linear(0.5 * CMat::Identity(2, 2)));
    ASSERT_TRUE(lin);
    EXPECT_EQ(lin->affine_slack, 0.0);
    const auto aff = linear_part(LinearFractionalMap::affine(CMat::Identity(2, 2), vec({0.1, 0.0})));
    ASSERT_TRUE(aff);
    EXPECT_NEAR(aff->affine_slack, 0.1, 1e-15);
}
