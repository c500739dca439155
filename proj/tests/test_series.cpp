#include "wcomp/weight.hpp"

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

MultiIndex mi(std::initializer_list<int> e) { return MultiIndex{std::vector<int>(e)}; }

PowerSeries z(int n, int d, int j) { return PowerSeries::variable(n, d, j); }
PowerSeries one(int n, int d) { return PowerSeries::constant(n, d, 1.0); }

double max_diff(const PowerSeries& a, const PowerSeries& b) { return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff(); }

// sum_k binom(m-1+k, k) <z,c>^k built from powers of the linear form.
PowerSeries reciprocal_oracle(const CVec& c, int m, int degree)
{
    const int n = static_cast<int>(c.size());
    const PowerSeries t = PowerSeries::linear_form(degree, 0.0, c);
    PowerSeries acc = one(n, degree);
    PowerSeries tk = one(n, degree);
    double binom = 1.0;
    for (int k = 1; k <= degree; ++k) {
        tk = tk * t;
        binom = binom * static_cast<double>(m - 1 + k) / static_cast<double>(k);
        acc += tk * binom;
    }
    return acc;
}

}  // namespace

TEST(SeriesBasis, GradedLexOrder)
{
    const auto b = monomial_basis(2, 2);
    ASSERT_EQ(b->size(), 6u);
    EXPECT_EQ(b->at(0), mi({0, 0}));
    EXPECT_EQ(b->at(1), mi({1, 0}));
    EXPECT_EQ(b->at(2), mi({0, 1}));
    EXPECT_EQ(b->at(3), mi({2, 0}));
    EXPECT_EQ(b->at(4), mi({1, 1}));
    EXPECT_EQ(b->at(5), mi({0, 2}));
}

TEST(SeriesBasis, SizesAndRanks)
{
    EXPECT_EQ(basis_size(2, 8), 45u);
    EXPECT_EQ(basis_size(3, 6), 84u);
    const auto b = monomial_basis(3, 5);
    for (std::size_t i = 0; i < b->size(); ++i) EXPECT_EQ(b->rank(b->at(i)), static_cast<int>(i));
    EXPECT_EQ(b->rank(mi({3, 3, 0})), -1);
    EXPECT_EQ(b->leading_size(1), 4u);
    EXPECT_EQ(b->leading_size(-1), 0u);
    EXPECT_EQ(b->leading_size(9), b->size());
}

TEST(SeriesArith, Products)
{
    const int n = 2, d = 2;
    const auto p = (one(n, d) + z(n, d, 0)) * (one(n, d) - z(n, d, 0));
    auto expected = one(n, d);
    expected.set_coeff(mi({2, 0}), -1.0);
    EXPECT_EQ(max_diff(p, expected), 0.0);

    const auto sq = power(z(n, d, 0) + z(n, d, 1), 2);
    EXPECT_EQ(sq.coeff(mi({2, 0})), Complex(1.0));
    EXPECT_EQ(sq.coeff(mi({1, 1})), Complex(2.0));
    EXPECT_EQ(sq.coeff(mi({0, 2})), Complex(1.0));
    EXPECT_EQ(sq.coeff(mi({1, 0})), Complex(0.0));
}

TEST(SeriesArith, TelescopingTruncation)
{
    const int n = 1, d = 4;
    PowerSeries geo = one(n, d);
    for (int k = 1; k <= d; ++k) geo += power(z(n, d, 0), k);
    EXPECT_EQ(max_diff(geo * (one(n, d) - z(n, d, 0)), one(n, d)), 0.0);
}

TEST(SeriesArith, RingLaws)
{
    Rng rng(21);
    const int n = 2, d = 6;
    const auto basis = monomial_basis(n, d);
    auto rand_series = [&] {
        CVec c(static_cast<Eigen::Index>(basis->size()));
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = random_complex(rng);
        return PowerSeries(basis, c);
    };
    for (int t = 0; t < 10; ++t) {
        const auto a = rand_series(), b = rand_series(), c = rand_series();
        EXPECT_LT(max_diff((a * b) * c, a * (b * c)), 1e-12);
        EXPECT_LT(max_diff(a * (b + c), a * b + a * c), 1e-12);
        EXPECT_LT(max_diff(a * b, b * a), 1e-13);
    }
}

TEST(SeriesArith, MismatchThrows)
{
    EXPECT_THROW(one(2, 3) + one(2, 4), Error);
    EXPECT_THROW(one(2, 3) * one(3, 3), Error);
}

TEST(SeriesReciprocal, Examples)
{
    const auto c0 = expand_reciprocal_linear(CVec::Zero(2), 3, 4);
    EXPECT_EQ(max_diff(c0, one(2, 4)), 0.0);

    const auto geo = expand_reciprocal_linear(vec({0.5}), 1, 3);
    EXPECT_NEAR(std::abs(geo.coeff(mi({1})) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(geo.coeff(mi({2})) - 0.25), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(geo.coeff(mi({3})) - 0.125), 0.0, 1e-15);

    const auto sq = expand_reciprocal_linear(vec({0.5, 0.0}), 2, 1);
    EXPECT_NEAR(std::abs(sq.coeff(mi({1, 0})) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(sq.coeff(mi({0, 1})), Complex(0.0));

    EXPECT_THROW(expand_reciprocal_linear(vec({0.6, 0.8}), 1, 2), Error);
}

TEST(SeriesReciprocal, MatchesLinearFormPowers)
{
    Rng rng(22);
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            const CVec c = random_ball_point(rng, n, 0.9);
            EXPECT_LT(max_diff(expand_reciprocal_linear(c, m, 6), reciprocal_oracle(c, m, 6)), 1e-13);
        }
}

TEST(SeriesReciprocal, ConjugatePattern)
{
    // (1 - <z, c>)^{-1} depends on conj(c): coefficient of z1 is conj(c1).
    const auto s = expand_reciprocal_linear(vec({Complex(0.2, 0.3), 0.0}), 1, 1);
    EXPECT_NEAR(std::abs(s.coeff(mi({1, 0})) - Complex(0.2, -0.3)), 0.0, 1e-15);
}

TEST(SeriesLog, Examples)
{
    EXPECT_EQ(expand_log_reciprocal(CVec::Zero(2), 5).coeffs().norm(), 0.0);

    const auto formal = expand_log_reciprocal(vec({1.0}), 3, BallCheck::Formal);
    EXPECT_NEAR(formal.coeff(mi({1})).real(), 1.0, 1e-15);
    EXPECT_NEAR(formal.coeff(mi({2})).real(), 0.5, 1e-15);
    EXPECT_NEAR(formal.coeff(mi({3})).real(), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(expand_log_reciprocal(vec({1.0}), 3), Error);

    CVec c = vec({0.6, Complex(0, 0.8)});
    c *= 0.9;
    const auto s = expand_log_reciprocal(c, 2);
    EXPECT_NEAR(std::abs(s.coeff(mi({1, 1})) - std::conj(c(0)) * std::conj(c(1))), 0.0, 1e-15);
}

TEST(SeriesLog, MatchesPowerSum)
{
    Rng rng(23);
    const CVec c = random_ball_point(rng, 3, 0.9);
    const int d = 6;
    const PowerSeries t = PowerSeries::linear_form(d, 0.0, c);
    PowerSeries acc(monomial_basis(3, d));
    PowerSeries tk = one(3, d);
    for (int k = 1; k <= d; ++k) {
        tk = tk * t;
        acc += tk * (1.0 / k);
    }
    EXPECT_LT(max_diff(expand_log_reciprocal(c, d), acc), 1e-14);
}

TEST(SeriesEval, AgreesWithClosedForms)
{
    Rng rng(24);
    const int d = 25;
    for (int t = 0; t < 50; ++t) {
        const CVec c = random_ball_point(rng, 2, 0.9);
        const CVec x = random_ball_point(rng, 2, 0.5);
        const double ratio = x.norm() * c.norm();
        const double tail = std::pow(ratio, d + 1) / (1.0 - ratio);
        const Complex u = 1.0 - inner(x, c);
        const auto rec = expand_reciprocal_linear(c, 2, d);
        EXPECT_LE(std::abs(rec(x) - 1.0 / (u * u)), 10.0 * (d + 2) * tail + 1e-14);
        EXPECT_LE(std::abs(expand_log_reciprocal(c, d)(x) + std::log(u)), 10.0 * tail + 1e-14);
    }
}

TEST(SeriesMap, Examples)
{
    const auto id = map_component_series(LinearFractionalMap::identity(2), 3);
    EXPECT_EQ(max_diff(id[0], z(2, 3, 0)), 0.0);
    EXPECT_EQ(max_diff(id[1], z(2, 3, 1)), 0.0);

    const auto disk = map_component_series(make_involution(vec({0.5})), 2);
    EXPECT_NEAR(std::abs(disk[0].coeff(mi({0})) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(disk[0].coeff(mi({1})) + 0.75), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(disk[0].coeff(mi({2})) + 0.375), 0.0, 1e-15);

    CMat a(2, 2);
    a << 0.5, 0.1, 0.2, 0.3;
    const auto aff = map_component_series(LinearFractionalMap::affine(a, vec({0.25, 0.0})), 4);
    EXPECT_NEAR(std::abs(aff[0].coeff(mi({0, 0})) - 0.25), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(aff[0].coeff(mi({0, 1})) - 0.1), 0.0, 1e-15);
    EXPECT_EQ(aff[0].effective_degree(), 1);
}

TEST(SeriesMap, DenominatorAtOrigin)
{
    const LinearFractionalMap phi(CMat::Identity(1, 1), vec({0.1}), vec({1.0}), Complex(0.0));
    try {
        map_component_series(phi, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DenominatorVanishesAtOrigin);
    }
}

TEST(SeriesMap, CompositionCommutesWithExpansion)
{
    Rng rng(25);
    const int d = 6;
    for (int t = 0; t < 10; ++t) {
        const auto outer = make_involution(random_ball_point(rng, 2, 0.5));
        const LinearFractionalMap inner_map(random_complex_matrix(rng, 2, 2, 0.3), CVec::Zero(2),
                                            random_ball_point(rng, 2, 0.3), Complex(1.0));
        const auto direct = map_component_series(compose(outer, inner_map), d);
        const auto outer_series = map_component_series(outer, d);
        const auto inner_series = map_component_series(inner_map, d);
        for (int j = 0; j < 2; ++j)
            EXPECT_LT(max_diff(direct[static_cast<std::size_t>(j)],
                               compose_series(outer_series[static_cast<std::size_t>(j)], inner_series)),
                      1e-12);
    }
}

TEST(SeriesWeight, Examples)
{
    const auto c = weight_series(weight::Constant{Complex(2, 1)}, 2, 3);
    EXPECT_EQ(c.coeff(mi({0, 0})), Complex(2, 1));
    EXPECT_EQ(c.effective_degree(), 0);

    const auto k = weight_series(weight::KernelPower{1.0, vec({0.5, 0.0}), 2}, 2, 1);
    EXPECT_NEAR(std::abs(k.coeff(mi({0, 0})) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k.coeff(mi({1, 0})) - 1.0), 0.0, 1e-15);

    const auto nk = weight_series(weight::NormalizedKernel{1.0, vec({0.5, 0.0}), 2}, 2, 0);
    EXPECT_NEAR(std::abs(nk.coeff(mi({0, 0})) - 0.75), 0.0, 1e-15);

    EXPECT_THROW(weight_series(weight::KernelPower{1.0, vec({1.0, 0.0}), 2}, 2, 2), Error);
}

TEST(SeriesWeight, DerivativesMatchFiniteDifferences)
{
    Rng rng(26);
    const WeightSpec psi = weight::KernelPower{Complex(0.7, 0.2), random_ball_point(rng, 2, 0.6), 2};
    const CVec x = random_ball_point(rng, 2, 0.5);
    const double h = 1e-5;
    const CVec g = weight_gradient(psi, x);
    const CMat hs = weight_hessian(psi, x);
    for (int k = 0; k < 2; ++k) {
        CVec e = CVec::Zero(2);
        e(k) = h;
        const Complex fd = (eval_weight(psi, x + e) - eval_weight(psi, x - e)) / (2 * h);
        EXPECT_LT(std::abs(fd - g(k)), 1e-8);
        const CVec gd = (weight_gradient(psi, x + e) - weight_gradient(psi, x - e)) / (2 * h);
        EXPECT_LT((gd - hs.col(k)).norm(), 1e-7);
    }
}

TEST(SeriesDerivative, PartialDerivatives)
{
    const int n = 2, d = 4;
    const auto f = power(z(n, d, 0), 2) * z(n, d, 1) + z(n, d, 1) * 3.0;
    const auto df = f.derivative(0);
    EXPECT_EQ(df.coeff(mi({1, 1})), Complex(2.0));
    EXPECT_EQ(f.derivative(1).coeff(mi({0, 0})), Complex(3.0));
}
