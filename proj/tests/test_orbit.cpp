/*
   Copyright 2026 The abdyn Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "abdyn/orbit.hpp"

using namespace abdyn;

namespace {

const cplx I(0.0, 1.0);

NumericLattice gaussian() {
    NumericLattice l;
    l.g = 1;
    l.basis = {{1.0}, {I}};
    l.polarization = IntMatrix{{0, -1}, {1, 0}};
    return l;
}

// Product of the square and hexagonal elliptic curves.
NumericLattice square_times_hex() {
    const cplx w(0.5, std::sqrt(3.0) / 2);
    NumericLattice l;
    l.g = 2;
    l.basis = {{1.0, 0.0}, {I, 0.0}, {0.0, 1.0}, {0.0, w}};
    l.polarization = IntMatrix{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    return l;
}

NumericLattice random_lattice(std::mt19937_64& rng, std::size_t g) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    NumericLattice l;
    l.g = g;
    for (std::size_t j = 0; j < 2 * g; ++j) {
        CVector v(g);
        for (std::size_t i = 0; i < g; ++i) v[i] = (j % g == i ? (j < g ? 1.0 : 0.0) : 0.0) + (j >= g && j - g == i ? I * 1.3 : 0.0) + cplx(u(rng), u(rng)) * 0.3;
        l.basis.push_back(v);
    }
    return l;
}

}  // namespace

TEST(Orbit, DualCoordsReconstruct) {
    const auto l = square_times_hex();
    const CVector v{cplx(0.3, -1.7), cplx(2.5, 0.4)};
    const auto x = real_dual_coords(l, v);
    CVector back(2, 0.0);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 2; ++i) back[i] += x[j] * l.basis[j][i];
    EXPECT_NEAR(std::abs(back[0] - v[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(back[1] - v[1]), 0.0, 1e-12);
}

TEST(Orbit, IllConditionedBasisRejected) {
    NumericLattice l;
    l.g = 1;
    l.basis = {{1.0}, {cplx(1.0, 1e-14)}};
    EXPECT_THROW(real_dual_coords(l, {0.5}), NumericError);
}

TEST(Orbit, RationalPointIsFinite) {
    const auto rep = orbit_dims(gaussian(), {cplx(0.5, 1.0 / 3.0)}, 50, 1e-10);
    EXPECT_EQ(rep.h, 0u);
    EXPECT_EQ(rep.s, 0u);
    EXPECT_EQ(rep.r, 0u);
    ASSERT_EQ(rep.relations.size(), 2u);
    for (const auto& r : rep.relations) EXPECT_LT(r.residual, 1e-10);
}

TEST(Orbit, RealIrrationalIsTotallyReal) {
    const auto rep = orbit_dims(gaussian(), {std::sqrt(2.0)}, 50, 1e-10);
    EXPECT_EQ(rep.h, 1u);
    EXPECT_EQ(rep.s, 0u);
    EXPECT_EQ(rep.r, 1u);
    EXPECT_TRUE(rep.totally_real);
    EXPECT_FALSE(rep.dense);
}

TEST(Orbit, GenericPointIsDense) {
    const auto rep = orbit_dims(gaussian(), {cplx(std::sqrt(2.0), std::sqrt(3.0))}, 50, 1e-10);
    EXPECT_EQ(rep.h, 2u);
    EXPECT_EQ(rep.s, 1u);
    EXPECT_EQ(rep.r, 0u);
    EXPECT_TRUE(rep.dense);
}

TEST(Orbit, MixedProduct) {
    const auto rep = orbit_dims(square_times_hex(), {cplx(std::sqrt(2.0), std::sqrt(3.0)), std::sqrt(5.0)}, 50, 1e-10);
    EXPECT_EQ(rep.h, 3u);
    EXPECT_EQ(rep.s, 1u);
    EXPECT_EQ(rep.r, 1u);
}

TEST(Orbit, RandomPointsAreDense) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int dense = 0, total = 0;
    for (std::size_t g = 1; g <= 2; ++g)
        for (int t = 0; t < 100; ++t) {
            const auto l = random_lattice(rng, g);
            std::vector<double> x(2 * g);
            for (auto& xi : x) xi = u(rng);
            CVector a(g, 0.0);
            for (std::size_t j = 0; j < 2 * g; ++j)
                for (std::size_t i = 0; i < g; ++i) a[i] += x[j] * l.basis[j][i];
            ++total;
            if (orbit_dims(l, a, 50, 1e-10).dense) ++dense;
        }
    EXPECT_GE(dense, total * 95 / 100);
}

TEST(Orbit, ScalingNeverIncreasesDimension) {
    const auto l = square_times_hex();
    const std::vector<CVector> pts{{cplx(std::sqrt(2.0), std::sqrt(3.0)), std::sqrt(5.0)},
                                   {std::sqrt(2.0), cplx(0.25, 0.0)},
                                   {cplx(1.0 / 3, 0.5), cplx(std::sqrt(7.0), 0.0)}};
    for (const auto& p : pts) {
        const auto h = orbit_dims(l, p, 50, 1e-10).h;
        for (int m = 2; m <= 4; ++m) {
            CVector q = p;
            for (auto& c : q) c *= static_cast<double>(m);
            EXPECT_LE(orbit_dims(l, q, 50, 1e-10).h, h);
        }
    }
}

TEST(Orbit, IndeterminateBandRaises) {
    // A relation hit at tol but with a complex form of size near tol is impossible to set up
    // directly; check the band on the rank helper itself.
    Eigen::VectorXd s(2);
    s << 1.0, 3e-10;
    EXPECT_THROW(detail::thresholded_rank(s, 1e-10), IndeterminateRank);
    s << 1.0, 1e-13;
    EXPECT_EQ(detail::thresholded_rank(s, 1e-10), 1u);
}

TEST(Orbit, SplitProduct) {
    const auto l = square_times_hex();
    const CVector alpha{cplx(std::sqrt(2.0), std::sqrt(3.0)), std::sqrt(5.0)};
    const auto sp = split_A_B(l, alpha, 50, 1e-10);
    ASSERT_EQ(sp.A_basis.size(), 1u);
    ASSERT_EQ(sp.B_basis.size(), 1u);
    EXPECT_NEAR(std::abs(sp.A_basis[0][1]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(sp.B_basis[0][0]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(sp.a[0] - alpha[0]), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(sp.b[1] - alpha[1]), 0.0, 1e-9);
    EXPECT_TRUE(sp.A_report.dense);
    EXPECT_TRUE(sp.B_report.totally_real);
}

TEST(Orbit, SplitNeedsPolarization) {
    auto l = gaussian();
    l.polarization.reset();
    EXPECT_THROW(split_A_B(l, {0.3}, 50, 1e-10), ContractError);
}

TEST(Orbit, FiniteOrderApproximations) {
    const std::vector<double> alpha{std::sqrt(2.0) - 1, 1.0 / 3};
    const auto aps = finite_order_approximations(alpha, {3, 10, 100, 1000, 10000}, IntMatrix{{3, 0}});
    ASSERT_EQ(aps.size(), 5u);
    for (const auto& a : aps) EXPECT_LE(a.distance, 0.5 / static_cast<double>(a.q) + 1e-15);
    EXPECT_TRUE(aps[0].extends);   // 3 * round(3 x) / 3 is integral
    EXPECT_FALSE(aps[2].extends);  // 3 * 41 / 100 is not
    EXPECT_EQ(aps[2].numerators[0], Int(41));
}

TEST(Orbit, SplitWithEmptyFactor) {
    const auto real = split_A_B(gaussian(), {std::sqrt(2.0)}, 50, 1e-10);
    EXPECT_EQ(real.A_basis.size(), 0u);
    ASSERT_EQ(real.B_basis.size(), 1u);
    EXPECT_TRUE(real.B_report.totally_real);
    const auto dense = split_A_B(gaussian(), {cplx(std::sqrt(2.0), std::sqrt(3.0))}, 50, 1e-10);
    EXPECT_EQ(dense.A_basis.size(), 1u);
    EXPECT_EQ(dense.B_basis.size(), 0u);
    EXPECT_TRUE(dense.A_report.dense);
}
