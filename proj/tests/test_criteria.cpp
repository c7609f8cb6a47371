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

#include <algorithm>
#include <random>

#include "abdyn/criteria.hpp"
#include "generators.hpp"

using namespace abdyn;

namespace {

FamilyDescriptor g2(std::optional<std::size_t> k, std::optional<std::size_t> r) {
    // (T - 1)^4: lambda_1 = 1 on an abelian surface.
    return {2, pow(IntPolynomial{-1, 1}, 4), r, k, false};
}

// Minimal polynomial of a unit in a totally real cubic field; its square is a degree 6 charpoly.
const IntPolynomial kCubic{-1, -3, 0, 1};

}  // namespace

TEST(Criteria, DegenerationBound) {
    EXPECT_EQ(theoremB_bound(2, 1), 1);
    EXPECT_EQ(theoremB_bound(3, 1), 3);
    for (std::size_t g = 1; g < 6; ++g) EXPECT_EQ(theoremB_bound(g, 0), static_cast<long>(2 * g - 1));
    EXPECT_THROW(theoremB_bound(2, 3), ContractError);
}

TEST(Criteria, GenusTwoTable) {
    for (std::size_t r = 0; r <= 2; ++r) EXPECT_EQ(decide_regularizable(g2(0, r)).status, Status::Regularizable);
    EXPECT_EQ(decide_regularizable(g2(0, std::nullopt)).status, Status::Regularizable);
    EXPECT_EQ(decide_regularizable(g2(1, 0)).status, Status::Regularizable);
    const Verdict no = decide_regularizable(g2(1, 1));
    EXPECT_EQ(no.status, Status::NotRegularizable);
    EXPECT_EQ(no.reasons.front().rule, "R4");
    EXPECT_TRUE(std::any_of(no.reasons.begin(), no.reasons.end(), [](const Reason& x) { return x.rule == "R5"; }));
    const Verdict open = decide_regularizable(g2(1, 2));
    EXPECT_EQ(open.status, Status::Undetermined);
    EXPECT_EQ(open.reasons.front().rule, "R5");
}

TEST(Criteria, CyclotomicFreeDegenerationIsNotRegularizable) {
    const FamilyDescriptor d{3, kCubic * kCubic, 2, std::nullopt, false};
    ASSERT_TRUE(is_cyclotomic_free(d.charpoly));
    const Verdict v = decide_regularizable(d);
    EXPECT_EQ(v.status, Status::NotRegularizable);
    EXPECT_EQ(v.reasons.front().rule, "R3");
    EXPECT_EQ(v.reasons.front().theorem, "Theorem A(2)");
}

TEST(Criteria, UnknownTorusRankAsksForMonodromy) {
    const Verdict v = decide_regularizable({3, kCubic * kCubic, std::nullopt, std::nullopt, false});
    EXPECT_EQ(v.status, Status::Undetermined);
    EXPECT_TRUE(std::any_of(v.reasons.begin(), v.reasons.end(),
                            [](const Reason& x) { return x.detail.find("monodromy") != std::string::npos; }));
    EXPECT_EQ(decide_regularizable({3, kCubic * kCubic, 0, std::nullopt, false}).status, Status::Regularizable);
}

TEST(Criteria, FiniteOrder) {
    const FamilyDescriptor d{2, pow(IntPolynomial{1, 0, 1}, 2), 2, std::nullopt, true};
    const Verdict v = decide_regularizable(d);
    EXPECT_EQ(v.status, Status::Regularizable);
    EXPECT_EQ(v.reasons.front().rule, "R2");
}

TEST(Criteria, InconsistentDescriptors) {
    EXPECT_THROW(decide_regularizable({3, kCubic * kCubic, 1, std::nullopt, true}), ContractError);
    EXPECT_THROW(decide_regularizable({2, pow(IntPolynomial{-1, 1}, 4), 1, 1, true}), ContractError);
    EXPECT_THROW(decide_regularizable({3, kCubic * kCubic, 1, 1, false}), ContractError);
    EXPECT_THROW(decide_regularizable({2, pow(IntPolynomial{-1, 1}, 3), 1, 0, false}), ContractError);
    EXPECT_THROW(decide_regularizable({2, pow(IntPolynomial{-1, 1}, 4), 3, 0, false}), ContractError);
    EXPECT_THROW(decide_regularizable({2, pow(IntPolynomial{-1, 1}, 4), 1, 2, false}), ContractError);
}

TEST(Criteria, MaximalGrowthForcesNoDegeneration) {
    for (std::size_t g = 3; g <= 6; ++g)
        for (std::size_t r = 1; r <= g; ++r) {
            const FamilyDescriptor d{g, pow(IntPolynomial{-1, 1}, static_cast<unsigned>(2 * g)), r, g - 1, false};
            EXPECT_EQ(decide_regularizable(d).status, Status::NotRegularizable) << "g=" << g << " r=" << r;
        }
}

TEST(Criteria, VerdictStableUnderIteration) {
    std::vector<FamilyDescriptor> corpus;
    for (std::size_t k = 0; k <= 1; ++k)
        for (std::size_t r = 0; r <= 2; ++r) corpus.push_back(g2(k, r));
    corpus.push_back({3, kCubic * kCubic, 2, std::nullopt, false});
    corpus.push_back({3, kCubic * kCubic, std::nullopt, std::nullopt, false});
    corpus.push_back({2, pow(IntPolynomial{1, -1, 1}, 2), 1, std::nullopt, true});
    corpus.push_back({2, IntPolynomial{1, -3, 1} * IntPolynomial{1, 0, 1}, 1, std::nullopt, false});
    corpus.push_back({3, pow(IntPolynomial{1, 1}, 6), 3, 2, false});
    for (const auto& d : corpus) {
        const Status base = decide_regularizable(d).status;
        for (unsigned n = 2; n <= 6; ++n) {
            FamilyDescriptor it = d;
            it.charpoly = charpoly_of_power(d.charpoly, n);
            EXPECT_EQ(decide_regularizable(it).status, base) << d.charpoly.to_string() << " n=" << n;
        }
    }
}

TEST(GrowthExponentK, Examples) {
    EXPECT_EQ(growth_exponent_k(IntMatrix::identity(4)), 0u);
    EXPECT_THROW(growth_exponent_k(IntMatrix{{1, 1}, {0, 1}}), ContractError);
    const IntMatrix j2{{1, 1}, {0, 1}};
    EXPECT_EQ(growth_exponent_k(IntMatrix::block_diag({j2, j2})), 1u);
    EXPECT_EQ(growth_exponent_k(IntMatrix::block_diag({IntMatrix{{-1, 1}, {0, -1}}, IntMatrix{{-1, 1}, {0, -1}}})), 1u);
    EXPECT_THROW(growth_exponent_k(IntMatrix{{2, 1}, {1, 1}}), ContractError);
    // Agrees with the degree growth d_1 = 2k of the abelian part.
    const IntMatrix j3 = testgen::jordan_unipotent({3});
    const IntMatrix a = IntMatrix::block_diag({j3, j3});
    EXPECT_EQ(static_cast<int>(2 * growth_exponent_k(a)), first_degree_data(SemiAbelianAut(IntMatrix(0, 0), a)).d);
}

TEST(Split, Examples) {
    auto s = split_invariant_subfamily(IntMatrix::block_diag(
        {IntMatrix::companion(cyclotomic_polynomial(4)), IntMatrix::companion(IntPolynomial{1, -3, 1})}));
    EXPECT_EQ(s.L0.rank(), 2u);
    EXPECT_EQ(s.L1.rank(), 2u);
    EXPECT_EQ(s.index, 1);

    s = split_invariant_subfamily(IntMatrix{{2, 1}, {1, 1}});
    EXPECT_EQ(s.L0.rank(), 0u);
    EXPECT_EQ(s.L1.rank(), 2u);
    EXPECT_EQ(s.index, 1);

    s = split_invariant_subfamily(IntMatrix::identity(4));
    EXPECT_EQ(s.L0.rank(), 4u);
    EXPECT_EQ(s.L1.rank(), 0u);
}

TEST(Split, NonSplitExtensionHasFiniteIndex) {
    // [[1, 1], [0, A]] glues the eigenvalue-1 line to a hyperbolic block.
    const IntMatrix u{{1, 1, 0}, {0, 2, 1}, {0, 1, 1}};
    const auto s = split_invariant_subfamily(u);
    EXPECT_EQ(s.L0.rank() + s.L1.rank(), 3u);
    EXPECT_GE(s.index, 1);
    EXPECT_TRUE(s.L0.is_invariant_under(u));
    EXPECT_TRUE(s.L1.is_invariant_under(u));
    EXPECT_EQ(char_poly(restriction(s.L0, u)), (IntPolynomial{-1, 1}));
}

TEST(Split, ConjugatedBlocksRecoverBlockStructure) {
    std::mt19937 rng(31);
    const std::vector<IntPolynomial> cyclo{cyclotomic_polynomial(1), cyclotomic_polynomial(2), cyclotomic_polynomial(3),
                                           cyclotomic_polynomial(4), cyclotomic_polynomial(6)};
    const std::vector<IntPolynomial> free{{1, -3, 1}, {-1, -1, 1}, {1, -4, 1}, {-1, -1, 0, 1}};
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<IntMatrix> blocks;
        IntPolynomial p0 = IntPolynomial::one(), p1 = IntPolynomial::one();
        const std::size_t n = trial % 2 ? 6 : 4;
        std::size_t size = 0;
        while (size < n) {
            const bool want_free = rng() % 2;
            const auto& pool = want_free ? free : cyclo;
            const IntPolynomial& p = pool[rng() % pool.size()];
            if (size + static_cast<std::size_t>(p.degree()) > n) continue;
            blocks.push_back(IntMatrix::companion(p));
            (want_free ? p1 : p0) *= p;
            size += static_cast<std::size_t>(p.degree());
        }
        const auto [c, cinv] = testgen::random_elementary(rng, n);
        const IntMatrix u = c * IntMatrix::block_diag(blocks) * cinv;
        const auto s = split_invariant_subfamily(u);
        EXPECT_EQ(s.L0.rank(), static_cast<std::size_t>(p0.degree()));
        EXPECT_EQ(s.L1.rank(), static_cast<std::size_t>(p1.degree()));
        EXPECT_EQ(s.index, 1);
        EXPECT_TRUE(s.L0.check_saturated() && s.L1.check_saturated());
        EXPECT_TRUE(s.L0.is_invariant_under(u) && s.L1.is_invariant_under(u));
        EXPECT_EQ(char_poly(restriction(s.L0, u)), p0);
        EXPECT_EQ(char_poly(restriction(s.L1, u)), p1);
    }
}
