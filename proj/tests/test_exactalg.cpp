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
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "abdyn/exactalg.hpp"

using namespace abdyn;

namespace {

// det(T I - M) by the Leibniz permutation expansion over Z[T]; small n only.
IntPolynomial leibniz_char_poly(const IntMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    IntPolynomial total;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        IntPolynomial term = IntPolynomial::constant(sign);
        for (std::size_t i = 0; i < n; ++i) {
            IntPolynomial entry = IntPolynomial::constant(-m(i, perm[i]));
            if (perm[i] == i) entry += IntPolynomial::monomial(1);
            term *= entry;
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

}  // namespace

TEST(IntPolynomial, NormalizesAndMultiplies) {
    IntPolynomial p{1, 2, 0, 0};
    EXPECT_EQ(p.degree(), 1);
    EXPECT_EQ((IntPolynomial{-1, 1} * IntPolynomial{1, 1}), (IntPolynomial{-1, 0, 1}));
    EXPECT_EQ(IntPolynomial{}.degree(), -1);
    EXPECT_EQ((IntPolynomial{1, -3, 1}).to_string(), "T^2 - 3T + 1");
}

TEST(IntPolynomial, GcdAndSquarefree) {
    const IntPolynomial a = IntPolynomial{-1, 1} * IntPolynomial{1, -3, 1};
    const IntPolynomial b = IntPolynomial{-1, 1} * IntPolynomial{1, 0, 1};
    EXPECT_EQ(gcd(a, b), (IntPolynomial{-1, 1}));
    const IntPolynomial p = pow(IntPolynomial{-1, 1}, 3) * IntPolynomial{1, -3, 1};
    const auto sf = squarefree_decomposition(p);
    ASSERT_EQ(sf.size(), 2u);
    EXPECT_EQ(sf[0].first, (IntPolynomial{1, -3, 1}));
    EXPECT_EQ(sf[0].second, 1u);
    EXPECT_EQ(sf[1].first, (IntPolynomial{-1, 1}));
    EXPECT_EQ(sf[1].second, 3u);
}

TEST(CharPoly, HandExamples) {
    EXPECT_EQ(char_poly(IntMatrix{{2, 1}, {1, 1}}), (IntPolynomial{1, -3, 1}));
    EXPECT_EQ(char_poly(IntMatrix{{0, -1}, {1, 0}}), (IntPolynomial{1, 0, 1}));
    for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(char_poly(IntMatrix::identity(n)), pow(IntPolynomial{-1, 1}, n));
}

TEST(CharPoly, RejectsNonSquare) { EXPECT_THROW(char_poly(IntMatrix(2, 3)), DimensionError); }

TEST(CharPoly, MatchesLeibnizExpansion) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const IntMatrix m = random_matrix(rng, n, -9, 9);
        EXPECT_EQ(char_poly(m), leibniz_char_poly(m)) << m.to_string();
    }
    // Large entries after powering stay exact.
    const IntMatrix big = pow(IntMatrix{{2, 1, 0}, {1, 1, 1}, {0, 1, 3}}, 20);
    EXPECT_EQ(char_poly(big), leibniz_char_poly(big));
}

TEST(Determinant, AndRank) {
    EXPECT_EQ(determinant(IntMatrix{{2, 1}, {1, 1}}), 1);
    EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(IntMatrix{{0, 0, 1}, {0, 0, 2}}), 1u);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const IntMatrix m = random_matrix(rng, 4, -5, 5);
        EXPECT_EQ(determinant(m), leibniz_char_poly(m).constant_term() * ((4 % 2) ? -1 : 1));
    }
}

TEST(Cyclotomic, Polynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), (IntPolynomial{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(2), (IntPolynomial{1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(4), (IntPolynomial{1, 0, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (IntPolynomial{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (IntPolynomial{1, 0, -1, 0, 1}));
    // prod_{d | n} Phi_d = T^n - 1
    for (std::uint64_t n = 1; n <= 30; ++n) {
        IntPolynomial prod = IntPolynomial::one();
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) prod *= cyclotomic_polynomial(d);
        EXPECT_EQ(prod, IntPolynomial::monomial(n) - IntPolynomial::one());
        EXPECT_EQ(cyclotomic_polynomial(n).degree(), static_cast<int>(euler_phi(n)));
    }
}

TEST(Cyclotomic, SplitExamples) {
    auto s = cyclotomic_split(IntPolynomial{1, -1, 1});
    EXPECT_EQ(s.cyclotomic_part, (IntPolynomial{1, -1, 1}));
    EXPECT_TRUE(s.free_part.is_one());

    s = cyclotomic_split(IntPolynomial{1, -3, 1});
    EXPECT_TRUE(s.cyclotomic_part.is_one());
    EXPECT_EQ(s.free_part, (IntPolynomial{1, -3, 1}));

    s = cyclotomic_split(IntPolynomial{-1, 4, -4, 1});
    EXPECT_EQ(s.cyclotomic_part, (IntPolynomial{-1, 1}));
    EXPECT_EQ(s.free_part, (IntPolynomial{1, -3, 1}));

    EXPECT_THROW(cyclotomic_split(IntPolynomial{1, 2}), ContractError);
    EXPECT_THROW(cyclotomic_split(IntPolynomial{}), ContractError);
}

TEST(Cyclotomic, FreeAndKronecker) {
    EXPECT_TRUE(is_cyclotomic_free(IntPolynomial{1, -3, 1}));
    EXPECT_FALSE(is_cyclotomic_free(IntPolynomial{1, 0, 1}));
    EXPECT_TRUE(is_cyclotomic_free(IntPolynomial::one()));

    EXPECT_TRUE(kronecker_is_roots_of_unity(pow(IntPolynomial{-1, 1}, 2) * IntPolynomial{1, 1}));
    EXPECT_FALSE(kronecker_is_roots_of_unity(IntPolynomial{1, -3, 1}));
    EXPECT_TRUE(kronecker_is_roots_of_unity(IntPolynomial{1, 0, -1, 0, 1}));
    EXPECT_THROW(kronecker_is_roots_of_unity(IntPolynomial{0, 1}), ContractError);
}

TEST(Cyclotomic, SplitPropertiesOnRandomProducts) {
    std::mt19937 rng(11);
    const std::vector<IntPolynomial> free_pieces{{1, -3, 1}, {-1, -1, 1}, {1, -4, 1}, {-1, -2, 1}, {1, -2, -1, 1}, {-1, -1, 0, 1}};
    std::uniform_int_distribution<int> idx(1, 18), cnt(0, 3), pick(0, static_cast<int>(free_pieces.size()) - 1);
    for (int trial = 0; trial < 30; ++trial) {
        IntPolynomial cyc = IntPolynomial::one();
        for (int i = cnt(rng); i > 0; --i) cyc *= cyclotomic_polynomial(static_cast<std::uint64_t>(idx(rng)));
        const IntPolynomial fr = free_pieces[static_cast<std::size_t>(pick(rng))];
        const auto s = cyclotomic_split(cyc * fr);
        EXPECT_EQ(s.cyclotomic_part * s.free_part, cyc * fr);
        EXPECT_EQ(s.cyclotomic_part, cyc);
        EXPECT_EQ(s.free_part, fr);
        EXPECT_TRUE(cyclotomic_split(s.free_part).cyclotomic_part.is_one());
    }
}

TEST(UnipotentIndex, Examples) {
    EXPECT_EQ(unipotent_index(IntMatrix::identity(3)), 1u);
    EXPECT_EQ(unipotent_index(IntMatrix{{1, 1}, {0, 1}}), 2u);
    const IntMatrix c = IntMatrix::companion(pow(IntPolynomial{-1, 1}, 3));
    EXPECT_EQ(unipotent_index(c), 3u);
    const IntMatrix n = c - IntMatrix::identity(3);
    EXPECT_FALSE((n * n).is_zero());
    EXPECT_TRUE((n * n * n).is_zero());
    EXPECT_EQ(unipotent_index(IntMatrix{{2, 1}, {1, 1}}), 0u);
    // Eigenvalue 1 block of size 2 next to a hyperbolic block.
    const IntMatrix mixed = IntMatrix::block_diag({IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{2, 1}, {1, 1}}});
    EXPECT_EQ(unipotent_index(mixed), 2u);
}

TEST(UnipotentIndex, BoundedByMultiplicityOfOne) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const IntMatrix m = random_matrix(rng, 3 + trial % 2, -2, 2);
        unsigned mult = 0;
        IntPolynomial p = char_poly(m);
        while (auto q = exact_quotient(p, IntPolynomial{-1, 1})) {
            p = *q;
            ++mult;
        }
        EXPECT_LE(unipotent_index(m), mult);
        if (mult > 0) {
            EXPECT_GE(unipotent_index(m), 1u);
        }
    }
}

TEST(QuasiUnipotent, Examples) {
    EXPECT_EQ(quasi_unipotent_order(IntMatrix{{0, -1}, {1, 0}}), 4u);
    EXPECT_EQ(pow(IntMatrix{{0, -1}, {1, 0}}, 4), IntMatrix::identity(2));
    EXPECT_EQ(quasi_unipotent_order(IntMatrix{{1, 1}, {0, 1}}), 1u);
    EXPECT_FALSE(quasi_unipotent_order(IntMatrix{{2, 1}, {1, 1}}).has_value());
    EXPECT_THROW(quasi_unipotent_order(IntMatrix{{2, 0}, {0, 1}}), ContractError);
}

TEST(KernelLattice, Examples) {
    const IntPolynomial t_minus_1{-1, 1};
    auto l = kernel_lattice(t_minus_1, IntMatrix::identity(3));
    EXPECT_EQ(l.rank(), 3u);
    EXPECT_TRUE(l.check_saturated());

    l = kernel_lattice(t_minus_1, IntMatrix{{1, 0}, {0, -1}});
    ASSERT_EQ(l.rank(), 1u);
    EXPECT_EQ(l.basis.row(0), (IntVector{1, 0}));

    const IntMatrix m = IntMatrix::block_diag(
        {IntMatrix::companion(IntPolynomial{1, 0, 1}), IntMatrix::companion(IntPolynomial{1, -3, 1})});
    l = kernel_lattice(IntPolynomial{1, -3, 1}, m);
    ASSERT_EQ(l.rank(), 2u);
    EXPECT_EQ(l.basis, (IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}}));

    l = kernel_lattice(t_minus_1, IntMatrix{{2, 1}, {1, 1}});
    EXPECT_EQ(l.rank(), 0u);
}

TEST(KernelLattice, SaturatedUnderConjugation) {
    // Conjugating by a unimodular matrix keeps the kernel saturated.
    const IntMatrix u{{1, 2, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 3}, {0, 0, 0, 1}};
    const IntMatrix m = IntMatrix::block_diag(
        {IntMatrix::companion(IntPolynomial{1, 0, 1}), IntMatrix::companion(IntPolynomial{1, -3, 1})});
    IntMatrix uinv = u;
    {
        // inverse of a unipotent upper-triangular matrix via (I - N)^{-1} = I + N + N^2 + N^3
        const IntMatrix nil = IntMatrix::identity(4) - u;
        uinv = IntMatrix::identity(4) + nil + nil * nil + nil * nil * nil;
        ASSERT_EQ(u * uinv, IntMatrix::identity(4));
    }
    const IntMatrix conj = u * m * uinv;
    for (const auto& p : {IntPolynomial{1, 0, 1}, IntPolynomial{1, -3, 1}}) {
        const auto l = kernel_lattice(p, conj);
        EXPECT_EQ(l.rank(), 2u);
        EXPECT_TRUE(l.check_saturated());
        EXPECT_TRUE(l.is_invariant_under(conj));
    }
}

TEST(Smith, Divisors) {
    EXPECT_EQ(smith_divisors(IntMatrix{{2, 0}, {0, 3}}), (std::vector<Int>{1, 6}));
    EXPECT_EQ(smith_divisors(IntMatrix{{2, 4}, {6, 8}}), (std::vector<Int>{2, 4}));
    EXPECT_EQ(smith_divisors(IntMatrix{{1, 1, 0}}), (std::vector<Int>{1}));
    EXPECT_EQ(smith_divisors(IntMatrix{{2, 2, 0}}), (std::vector<Int>{2}));
}

TEST(EigenvalueModuli, Examples) {
    auto g = eigenvalue_moduli(IntPolynomial{1, -3, 1});
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(g[0].modulus, (3 + std::sqrt(5.0)) / 2, 1e-9);
    EXPECT_NEAR(g[1].modulus, (3 - std::sqrt(5.0)) / 2, 1e-9);
    EXPECT_EQ(g[0].multiplicity, 1u);

    g = eigenvalue_moduli(IntPolynomial{1, -1, 1});
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].modulus, 1.0);
    EXPECT_EQ(g[0].multiplicity, 2u);
    EXPECT_TRUE(g[0].exact_unit);

    g = eigenvalue_moduli(IntPolynomial{-2, 1} * IntPolynomial{-1, 1});
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(g[0].modulus, 2.0, 1e-12);
    EXPECT_EQ(g[1].modulus, 1.0);
}

TEST(EigenvalueModuli, RepeatedAndSalemRoots) {
    // (T^2 - 3T + 1)^2: double roots must stay grouped with multiplicity 2.
    auto g = eigenvalue_moduli(pow(IntPolynomial{1, -3, 1}, 2));
    ASSERT_EQ(g.size(), 2u);
    EXPECT_EQ(g[0].multiplicity, 2u);
    // Lehmer's Salem polynomial: 8 roots on the unit circle, none a root of unity.
    const IntPolynomial lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    g = eigenvalue_moduli(lehmer);
    ASSERT_EQ(g.size(), 3u);
    EXPECT_NEAR(g[0].modulus, 1.17628081825991750654, 1e-12);
    EXPECT_EQ(g[1].multiplicity, 8u);
    EXPECT_NEAR(g[1].modulus, 1.0, 1e-12);
}

TEST(EigenvalueModuli, ProductMatchesConstantTerm) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Int> c(static_cast<std::size_t>(2 + trial % 6));
        for (auto& a : c) a = d(rng);
        if (c[0] == 0) c[0] = 1;
        c.back() = 1;
        const IntPolynomial p(c);
        const auto groups = eigenvalue_moduli(p);
        double logprod = 0;
        unsigned total = 0;
        for (const auto& gr : groups) {
            logprod += gr.multiplicity * std::log(gr.modulus);
            total += gr.multiplicity;
        }
        EXPECT_EQ(total, static_cast<unsigned>(p.degree()));
        EXPECT_NEAR(std::exp(logprod), std::abs(p[0].get_d()), 1e-6 * std::abs(p[0].get_d())) << p.to_string();
        for (std::size_t i = 1; i < groups.size(); ++i) EXPECT_GT(groups[i - 1].modulus, groups[i].modulus);
    }
}

TEST(ExteriorPower, MinorsAndMultiplicativity) {
    const IntMatrix a{{2, 1, 0}, {1, 1, 1}, {0, 3, 1}};
    const IntMatrix b{{1, 0, 2}, {0, 1, 1}, {1, 1, 0}};
    EXPECT_EQ(exterior_power(a, 3), (IntMatrix{{determinant(a).get_si()}}));
    EXPECT_EQ(exterior_power(a, 1), a);
    EXPECT_EQ(exterior_power(a * b, 2), exterior_power(a, 2) * exterior_power(b, 2));
}
