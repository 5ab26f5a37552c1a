#include "isocone/error.hpp"
#include "isocone/ordgroup.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace isocone;

namespace {

LexVec random_lexvec(std::mt19937_64& rng, std::size_t n, int range = 3)
{
    LexVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = Rat(static_cast<long>(rng() % (2 * range + 1)) - range, static_cast<long>(rng() % 3) + 1);
    for (std::size_t i = 0; i < n; ++i)
        v[i].canonicalize();
    return v;
}

// Sign of the first nonzero coordinate of a - b.
int oracle_cmp(const LexVec& a, const LexVec& b)
{
    for (std::size_t i = 0; i < a.rank(); ++i) {
        const Rat d = a[i] - b[i];
        if (sgn(d) != 0)
            return sgn(d);
    }
    return 0;
}

} // namespace

TEST(Rat, ParseNormalizesAndFlags)
{
    bool normalized = false;
    EXPECT_EQ(parse_rat("2/4", &normalized), Rat(1, 2));
    EXPECT_TRUE(normalized);
    normalized = false;
    EXPECT_EQ(parse_rat("-3/7", &normalized), Rat(-3, 7));
    EXPECT_FALSE(normalized);
    EXPECT_EQ(to_string(parse_rat("6/3")), "2");
    EXPECT_EQ(to_string(Rat(-3, 2)), "-3/2");
}

TEST(Rat, ParseRejectsGarbage)
{
    for (const char* bad : {"", "1/0", "x", "1/2/3", "--1", "1.5", "3/"})
        EXPECT_THROW(parse_rat(bad), ParseError) << bad;
}

TEST(LexVec, CompareExamples)
{
    EXPECT_EQ(lex_cmp({0, 1}, {1, 0}), Ordering::Less);
    EXPECT_EQ(lex_cmp({2, -3}, {2, -3}), Ordering::Equal);
    EXPECT_EQ(lex_cmp({1, -100}, {0, 100}), Ordering::Greater);
    EXPECT_THROW(lex_cmp({1}, {1, 0}), DomainError);
}

TEST(LexVec, ArchimedeanClassExamples)
{
    EXPECT_EQ(archimedean_class({0, 0, 5}), 3u);
    EXPECT_EQ(archimedean_class({0, 0, 0}), std::nullopt);
    EXPECT_EQ(archimedean_class({-2, 7}), 1u);
}

TEST(LexVec, EmbedLastExamples)
{
    EXPECT_EQ(embed_last(Rat(3, 2), 3), (LexVec{0, 0, Rat(3, 2)}));
    EXPECT_EQ(embed_last(0, 2), (LexVec{0, 0}));
    EXPECT_EQ(embed_last(-1, 1), (LexVec{-1}));
    EXPECT_THROW(embed_last(1, 0), DomainError);
}

TEST(LexVec, LeftInverseExamples)
{
    const LeftInverse phi = left_inverse({0, 2, 7});
    EXPECT_EQ(phi.k, 1u);
    EXPECT_EQ(phi(LexVec{0, 2, 7}), 1);
    EXPECT_EQ(phi(LexVec{5, 3, 1}), Rat(3, 2));
    EXPECT_EQ(left_inverse({0, 0, 1})(LexVec{0, 0, 1}), 1);
    EXPECT_THROW(left_inverse({0, 0, 0}), DomainError);
    EXPECT_THROW(left_inverse({0, -1, 4}), DomainError);
}

TEST(LexVec, TextRoundTrip)
{
    bool normalized = false;
    const LexVec v = parse_lexvec("(0,2/4,-1)", &normalized);
    EXPECT_TRUE(normalized);
    EXPECT_EQ(to_string(v), "(0,1/2,-1)");
    EXPECT_EQ(parse_lexvec(to_string(v)), v);
    EXPECT_EQ(parse_lexvec("7"), LexVec{7});
    EXPECT_THROW(parse_lexvec("(1,2"), ParseError);
}

TEST(LexVecProperty, OrderMatchesOracleAndIsTranslationInvariant)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng() % 4;
        const LexVec a = random_lexvec(rng, n), b = random_lexvec(rng, n), c = random_lexvec(rng, n);
        const int o = oracle_cmp(a, b);
        EXPECT_EQ(lex_cmp(a, b), o < 0 ? Ordering::Less : o > 0 ? Ordering::Greater : Ordering::Equal);
        if (a < b)
            EXPECT_LT(a + c, b + c);
    }
}

TEST(LexVecProperty, AbsoluteValue)
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < 500; ++i) {
        const LexVec x = random_lexvec(rng, 1 + rng() % 4);
        const LexVec ax = abs(x);
        EXPECT_GE(ax.sign(), 0);
        EXPECT_TRUE(ax == x || ax == -x);
    }
}

TEST(LexVecProperty, LeftInverseIsAdditiveAndFixesMultiples)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 1 + rng() % 4;
        LexVec a = random_lexvec(rng, n);
        if (a.sign() == 0)
            continue;
        if (a.sign() < 0)
            a = -a;
        const LeftInverse phi = left_inverse(a);
        const LexVec x = random_lexvec(rng, n), y = random_lexvec(rng, n);
        EXPECT_EQ(phi(x + y), phi(x) + phi(y));
        const long m = static_cast<long>(rng() % 11) - 5;
        EXPECT_EQ(phi(a * Rat(m)), m);
    }
}

TEST(LexVecProperty, InfinitelyLargerIsTransitiveAndAntisymmetric)
{
    std::mt19937_64 rng(4);
    auto larger = [](const LexVec& x, const LexVec& y) { return *archimedean_class(x) < *archimedean_class(y); };
    for (int i = 0; i < 500; ++i) {
        const LexVec a = random_lexvec(rng, 3, 1), b = random_lexvec(rng, 3, 1), c = random_lexvec(rng, 3, 1);
        if (a.is_zero() || b.is_zero() || c.is_zero())
            continue;
        EXPECT_FALSE(larger(a, b) && larger(b, a));
        if (larger(a, b) && larger(b, c))
            EXPECT_TRUE(larger(a, c));
    }
}

TEST(LexVec, MixedRankThrows)
{
    EXPECT_THROW((void)(LexVec{1} + LexVec{1, 2}), DomainError);
}
