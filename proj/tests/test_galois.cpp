#include <doctest.h>

#include "srst/channel.hpp"
#include "srst/galois.hpp"

using namespace srst;

TEST_CASE("prime field arithmetic") {
    auto ctx = FieldCtx::build(5, 1);
    CHECK(ctx->add(2, 4) == 1);
    CHECK(ctx->mul(3, 4) == 2);
    CHECK(ctx->sub(1, 3) == 3);
    CHECK(ctx->inv(2) == 3);
}

TEST_CASE("composite base field is rejected") {
    try {
        FieldCtx::build(4, 2);
        FAIL("expected NotPrime");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotPrime);
    }
}

TEST_CASE("modulus of F_25 has no roots in F_5") {
    auto ctx = FieldCtx::build(5, 2);
    const auto& mod = ctx->modulus();
    REQUIRE(mod.size() == 3);
    CHECK(mod[2] == 1);
    for (std::uint32_t x = 0; x < 5; ++x) {
        const std::uint32_t val = (mod[0] + mod[1] * x + mod[2] * x * x) % 5;
        CHECK(val != 0);
    }
}

TEST_CASE("frobenius fixed points and iteration") {
    auto ctx = FieldCtx::build(5, 2);
    CHECK(ctx->frobenius(0) == 0);
    CHECK(ctx->frobenius(1) == 1);
    std::uint32_t fixed = 0;
    for (Fe a = 0; a < 25; ++a) {
        CHECK(ctx->frobenius(a, 2) == a);  // sigma^m = id
        if (ctx->frobenius(a) == a) {
            ++fixed;
            CHECK(ctx->in_base_field(a));
            CHECK(a % 5 == a);  // embedded base field = constant digits
        }
    }
    CHECK(fixed == 5);
}

TEST_CASE("frobenius is a ring homomorphism (exhaustive at 625)") {
    auto ctx = FieldCtx::build(5, 2);
    bool ok = true;
    for (Fe a = 0; a < 25 && ok; ++a) {
        for (Fe b = 0; b < 25; ++b) {
            if (ctx->frobenius(ctx->mul(a, b)) != ctx->mul(ctx->frobenius(a), ctx->frobenius(b)) ||
                ctx->frobenius(ctx->add(a, b)) != ctx->add(ctx->frobenius(a), ctx->frobenius(b))) {
                ok = false;
                break;
            }
        }
    }
    CHECK(ok);
}

TEST_CASE("truncated norm") {
    auto ctx = FieldCtx::build(5, 2);
    for (Fe a = 0; a < 25; ++a) {
        CHECK(ctx->truncated_norm(a, 0) == 1);
        CHECK(ctx->truncated_norm(a, 1) == a);
        CHECK(ctx->in_base_field(ctx->truncated_norm(a, 2)));  // N_m maps into F_q
    }
}

TEST_CASE("composition operator D") {
    auto ctx = FieldCtx::build(5, 2);
    for (Fe a = 0; a < 25; ++a) {
        for (Fe b = 0; b < 25; ++b) {
            CHECK(ctx->op_d(a, 0, b) == b);
            CHECK(ctx->op_d(a, 1, b) == ctx->mul(ctx->frobenius(b), a));
            for (std::uint32_t i = 0; i <= 4; ++i) {
                // D_a^1 after D_a^i equals D_a^{i+1}
                CHECK(ctx->op_d(a, 1, ctx->op_d(a, i, b)) == ctx->op_d(a, i + 1, b));
            }
        }
    }
}

TEST_CASE("primitive element order") {
    auto ctx = FieldCtx::build(5, 2);
    std::vector<bool> seen(25, false);
    Fe x = 1;
    std::uint32_t count = 0;
    do {
        CHECK(!seen[x]);
        seen[x] = true;
        x = ctx->mul(x, ctx->alpha());
        ++count;
    } while (x != 1);
    CHECK(count == 24);
}

TEST_CASE("matrix representation basics") {
    auto ctx = FieldCtx::build(5, 2);
    const std::vector<Fe> zero(3, 0);
    const FqMatrix z = matrix_rep(*ctx, zero);
    for (auto v : z.a) CHECK(v == 0);

    // rep then un-rep is the identity
    Rng rng(42);
    for (int it = 0; it < 50; ++it) {
        std::vector<Fe> c(4);
        for (auto& x : c) x = Fe(rng.below(25));
        CHECK(matrix_unrep(*ctx, matrix_rep(*ctx, c)) == c);
    }
}

TEST_CASE("matrix representation is F_q-linear") {
    auto ctx = FieldCtx::build(5, 2);
    Rng rng(7);
    for (int it = 0; it < 50; ++it) {
        const std::size_t s = 3, t = 2;
        std::vector<Fe> c(s), d(s);
        for (auto& x : c) x = Fe(rng.below(25));
        for (auto& x : d) x = Fe(rng.below(25));
        FqMatrix A(s, t), B(s, t);
        for (auto& x : A.a) x = std::uint32_t(rng.below(5));
        for (auto& x : B.a) x = std::uint32_t(rng.below(5));

        // cA + dB over the field, column j: sum_i c_i A(i,j) with base-field scalars
        std::vector<Fe> lhs(t, 0);
        for (std::size_t j = 0; j < t; ++j)
            for (std::size_t i = 0; i < s; ++i) {
                lhs[j] = ctx->add(lhs[j], ctx->mul(c[i], A.at(i, j)));
                lhs[j] = ctx->add(lhs[j], ctx->mul(d[i], B.at(i, j)));
            }
        const FqMatrix want = matrix_rep(*ctx, lhs);

        const FqMatrix MC = matrix_rep(*ctx, c), MD = matrix_rep(*ctx, d);
        FqMatrix got(ctx->m(), t);
        for (std::uint32_t r = 0; r < ctx->m(); ++r)
            for (std::size_t j = 0; j < t; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t i = 0; i < s; ++i)
                    acc += std::uint64_t(MC.at(r, i)) * A.at(i, j) + std::uint64_t(MD.at(r, i)) * B.at(i, j);
                got.at(r, j) = std::uint32_t(acc % 5);
            }
        CHECK(got == want);
    }
}

TEST_CASE("rank is basis independent") {
    auto ctx = FieldCtx::build(5, 2);
    // second basis (1, x+1); coordinate matrix [[1,1],[0,1]] is invertible
    const std::vector<Fe> basis2 = {1, ctx->add(ctx->basis()[1], 1)};
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        std::vector<Fe> c(3);
        for (auto& x : c) x = Fe(rng.below(25));
        const auto r1 = rank_fp(matrix_rep(*ctx, c), 5);
        const auto r2 = rank_fp(matrix_rep(*ctx, c, basis2), 5);
        CHECK(r1 == r2);
    }
}

TEST_CASE("larger field without lookup tables") {
    auto ctx = FieldCtx::build(271, 2);  // 73441 elements, above the table limit
    CHECK(ctx->size() == 73441u);
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        const Fe a = Fe(rng.below(ctx->size()));
        const Fe b = Fe(rng.below(ctx->size()));
        CHECK(ctx->mul(a, b) == ctx->mul(b, a));
        if (a) CHECK(ctx->mul(a, ctx->inv(a)) == 1);
        CHECK(ctx->frobenius(ctx->mul(a, b)) == ctx->mul(ctx->frobenius(a), ctx->frobenius(b)));
        CHECK(ctx->frobenius(a, 2) == a);
    }
}
