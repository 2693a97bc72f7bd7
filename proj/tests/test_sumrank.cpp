#include <doctest.h>

#include "srst/channel.hpp"
#include "srst/lrs.hpp"

using namespace srst;

TEST_CASE("weights at the partition extremes") {
    auto ctx = FieldCtx::build(5, 2);
    const std::vector<Fe> zero(4, 0);
    CHECK(sum_rank_weight(*ctx, zero, Partition::equal(4, 2)) == 0);

    Rng rng(1);
    for (int it = 0; it < 200; ++it) {
        std::vector<Fe> c(4);
        for (auto& x : c) x = Fe(rng.below(25));
        // all-ones partition recovers Hamming weight
        CHECK(sum_rank_weight(*ctx, c, Partition::hamming(4)) == hamming_weight(c));
        // single-block partition is the rank weight
        CHECK(sum_rank_weight(*ctx, c, Partition::rank(4)) == rank_fp(matrix_rep(*ctx, c), 5));
    }
}

TEST_CASE("length mismatch is rejected") {
    auto ctx = FieldCtx::build(5, 2);
    const std::vector<Fe> c(3, 0);
    try {
        sum_rank_weight(*ctx, c, Partition::equal(4, 2));
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::LengthMismatch);
    }
}

TEST_CASE("rank <= sum-rank <= Hamming for random pairs") {
    auto ctx = FieldCtx::build(5, 2);
    Rng rng(2);
    for (int it = 0; it < 300; ++it) {
        std::vector<Fe> c(4), d(4);
        for (auto& x : c) x = Fe(rng.below(25));
        for (auto& x : d) x = Fe(rng.below(25));
        const auto dr = sum_rank_distance(*ctx, c, d, Partition::rank(4));
        const auto dsr = sum_rank_distance(*ctx, c, d, Partition::equal(4, 2));
        const auto dh = sum_rank_distance(*ctx, c, d, Partition::hamming(4));
        CHECK(dr <= dsr);
        CHECK(dsr <= dh);
    }
}

TEST_CASE("triangle inequality on random triples") {
    auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    Rng rng(3);
    for (int it = 0; it < 300; ++it) {
        std::vector<Fe> a(4), b(4), c(4);
        for (auto& x : a) x = Fe(rng.below(25));
        for (auto& x : b) x = Fe(rng.below(25));
        for (auto& x : c) x = Fe(rng.below(25));
        CHECK(sum_rank_distance(*ctx, a, c, part) <=
              sum_rank_distance(*ctx, a, b, part) + sum_rank_distance(*ctx, b, c, part));
    }
}

TEST_CASE("brute-force minimum distance of the [4,2]_25 LRS code") {
    auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    const SumRankCode code = lrs_generator(ctx, part, 2);
    CHECK(min_distance(code) == 3);  // = N - k + 1
    // parallel kernel and serial reference agree
    CHECK(min_sum_rank_distance_serial(*ctx, code.G, 2, 4, part) == 3);
}

TEST_CASE("full space has distance 1") {
    auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    const SumRankCode code = lrs_generator(ctx, part, 4);
    CHECK(min_distance(code) == 1);
}

TEST_CASE("refinement does not decrease the distance") {
    auto ctx = FieldCtx::build(5, 2);
    const SumRankCode code = lrs_generator(ctx, Partition::equal(4, 2), 2);
    const auto coarse = min_sum_rank_distance(*ctx, code.G, 2, 4, Partition::rank(4));
    const auto mid = min_sum_rank_distance(*ctx, code.G, 2, 4, Partition::equal(4, 2));
    const auto fine = min_sum_rank_distance(*ctx, code.G, 2, 4, Partition::hamming(4));
    CHECK(coarse <= mid);
    CHECK(mid <= fine);
}

TEST_CASE("minimum distance is basis independent") {
    auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    const SumRankCode code = lrs_generator(ctx, part, 2);
    const std::vector<Fe> basis2 = {1, ctx->add(ctx->basis()[1], 2)};
    std::uint32_t best = 5;
    for (std::uint32_t msg = 1; msg < 625; ++msg) {
        std::vector<Fe> u = {Fe(msg % 25), Fe(msg / 25)};
        const auto c = encode(code, u);
        std::uint32_t w = 0;
        w += rank_fp(matrix_rep(*ctx, std::span(c).first(2), basis2), 5);
        w += rank_fp(matrix_rep(*ctx, std::span(c).subspan(2), basis2), 5);
        best = std::min(best, w);
    }
    CHECK(best == min_distance(code));
}

TEST_CASE("enumeration limit guards the oracle") {
    auto ctx = FieldCtx::build(5, 2);
    const SumRankCode code = lrs_generator(ctx, Partition::equal(4, 2), 4);
    try {
        min_sum_rank_distance(*ctx, code.G, 4, 4, code.part, 1000);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TooLarge);
    }
}

TEST_CASE("singleton bound") {
    auto ctx = FieldCtx::build(5, 2);
    const Partition part = Partition::equal(4, 2);
    CHECK(singleton_bound(*ctx, part, 1) == 390625);  // q^{mN}: whole space
    CHECK(singleton_bound(*ctx, part, 4) == 25);      // q^m
    CHECK(singleton_bound(*ctx, part, 3) == 625);     // 5^4
}

TEST_CASE("extension degree bound") {
    CHECK(check_extension_degree(Partition::equal(4, 2), 2));
    CHECK_FALSE(check_extension_degree(Partition::equal(4, 1), 2));  // MRD needs m >= 4
    CHECK(check_extension_degree(Partition::equal(4, 4), 1));
}
