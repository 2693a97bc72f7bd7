#include <doctest.h>

#include <numeric>
#include <set>

#include "srst/channel.hpp"
#include "srst/lrs.hpp"

using namespace srst;

namespace {

SumRankCode desk_code(std::uint32_t k) {
    return lrs_generator(FieldCtx::build(5, 2), Partition::equal(4, 2), k);
}

}  // namespace

TEST_CASE("generator rows follow the twisted evaluation pattern") {
    const SumRankCode code = desk_code(2);
    const auto& ctx = *code.ctx;
    // row 0 of every sub-codeword generator is (beta_1, ..., beta_{N/L})
    for (std::uint32_t ell = 0; ell < 2; ++ell)
        for (std::uint32_t j = 0; j < 2; ++j) CHECK(code.g(0, ell * 2 + j) == ctx.basis()[j]);
    // first block uses alpha^0 = 1, so row i is sigma^i applied entrywise
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t j = 0; j < 2; ++j)
            CHECK(code.g(i, j) == ctx.frobenius(ctx.basis()[j], i));
}

TEST_CASE("construction preconditions") {
    auto ctx = FieldCtx::build(5, 2);
    try {
        lrs_generator(FieldCtx::build(5, 1), Partition::equal(6, 6), 2);  // q = 5 <= L = 6
        FAIL("expected BadParams");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadParams);
    }
    try {
        lrs_generator(ctx, Partition::equal(8, 2), 2);  // m = 2 < N/L = 4
        FAIL("expected BadParams");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadParams);
    }
}

TEST_CASE("MSRD across all desk-scale dimensions") {
    for (std::uint32_t k = 1; k <= 4; ++k) {
        const SumRankCode code = desk_code(k);
        CHECK(min_distance(code) == 4 - k + 1);
        // MSRD implies MDS: the Hamming-partition oracle gives the same value
        CHECK(min_sum_rank_distance(*code.ctx, code.G, k, 4, Partition::hamming(4)) == 4 - k + 1);
    }
}

TEST_CASE("L=1 with m=N reproduces a Gabidulin code") {
    auto ctx = FieldCtx::build(5, 2);
    const SumRankCode code = lrs_generator(ctx, Partition::rank(2), 1);
    CHECK(min_distance(code) == 2);  // rank distance N - k + 1
}

TEST_CASE("systematize on the leading coordinates") {
    SumRankCode code = desk_code(2);
    std::vector<std::uint32_t> first = {0, 1};
    code = systematize(std::move(code), first);
    for (std::uint32_t i = 0; i < 2; ++i)
        for (std::uint32_t j = 0; j < 2; ++j) CHECK(code.g(i, j) == (i == j ? 1u : 0u));
    // idempotent
    const SumRankCode again = systematize(code, first);
    CHECK(again.G == code.G);
}

TEST_CASE("every k-subset is an information set (MDS witness)") {
    const SumRankCode code = desk_code(2);
    std::uint32_t count = 0;
    for (std::uint32_t a = 0; a < 4; ++a)
        for (std::uint32_t b = a + 1; b < 4; ++b) {
            const std::vector<std::uint32_t> s = {a, b};
            const SumRankCode sys = systematize(code, s);
            for (std::uint32_t i = 0; i < 2; ++i)
                for (std::uint32_t j = 0; j < 2; ++j) CHECK(sys.g(i, s[j]) == (i == j ? 1u : 0u));
            ++count;
        }
    CHECK(count == 6);
}

TEST_CASE("encode basics") {
    SumRankCode code = desk_code(2);
    const std::vector<Fe> zero(2, 0);
    for (auto x : encode(code, zero)) CHECK(x == 0);

    // injectivity: 625 distinct codewords
    std::set<std::vector<Fe>> words;
    for (Fe u0 = 0; u0 < 25; ++u0)
        for (Fe u1 = 0; u1 < 25; ++u1) words.insert(encode(code, std::vector<Fe>{u0, u1}));
    CHECK(words.size() == 625);

    // systematic encoding copies the message onto the information set
    std::vector<std::uint32_t> info = {1, 3};
    code = systematize(std::move(code), info);
    Rng rng(5);
    for (int it = 0; it < 30; ++it) {
        const std::vector<Fe> u = {Fe(rng.below(25)), Fe(rng.below(25))};
        const auto c = encode(code, u);
        CHECK(c[1] == u[0]);
        CHECK(c[3] == u[1]);
    }
}

TEST_CASE("row space is preserved by systematization") {
    const SumRankCode code = desk_code(2);
    std::vector<std::uint32_t> info = {2, 3};
    const SumRankCode sys = systematize(code, info);
    std::set<std::vector<Fe>> w1, w2;
    for (Fe u0 = 0; u0 < 25; ++u0)
        for (Fe u1 = 0; u1 < 25; ++u1) {
            w1.insert(encode(code, std::vector<Fe>{u0, u1}));
            w2.insert(encode(sys, std::vector<Fe>{u0, u1}));
        }
    CHECK(w1 == w2);
}
