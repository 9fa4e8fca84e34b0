#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gfbt/bounds.hpp"
#include "gfbt/mc_sim.hpp"
#include "gfbt/philox.hpp"
#include "gfbt/special_fn.hpp"

using namespace gfbt;

TEST_CASE("philox4x32-10 reference vectors") {
    // known-answer vectors from the Random123 distribution
    auto r = philox4x32(0, 0, 0);
    CHECK(r == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du,
                                            0xbc57ac4cu, 0x9b00dbd8u});
    r = philox4x32(~0ull, ~0ull, ~0ull);
    CHECK(r == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu,
                                            0xa20bc7c6u, 0x6d5451fdu});
    const std::uint64_t ctr_lo = (0x85a308d3ull << 32) | 0x243f6a88ull;
    const std::uint64_t ctr_hi = (0x03707344ull << 32) | 0x13198a2eull;
    const std::uint64_t key = (0x299f31d0ull << 32) | 0xa4093822ull;
    r = philox4x32(key, ctr_hi, ctr_lo);
    CHECK(r == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu,
                                            0x5001e420u, 0x24126ea1u});
}

TEST_CASE("noiseless limit produces no frame errors") {
    const auto g = canned_code("hamming_7_4");
    const auto est = simulate_fer(g, 1e-6, 10000, 7);
    CHECK(est.errors == 0);
    CHECK(est.fer == 0.0);
    CHECK(est.ci95_half_width == 0.0);
}

TEST_CASE("repetition [3,1] matches the closed form Q(sqrt(3)/sigma)") {
    // one nonzero codeword: the pairwise probability is exact, not a bound
    const auto g = canned_code("repetition_3");
    const auto est = simulate_fer(g, 1.0, 1000000, 2024);
    const double exact = q_function(std::sqrt(3.0));  // 0.041632...
    CHECK(std::fabs(est.fer - exact) <= 3.0 * est.ci95_half_width);
    CHECK(est.trials == 1000000);
    CHECK(est.fer ==
          doctest::Approx(static_cast<double>(est.errors) / est.trials));
    const double ci = 1.96 * std::sqrt(est.fer * (1.0 - est.fer) / 1e6);
    CHECK(est.ci95_half_width == doctest::Approx(ci));
}

TEST_CASE("error counts are identical across worker counts") {
    const auto g = canned_code("hamming_7_4");
    const auto ch = ChannelParams::from_ebn0_db(3.0, 7, 4.0 / 7.0);
    const auto one = simulate_fer(g, ch.sigma, 20000, 99, 1);
    const auto two = simulate_fer(g, ch.sigma, 20000, 99, 2);
    const auto eight = simulate_fer(g, ch.sigma, 20000, 99, 8);
    CHECK(one.errors == two.errors);
    CHECK(one.errors == eight.errors);
    CHECK(one.errors > 0);  // 3 dB is noisy enough to see errors
}

TEST_CASE("different seeds explore different noise") {
    const auto g = canned_code("hamming_7_4");
    const auto a = simulate_fer(g, 0.8, 50000, 1);
    const auto b = simulate_fer(g, 0.8, 50000, 2);
    CHECK(a.errors != b.errors);
}

TEST_CASE("estimates sit below the analytic upper bounds") {
    const auto w = weight_enumerator(canned_code("hamming_7_4"));
    const auto ch = ChannelParams::from_ebn0_db(4.0, 7, 4.0 / 7.0);
    const auto est = simulate_fer(canned_code("hamming_7_4"), ch.sigma,
                                  200000, 11);
    const double slack = est.fer - 3.0 * est.ci95_half_width;
    CHECK(std::min(union_bound(w, ch), 1.0) >= slack);
    CHECK(sphere_bound(w, ch).value >= slack);
    CHECK(tangential_bound(w, ch).value >= slack);
    CHECK(tangential_sphere_bound(w, ch).value >= slack);
    // and the TSB is not absurdly loose: within a small factor of the truth
    CHECK(tangential_sphere_bound(w, ch).value <= 5.0 * est.fer + 1e-3);
}

TEST_CASE("golay [23,12] fits the brute-force budget") {
    const auto g = canned_code("golay_23_12");
    const auto est = simulate_fer(g, 0.6, 20000, 5);
    CHECK(est.trials == 20000);
    CHECK(est.errors > 0);
    CHECK(est.fer < 0.2);
}

TEST_CASE("oversized dimension is rejected") {
    std::vector<std::string> rows;
    for (int i = 0; i < 17; ++i) {
        std::string row(17, '0');
        row[i] = '1';
        rows.push_back(row);
    }
    const GeneratorMatrix g(17, 17, rows);
    CHECK_THROWS_AS(simulate_fer(g, 1.0, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_fer(canned_code("repetition_3"), 1.0, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_fer(canned_code("repetition_3"), -1.0, 10, 0),
                    std::invalid_argument);
}
