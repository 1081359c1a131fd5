#include <gtest/gtest.h>

#include "cryptogame/crypto.hpp"
#include "cryptogame/kernels/kernels.hpp"

using namespace cryptogame;

TEST(Kernels, FeistelSweepMatchesSerial) {
    for (std::uint32_t master : {0x00000000u, 0xDEADBEEFu, 0x13579BDFu}) {
        const crypto::FeistelKey key(master);
        EXPECT_EQ(kernels::feistel_roundtrip_failures(key), 0u);
        EXPECT_EQ(kernels::feistel_roundtrip_failures_serial(key), 0u);
    }
}

TEST(Kernels, PreimageEnumerationOrder) {
    EXPECT_EQ(kernels::preimage_candidate(0), crypto::Bytes{0x00});
    EXPECT_EQ(kernels::preimage_candidate(255), crypto::Bytes{0xFF});
    EXPECT_EQ(kernels::preimage_candidate(256), (crypto::Bytes{0x00, 0x00}));
    EXPECT_EQ(kernels::preimage_candidate(256 + 65535), (crypto::Bytes{0xFF, 0xFF}));
    EXPECT_EQ(kernels::preimage_candidate(256 + 65536), (crypto::Bytes{0x00, 0x00, 0x00}));
}

TEST(Kernels, PreimageSearchParallelEqualsSerial) {
    crypto::Rng rng(21);
    for (int i = 0; i < 8; ++i) {
        const int bits = static_cast<int>(rng.uniform(4, 16));
        crypto::Bytes msg{rng.byte(), rng.byte()};
        const auto target = crypto::truncate_digest(crypto::toy_hash(msg), bits);
        const auto serial = kernels::find_preimage_serial(target, bits);
        const auto parallel = kernels::find_preimage(target, bits);
        ASSERT_TRUE(serial.has_value());
        ASSERT_TRUE(parallel.has_value());
        EXPECT_EQ(serial->message, parallel->message);
        EXPECT_EQ(serial->trials, parallel->trials);
        EXPECT_EQ(crypto::truncate_digest(crypto::toy_hash(parallel->message), bits), target);
    }
}

TEST(Kernels, AvalancheParallelEqualsSerial) {
    EXPECT_DOUBLE_EQ(kernels::avalanche_score(500, 16, 77), crypto::avalanche_score(500, 16, 77));
    EXPECT_DOUBLE_EQ(kernels::avalanche_score(50, 3, 1, [](crypto::ByteView) { return crypto::Digest{0}; }), 0.0);
}

TEST(Kernels, TeachingCurveGroupIsAssociative) {
    const auto curve = crypto::EcCurve::teaching_curve();
    EXPECT_EQ(kernels::enumerate_points(curve).size(), 19u);
    EXPECT_EQ(kernels::associativity_violations(curve), 0u);
    EXPECT_EQ(kernels::associativity_violations_serial(curve), 0u);
}
