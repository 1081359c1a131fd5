#include <algorithm>

#include "cryptogame/crypto/classical.hpp"
#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/feistel.hpp"
#include "cryptogame/crypto/stream.hpp"
#include "cryptogame/script/script.hpp"

namespace cryptogame::script {

namespace {

crypto::Bytes run_stage(const Stage& st, crypto::Bytes data) {
    using namespace cryptogame::crypto;
    if (st.name == "rev") {
        std::reverse(data.begin(), data.end());
        return data;
    }
    if (st.name == "shift") {
        return to_bytes(caesar_shift(crypto::to_string(data), std::get<std::int64_t>(st.args[0])));
    }
    if (st.name == "sub") {
        return to_bytes(substitution_apply(crypto::to_string(data), SubstitutionKey(std::get<std::string>(st.args[0]))));
    }
    if (st.name == "xor") {
        const auto& key = std::get<Bytes>(st.args[0]);
        return stream_xor(data, repeat_key(key, data.size()));
    }
    if (st.name == "lfsr") {
        const auto seed = std::get<Bytes>(st.args[0]).at(0);
        return stream_xor(data, lfsr_keystream(LfsrConfig(seed), data.size()));
    }
    if (st.name == "feistel_dec") {
        const auto& k = std::get<Bytes>(st.args[0]);
        const FeistelKey key(static_cast<std::uint32_t>(k[0]) << 24 | static_cast<std::uint32_t>(k[1]) << 16 |
                             static_cast<std::uint32_t>(k[2]) << 8 | k[3]);
        if (data.size() < 2) throw CryptoError("feistel_dec input is missing its 2-byte IV");
        const auto iv = static_cast<std::uint16_t>(data[0] << 8 | data[1]);
        return cbc_decrypt(ByteView(data).subspan(2), key, iv);
    }
    throw CryptoError("stage '" + st.name + "' is not registered");
}

}  // namespace

crypto::Bytes evaluate(const ScriptProgram& program, crypto::ByteView input) {
    crypto::Bytes data(input.begin(), input.end());
    for (std::size_t i = 0; i < program.stages.size(); ++i) {
        try {
            data = run_stage(program.stages[i], std::move(data));
        } catch (const crypto::CryptoError& e) {
            throw ScriptError::runtime(i, "stage " + std::to_string(i + 1) + " (" + program.stages[i].name +
                                              "): " + e.what());
        }
    }
    return data;
}

}  // namespace cryptogame::script
