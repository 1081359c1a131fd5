#pragma once

#include "cryptogame/crypto/bytes.hpp"
#include "cryptogame/crypto/classical.hpp"
#include "cryptogame/crypto/elliptic.hpp"
#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/escrow.hpp"
#include "cryptogame/crypto/feistel.hpp"
#include "cryptogame/crypto/hash.hpp"
#include "cryptogame/crypto/number_theory.hpp"
#include "cryptogame/crypto/public_key.hpp"
#include "cryptogame/crypto/rng.hpp"
#include "cryptogame/crypto/stream.hpp"
