#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cryptogame::crypto {

struct EcPoint {
    bool infinity = true;
    std::int64_t x = 0;
    std::int64_t y = 0;

    static EcPoint at_infinity() { return {}; }
    static EcPoint affine(std::int64_t x, std::int64_t y) { return {false, x, y}; }

    friend bool operator==(const EcPoint&, const EcPoint&) = default;
};

/// "INF" or "(x, y)"
std::string to_string(const EcPoint& point);

/// Accepts "INF", "O", "(x,y)" or "x,y" with optional whitespace.
std::optional<EcPoint> parse_point(std::string_view text);

/// y^2 = x^3 + ax + b over F_p, with a generator of known order.
class EcCurve {
public:
    EcCurve(std::int64_t p, std::int64_t a, std::int64_t b, EcPoint generator, std::int64_t group_order);

    /// y^2 = x^3 + 2x + 2 over F_17, G = (5, 1), 19 points.
    static EcCurve teaching_curve();

    std::int64_t p() const { return p_; }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    const EcPoint& generator() const { return generator_; }
    std::int64_t group_order() const { return order_; }

    bool contains(const EcPoint& point) const;

private:
    std::int64_t p_;
    std::int64_t a_;
    std::int64_t b_;
    EcPoint generator_;
    std::int64_t order_;
};

EcPoint ec_negate(const EcCurve& curve, const EcPoint& point);

/// Affine chord-and-tangent addition. Throws CryptoError on off-curve input.
EcPoint ec_add(const EcCurve& curve, const EcPoint& lhs, const EcPoint& rhs);

/// Double-and-add, k >= 0.
EcPoint ec_mul(const EcCurve& curve, std::int64_t k, const EcPoint& point);

}  // namespace cryptogame::crypto
