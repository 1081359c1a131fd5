#include "cryptogame/crypto/elliptic.hpp"

#include <cctype>
#include <charconv>

#include "cryptogame/crypto/error.hpp"
#include "cryptogame/crypto/number_theory.hpp"

namespace cryptogame::crypto {

std::string to_string(const EcPoint& point) {
    if (point.infinity) return "INF";
    return "(" + std::to_string(point.x) + ", " + std::to_string(point.y) + ")";
}

std::optional<EcPoint> parse_point(std::string_view text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(static_cast<char>(std::toupper(c)));
    }
    if (compact == "INF" || compact == "O" || compact == "INFINITY") return EcPoint::at_infinity();
    std::string_view body = compact;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto parse_coord = [](std::string_view s) -> std::optional<std::int64_t> {
        std::int64_t v = 0;
        if (s.empty()) return std::nullopt;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
        return v;
    };
    const auto x = parse_coord(body.substr(0, comma));
    const auto y = parse_coord(body.substr(comma + 1));
    if (!x || !y) return std::nullopt;
    return EcPoint::affine(*x, *y);
}

EcCurve::EcCurve(std::int64_t p, std::int64_t a, std::int64_t b, EcPoint generator, std::int64_t group_order)
    : p_(p), a_(mod_floor(a, p)), b_(mod_floor(b, p)), generator_(generator), order_(group_order) {
    if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) throw CryptoError("curve field modulus must be an odd prime");
    if (mod_floor(4 * a_ * a_ % p * a_ + 27 * b_ % p * b_, p) == 0) throw CryptoError("singular curve: 4a^3 + 27b^2 = 0");
    if (generator_.infinity || !contains(generator_)) throw CryptoError("generator is not an affine point on the curve");
    if (order_ < 1 || !ec_mul(*this, order_, generator_).infinity) {
        throw CryptoError("group order does not annihilate the generator");
    }
}

EcCurve EcCurve::teaching_curve() {
    return EcCurve(17, 2, 2, EcPoint::affine(5, 1), 19);
}

bool EcCurve::contains(const EcPoint& point) const {
    if (point.infinity) return true;
    if (point.x < 0 || point.x >= p_ || point.y < 0 || point.y >= p_) return false;
    const std::int64_t lhs = point.y * point.y % p_;
    const std::int64_t rhs = mod_floor((point.x * point.x % p_ * point.x + a_ * point.x + b_) % p_, p_);
    return lhs == rhs;
}

EcPoint ec_negate(const EcCurve& curve, const EcPoint& point) {
    if (point.infinity) return point;
    return EcPoint::affine(point.x, mod_floor(-point.y, curve.p()));
}

namespace {

void require_on_curve(const EcCurve& curve, const EcPoint& point) {
    if (!curve.contains(point)) throw CryptoError("point " + to_string(point) + " is not on the curve");
}

}  // namespace

EcPoint ec_add(const EcCurve& curve, const EcPoint& lhs, const EcPoint& rhs) {
    require_on_curve(curve, lhs);
    require_on_curve(curve, rhs);
    if (lhs.infinity) return rhs;
    if (rhs.infinity) return lhs;
    const std::int64_t p = curve.p();
    if (lhs.x == rhs.x && mod_floor(lhs.y + rhs.y, p) == 0) return EcPoint::at_infinity();

    std::int64_t slope = 0;
    if (lhs == rhs) {
        slope = (3 * lhs.x % p * lhs.x + curve.a()) % p * mod_inverse(2 * lhs.y, p) % p;
    } else {
        slope = mod_floor(rhs.y - lhs.y, p) * mod_inverse(mod_floor(rhs.x - lhs.x, p), p) % p;
    }
    const std::int64_t x = mod_floor(slope * slope - lhs.x - rhs.x, p);
    const std::int64_t y = mod_floor(slope * (lhs.x - x) - lhs.y, p);
    return EcPoint::affine(x, y);
}

EcPoint ec_mul(const EcCurve& curve, std::int64_t k, const EcPoint& point) {
    require_on_curve(curve, point);
    if (k < 0) throw CryptoError("scalar must be non-negative");
    EcPoint result = EcPoint::at_infinity();
    EcPoint addend = point;
    while (k > 0) {
        if (k & 1) result = ec_add(curve, result, addend);
        addend = ec_add(curve, addend, addend);
        k >>= 1;
    }
    return result;
}

}  // namespace cryptogame::crypto
