#pragma once

#include <cmath>
#include <stdexcept>

namespace stf {

/// Direction on the unit sphere. Construction from raw components rejects
/// vectors whose norm deviates from 1 by more than 1e-9 and renormalizes
/// the rest, so stored components satisfy |n|^2 = 1 to rounding.
struct UnitVec {
    double x = 0.0, y = 0.0, z = 1.0;

    UnitVec() = default;
    UnitVec(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        const double n2 = x * x + y * y + z * z;
        if (std::abs(n2 - 1.0) > 1e-9)
            throw std::invalid_argument("UnitVec: components are not unit length");
        const double inv = 1.0 / std::sqrt(n2);
        x *= inv; y *= inv; z *= inv;
    }

    static UnitVec from_angles(double theta, double phi) {
        return UnitVec(std::sin(theta) * std::cos(phi),
                       std::sin(theta) * std::sin(phi),
                       std::cos(theta));
    }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double dot(const UnitVec& o) const { return x * o.x + y * o.y + z * o.z; }

    double theta() const { return std::acos(std::max(-1.0, std::min(1.0, z))); }
    double phi() const { return std::atan2(y, x); }
};

} // namespace stf
