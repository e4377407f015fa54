#include "sl2r/halfint.hpp"

#include <cmath>
#include <cstdio>

#include "sl2r/error.hpp"

namespace sl2r {

HalfInt HalfInt::from_double(double v) {
    const double t = std::round(2.0 * v);
    if (!std::isfinite(v) || std::abs(2.0 * v - t) > 1e-9)
        throw InvalidInput("not an integer or half-integer: " + std::to_string(v));
    return from_twice(static_cast<int>(t));
}

HalfInt HalfInt::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.substr(slash + 1) != "2") throw InvalidInput("bad half-integer: " + s);
        try {
            return from_twice(std::stoi(s.substr(0, slash)));
        } catch (const std::exception&) {
            throw InvalidInput("bad half-integer: " + s);
        }
    }
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw InvalidInput("bad half-integer: " + s);
        return from_double(v);
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("bad half-integer: " + s);
    }
}

int HalfInt::to_int() const {
    if (!is_integer()) throw InvalidInput("half-integer used where an integer is required");
    return twice_ / 2;
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

}  // namespace sl2r
