#pragma once

#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>

namespace sl2r {

// Integer or half-integer, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr HalfInt(int v) : twice_(2 * v) {}

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice_ = t;
        return h;
    }
    // Throws InvalidInput unless 2v is an integer.
    static HalfInt from_double(double v);
    static HalfInt parse(const std::string& s);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    // 0 for integers, 1/2 for half-integers.
    constexpr HalfInt frac() const { return from_twice(twice_ % 2 == 0 ? 0 : 1); }
    int to_int() const;

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
    friend constexpr HalfInt operator*(int k, HalfInt h) { return from_twice(k * h.twice_); }
    friend constexpr bool operator==(HalfInt, HalfInt) = default;
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const;

private:
    int twice_ = 0;
};

constexpr HalfInt half(int numerator) { return HalfInt::from_twice(numerator); }
constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }
constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }
// True when a - b is an integer.
constexpr bool same_class(HalfInt a, HalfInt b) { return (a.twice() - b.twice()) % 2 == 0; }

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

}  // namespace sl2r
