#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace dogm {

/* Floored integer division (quotient toward -infinity), b > 0. */
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    const std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    return a - floor_div(a, b) * b;
}

/* Wrap an angle to (-pi, pi]. */
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi)
        a += two_pi;
    else if (a > std::numbers::pi)
        a -= two_pi;
    return a;
}

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

template <typename T>
inline T sigmoid(T x) {
    return T(1) / (T(1) + std::exp(-x));
}

/* Pairwise-tree sum: fixed reduction order regardless of parallelism,
 * and better conditioned than a running sum in 32-bit. */
template <typename T>
T pairwise_sum(std::span<const T> v) {
    if (v.size() <= 8) {
        T s = T(0);
        for (const T& x : v)
            s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

} // namespace dogm
