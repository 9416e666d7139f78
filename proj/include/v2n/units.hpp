#pragma once

#include <cmath>
#include <compare>
#include <limits>

namespace v2n {

// Thin value wrappers so that dB quantities, absolute powers and linear
// ratios cannot be mixed up at module boundaries.

struct Decibel {
    double value = 0.0;
    friend constexpr auto operator<=>(Decibel, Decibel) = default;
    friend constexpr Decibel operator+(Decibel a, Decibel b) { return {a.value + b.value}; }
    friend constexpr Decibel operator-(Decibel a, Decibel b) { return {a.value - b.value}; }
    friend constexpr Decibel operator-(Decibel a) { return {-a.value}; }
};

struct DbmPower {
    double value = 0.0;
    friend constexpr auto operator<=>(DbmPower, DbmPower) = default;
};

struct LinearRatio {
    double value = 0.0;
    friend constexpr auto operator<=>(LinearRatio, LinearRatio) = default;
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline LinearRatio db_to_linear(Decibel x) { return {std::pow(10.0, x.value / 10.0)}; }

// 0 maps to -inf dB.
inline Decibel linear_to_db(LinearRatio x) { return {10.0 * std::log10(x.value)}; }

inline double dbm_to_milliwatt(DbmPower p) { return std::pow(10.0, p.value / 10.0); }
inline DbmPower milliwatt_to_dbm(double mw) { return {10.0 * std::log10(mw)}; }

} // namespace v2n
