#pragma once

#include <mpfr.h>

#include <string>

namespace qcalab {

/// Arbitrary-precision real, value semantics over MPFR. Precision is carried
/// in decimal digits (>= 30); arithmetic results carry the minimum precision
/// of their operands and are correctly rounded at that precision (round to
/// nearest).
class BigReal {
public:
    static constexpr long kMinDigits = 30;

    explicit BigReal(long digits);
    BigReal(double value, long digits);
    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    static BigReal from_string(const std::string& s, long digits);
    static BigReal pi(long digits);

    long digits() const { return digits_; }

    BigReal operator+(const BigReal& rhs) const;
    BigReal operator-(const BigReal& rhs) const;
    BigReal operator*(const BigReal& rhs) const;
    BigReal operator/(const BigReal& rhs) const;  // throws DivisionByZeroError
    BigReal operator-() const;

    BigReal& operator+=(const BigReal& rhs) { return *this = *this + rhs; }
    BigReal& operator-=(const BigReal& rhs) { return *this = *this - rhs; }
    BigReal& operator*=(const BigReal& rhs) { return *this = *this * rhs; }
    BigReal& operator/=(const BigReal& rhs) { return *this = *this / rhs; }

    BigReal sqrt() const;  // throws NegativeSqrtError
    BigReal sin() const;
    BigReal cos() const;
    BigReal abs() const;

    int compare(const BigReal& rhs) const;
    bool operator<(const BigReal& rhs) const { return compare(rhs) < 0; }
    bool operator>(const BigReal& rhs) const { return compare(rhs) > 0; }
    bool operator<=(const BigReal& rhs) const { return compare(rhs) <= 0; }
    bool operator>=(const BigReal& rhs) const { return compare(rhs) >= 0; }
    bool operator==(const BigReal& rhs) const { return compare(rhs) == 0; }

    bool is_zero() const;
    int sign() const;  // -1, 0, +1

    double to_double() const;
    /// Full-precision decimal string, round-trippable at this precision.
    std::string to_string() const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    long result_digits(const BigReal& rhs) const;

    mpfr_t v_;
    long digits_;
};

long digits_to_bits(long digits);

}  // namespace qcalab
