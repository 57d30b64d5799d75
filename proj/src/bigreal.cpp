#include "qcalab/bigreal.hpp"

#include <cmath>
#include <cstring>

#include "qcalab/errors.hpp"

namespace qcalab {

namespace {
constexpr double kLog2Of10 = 3.3219280948873626;
}

long digits_to_bits(long digits) {
    return static_cast<long>(std::ceil(double(digits) * kLog2Of10)) + 8;
}

BigReal::BigReal(long digits) : digits_(digits) {
    if (digits < kMinDigits) throw PrecisionTooLowError("BigReal precision below 30 digits");
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double value, long digits) : BigReal(digits) {
    mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) : digits_(other.digits_) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
        digits_ = other.digits_;
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    if (this != &other) {
        mpfr_swap(v_, other.v_);
        digits_ = other.digits_;
    }
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_string(const std::string& s, long digits) {
    BigReal out(digits);
    if (mpfr_set_str(out.v_, s.c_str(), 10, MPFR_RNDN) != 0 && s.empty())
        throw ValidationError("unparsable BigReal literal: " + s);
    return out;
}

BigReal BigReal::pi(long digits) {
    BigReal out(digits);
    mpfr_const_pi(out.v_, MPFR_RNDN);
    return out;
}

long BigReal::result_digits(const BigReal& rhs) const { return std::min(digits_, rhs.digits_); }

BigReal BigReal::operator+(const BigReal& rhs) const {
    BigReal out(result_digits(rhs));
    mpfr_add(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::operator-(const BigReal& rhs) const {
    BigReal out(result_digits(rhs));
    mpfr_sub(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::operator*(const BigReal& rhs) const {
    BigReal out(result_digits(rhs));
    mpfr_mul(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::operator/(const BigReal& rhs) const {
    if (mpfr_zero_p(rhs.v_)) throw DivisionByZeroError("BigReal division by zero");
    BigReal out(result_digits(rhs));
    mpfr_div(out.v_, v_, rhs.v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::operator-() const {
    BigReal out(digits_);
    mpfr_neg(out.v_, v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::sqrt() const {
    if (mpfr_sgn(v_) < 0) throw NegativeSqrtError("BigReal sqrt of negative value");
    BigReal out(digits_);
    mpfr_sqrt(out.v_, v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::sin() const {
    BigReal out(digits_);
    mpfr_sin(out.v_, v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::cos() const {
    BigReal out(digits_);
    mpfr_cos(out.v_, v_, MPFR_RNDN);
    return out;
}

BigReal BigReal::abs() const {
    BigReal out(digits_);
    mpfr_abs(out.v_, v_, MPFR_RNDN);
    return out;
}

int BigReal::compare(const BigReal& rhs) const { return mpfr_cmp(v_, rhs.v_); }

bool BigReal::is_zero() const { return mpfr_zero_p(v_) != 0; }

int BigReal::sign() const { return mpfr_sgn(v_); }

double BigReal::to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

std::string BigReal::to_string() const {
    if (mpfr_zero_p(v_)) return "0";
    if (mpfr_nan_p(v_)) return "nan";
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits_), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant = mant.substr(1);
    }
    // scientific form d.ddd...e<exp-1>
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(exp - 1);
    return out;
}

}  // namespace qcalab
