#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace nnt {

/* Exact decimal number: value = mantissa * 10^(-scale).
 *
 * Canonical form: if scale > 0 the mantissa is not divisible by 10, and zero
 * is always (0, 0). Every constructor and operation re-establishes canonical
 * form, so two ExactDec values represent the same rational iff their fields
 * are equal. Addition, subtraction and multiplication are closed and exact;
 * there is no division. */
class ExactDec {
public:
  ExactDec() : mant_(0), scale_(0) {}
  ExactDec(long v) : mant_(v), scale_(0) {}           // NOLINT: implicit by design
  ExactDec(const mpz_class& v) : mant_(v), scale_(0) {}  // NOLINT
  ExactDec(mpz_class mantissa, std::uint32_t scale);

  // Strict grammar: '-'? digits ('.' digits)?  No exponents, no lone dots.
  // Non-canonical spellings ("0.120", "007") are accepted and canonicalized.
  static ExactDec parse(const std::string& text);

  const mpz_class& mantissa() const { return mant_; }
  std::uint32_t scale() const { return scale_; }

  bool is_zero() const { return mant_ == 0; }
  bool is_integer() const { return scale_ == 0; }
  bool is_negative() const { return mant_ < 0; }

  std::string str() const;

  static ExactDec pow10(std::uint32_t exponent);  // 10^exponent

  friend ExactDec operator+(const ExactDec& a, const ExactDec& b);
  friend ExactDec operator-(const ExactDec& a, const ExactDec& b);
  friend ExactDec operator*(const ExactDec& a, const ExactDec& b);
  ExactDec operator-() const;

  ExactDec& operator+=(const ExactDec& o) { return *this = *this + o; }
  ExactDec& operator-=(const ExactDec& o) { return *this = *this - o; }
  ExactDec& operator*=(const ExactDec& o) { return *this = *this * o; }

  // Sign of a - b.
  friend int cmp(const ExactDec& a, const ExactDec& b);

  bool operator==(const ExactDec& o) const {
    return scale_ == o.scale_ && mant_ == o.mant_;
  }
  bool operator!=(const ExactDec& o) const { return !(*this == o); }
  bool operator<(const ExactDec& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const ExactDec& o) const { return cmp(*this, o) <= 0; }
  bool operator>(const ExactDec& o) const { return cmp(*this, o) > 0; }
  bool operator>=(const ExactDec& o) const { return cmp(*this, o) >= 0; }

private:
  void canonicalize();

  mpz_class mant_;
  std::uint32_t scale_;
};

struct IntFracParts {
  mpz_class int_part;  // floor(a)
  ExactDec frac;       // a - floor(a), in [0, 1)
};

// Unique decomposition a = beta + lambda with beta an integer and
// lambda in [0, 1); floor semantics for negative inputs.
IntFracParts int_frac_split(const ExactDec& a);

// Number of decimal digits of lambda after the point (its canonical scale).
// frac_len(0) = 0. Pre: 0 <= lambda < 1.
std::uint32_t frac_len(const ExactDec& lambda);

// Number of decimal digits of |a| before the point; 1 for input 0.
// Pre: a is an integer.
std::uint32_t int_digit_count(const ExactDec& a);

// With (beta, lambda) = int_frac_split(a): beta * lambda * 10^frac_len(lambda).
// Packs the fractional digits back into an integer and multiplies:
// 2.55 -> 2 * 55 = 110. Total on all ExactDec inputs.
ExactDec slp_mul_activation(const ExactDec& a);

// a * 10^(-int_digit_count(a)): shifts an integer just past the decimal
// point, 138 -> 0.138. Pre: a is an integer.
ExactDec dec_activation(const ExactDec& a);

}  // namespace nnt
