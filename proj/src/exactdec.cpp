#include "nnt/exactdec.hpp"

#include <limits>
#include <utility>

#include "nnt/error.hpp"

namespace nnt {

namespace {

mpz_class pow10_z(std::uint32_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

ExactDec::ExactDec(mpz_class mantissa, std::uint32_t scale)
    : mant_(std::move(mantissa)), scale_(scale) {
  canonicalize();
}

void ExactDec::canonicalize() {
  if (mant_ == 0) {
    scale_ = 0;
    return;
  }
  if (scale_ == 0) return;
  // Multiplicity of 10 in the mantissa; strip at most `scale_` of them.
  static const mpz_class ten = 10;
  mpz_class stripped;
  mp_bitcnt_t t =
      mpz_remove(stripped.get_mpz_t(), mant_.get_mpz_t(), ten.get_mpz_t());
  if (t == 0) return;
  std::uint32_t s = t < scale_ ? static_cast<std::uint32_t>(t) : scale_;
  if (static_cast<std::uint32_t>(t) > s)
    stripped *= pow10_z(static_cast<std::uint32_t>(t) - s);
  mant_ = std::move(stripped);
  scale_ -= s;
}

ExactDec ExactDec::parse(const std::string& text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  std::string digits;
  std::size_t int_len = 0;
  while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
    digits += text[i];
    ++i;
  }
  int_len = digits.size();
  if (int_len == 0)
    throw Error(Errc::parse, "bad decimal literal '" + text + "'");
  std::uint32_t scale = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      digits += text[i];
      ++i;
    }
    if (i == frac_start)
      throw Error(Errc::parse, "bad decimal literal '" + text + "'");
    scale = static_cast<std::uint32_t>(i - frac_start);
  }
  if (i != text.size())
    throw Error(Errc::parse, "bad decimal literal '" + text + "'");
  mpz_class mant(digits, 10);
  if (negative) mant = -mant;
  return ExactDec(std::move(mant), scale);
}

std::string ExactDec::str() const {
  if (scale_ == 0) return mant_.get_str();
  mpz_class a = abs(mant_);
  std::string digits = a.get_str();
  std::string out;
  if (mant_ < 0) out += '-';
  if (digits.size() <= scale_) {
    out += "0.";
    out.append(scale_ - digits.size(), '0');
    out += digits;
  } else {
    out.append(digits, 0, digits.size() - scale_);
    out += '.';
    out.append(digits, digits.size() - scale_, scale_);
  }
  return out;
}

ExactDec ExactDec::pow10(std::uint32_t exponent) {
  return ExactDec(pow10_z(exponent), 0);
}

ExactDec operator+(const ExactDec& a, const ExactDec& b) {
  std::uint32_t s = std::max(a.scale_, b.scale_);
  mpz_class m = a.mant_ * pow10_z(s - a.scale_) + b.mant_ * pow10_z(s - b.scale_);
  return ExactDec(std::move(m), s);
}

ExactDec operator-(const ExactDec& a, const ExactDec& b) {
  std::uint32_t s = std::max(a.scale_, b.scale_);
  mpz_class m = a.mant_ * pow10_z(s - a.scale_) - b.mant_ * pow10_z(s - b.scale_);
  return ExactDec(std::move(m), s);
}

ExactDec operator*(const ExactDec& a, const ExactDec& b) {
  std::uint64_t s = std::uint64_t(a.scale_) + std::uint64_t(b.scale_);
  if (s > std::numeric_limits<std::uint32_t>::max())
    throw Error(Errc::evaluation, "decimal scale overflow in multiplication");
  return ExactDec(a.mant_ * b.mant_, static_cast<std::uint32_t>(s));
}

ExactDec ExactDec::operator-() const {
  ExactDec r;
  r.mant_ = -mant_;
  r.scale_ = scale_;
  return r;
}

int cmp(const ExactDec& a, const ExactDec& b) {
  int sa = sgn(a.mant_), sb = sgn(b.mant_);
  if (sa != sb) return sa < sb ? -1 : 1;
  std::uint32_t s = std::max(a.scale_, b.scale_);
  mpz_class la = a.mant_ * pow10_z(s - a.scale_);
  mpz_class lb = b.mant_ * pow10_z(s - b.scale_);
  return ::cmp(la, lb);
}

IntFracParts int_frac_split(const ExactDec& a) {
  if (a.is_integer()) return {a.mantissa(), ExactDec()};
  mpz_class q, r;
  mpz_class p = pow10_z(a.scale());
  // Floor division keeps the remainder non-negative, so frac lands in [0, 1).
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.mantissa().get_mpz_t(),
              p.get_mpz_t());
  return {std::move(q), ExactDec(std::move(r), a.scale())};
}

std::uint32_t frac_len(const ExactDec& lambda) {
  if (lambda.is_negative() || lambda >= ExactDec(1))
    throw Error(Errc::precondition,
                "frac_len expects a value in [0, 1), got " + lambda.str());
  return lambda.scale();
}

std::uint32_t int_digit_count(const ExactDec& a) {
  if (!a.is_integer())
    throw Error(Errc::precondition,
                "int_digit_count expects an integer, got " + a.str());
  if (a.is_zero()) return 1;
  mpz_class m = abs(a.mantissa());
  // mpz_sizeinbase may overshoot by one for base 10; correct by comparison.
  std::size_t n = mpz_sizeinbase(m.get_mpz_t(), 10);
  if (n > 1 && m < pow10_z(static_cast<std::uint32_t>(n - 1))) --n;
  return static_cast<std::uint32_t>(n);
}

ExactDec slp_mul_activation(const ExactDec& a) {
  IntFracParts p = int_frac_split(a);
  if (p.frac.is_zero()) return ExactDec();
  // lambda * 10^frac_len(lambda) is exactly lambda's mantissa.
  return ExactDec(p.int_part * p.frac.mantissa(), 0);
}

ExactDec dec_activation(const ExactDec& a) {
  if (!a.is_integer())
    throw Error(Errc::precondition,
                "dec_activation expects an integer, got " + a.str());
  if (a.is_zero()) return ExactDec();
  return ExactDec(a.mantissa(), int_digit_count(a));
}

}  // namespace nnt
