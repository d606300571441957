#include "mincut/rational.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace mincut {

namespace {

__int128 abs128(__int128 x) { return x < 0 ? -x : x; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num) : num_(num), den_(1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_,
                             static_cast<__int128>(a.den_) * b.num_);
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::size_t used = 0;
    const std::int64_t p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("bad rational: " + text);
    const std::string rest = text.substr(slash + 1);
    const std::int64_t q = std::stoll(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("bad rational: " + text);
    return Rational(p, q);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) {
    std::size_t used = 0;
    const std::int64_t p = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("bad rational: " + text);
    return Rational(p);
  }
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("bad decimal: " + text);
  }
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const bool negative = !whole.empty() && whole[0] == '-';
  std::int64_t w = 0;
  if (!whole.empty() && whole != "-" && whole != "+") {
    std::size_t used = 0;
    w = std::stoll(whole, &used);
    if (used != whole.size()) throw std::invalid_argument("bad decimal: " + text);
  }
  const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
  const Rational magnitude = Rational(negative ? -w : w) + Rational(f, den);
  return negative ? -magnitude : magnitude;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace mincut
