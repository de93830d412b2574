#include "digitop/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace digitop {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* op) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error(std::string("rational overflow in ") + op);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    if (num == INT64_MIN || den == INT64_MIN) throw std::overflow_error("rational normalize");
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Rational Rational::operator+(const Rational& o) const {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  return Rational(narrow(n, "+"), narrow(d, "+"));
}

Rational Rational::operator-(const Rational& o) const {
  i128 n = i128(num_) * o.den_ - i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  return Rational(narrow(n, "-"), narrow(d, "-"));
}

Rational Rational::operator*(const Rational& o) const {
  i128 n = i128(num_) * o.num_;
  i128 d = i128(den_) * o.den_;
  return Rational(narrow(n, "*"), narrow(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::invalid_argument("rational division by zero");
  i128 n = i128(num_) * o.den_;
  i128 d = i128(den_) * o.num_;
  return Rational(narrow(n, "/"), narrow(d, "/"));
}

bool Rational::operator<(const Rational& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: \"" + text + "\"");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: \"" + text + "\"");
  }
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
  return (a + b) / Rational(2);
}

}  // namespace digitop
