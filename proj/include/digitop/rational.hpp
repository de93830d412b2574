#ifndef DIGITOP_RATIONAL_HPP
#define DIGITOP_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace digitop {

// Exact rational over int64 with overflow-checked arithmetic. Denominator is
// always positive and gcd-reduced, so equality is structural. There is no
// floating point anywhere in the core; time coordinates of real homotopies
// are carried by this type.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);
  Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT: intentional

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // "num/den", or just "num" when den == 1. parse() accepts both forms.
  std::string str() const;
  static Rational parse(const std::string& text);

  static Rational midpoint(const Rational& a, const Rational& b);

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace digitop

#endif
