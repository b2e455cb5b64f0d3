#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qrflip/gf.hpp"

namespace qrflip {

/// Dense polynomial over a Field with ascending-degree coefficients:
/// coeffs()[i] multiplies x^i, so a codeword vector (c_0, ..., c_{n-1}) maps
/// to c_0 + c_1 x + ... + c_{n-1} x^{n-1}.
///
/// Always normalized: the leading coefficient is nonzero and the zero
/// polynomial has no coefficients.
class Poly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = -1;

  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<Element> coeffs);

  static Poly zero(const Field& field) { return Poly(field); }
  static Poly constant(const Field& field, Element c) { return Poly(field, {c}); }
  /// c * x^k
  static Poly monomial(const Field& field, Element c, std::size_t k);
  /// Over GF(2): bit i of `bits` is the coefficient of x^i.
  static Poly from_bits(const Field& field, std::uint64_t bits);

  const Field& field() const noexcept { return field_; }
  const std::vector<Element>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Element lead() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_monic() const noexcept { return lead() == 1; }
  /// Coefficient of x^i, zero beyond the degree.
  Element operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

  /// Horner evaluation.
  Element eval(Element x) const noexcept;
  /// Multiply by x^k.
  Poly shift(std::size_t k) const;
  Poly scale(Element c) const;
  /// Formal derivative.
  Poly derivative() const;
  /// Bit-encoded form for polynomials over GF(2) of degree < 64.
  std::uint64_t to_bits() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize() noexcept;

  Field field_;
  std::vector<Element> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division, num = den * quotient + remainder with
/// degree(remainder) < degree(den). Throws DivideByZero.
DivMod divmod(const Poly& num, const Poly& den);
Poly operator%(const Poly& num, const Poly& den);

Poly gcd(Poly a, Poly b);
/// Monic least common multiple.
Poly lcm(const Poly& a, const Poly& b);
Poly make_monic(const Poly& p);

/// x^n - 1 over `field`.
Poly x_pow_minus_one(const Field& field, std::size_t n);

/// Human-readable form such as "x^3 + x + 1"; coefficients other than 1 are
/// printed as integers.
std::string to_string(const Poly& p);

}  // namespace qrflip
