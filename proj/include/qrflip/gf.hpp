#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qrflip/error.hpp"

namespace qrflip {

/// Field element as the bit vector of its residue-class representative:
/// bit i is the coefficient of x^i.
using Element = std::uint32_t;

/// Binary-extension field GF(2^m) backed by exponent/logarithm tables.
///
/// The tables are built once by repeated multiplication with x modulo the
/// primitive polynomial and shared between copies, so a Field is cheap to copy
/// and safe to use from several threads.
class Field {
 public:
  /// `primitive_poly` is bit-encoded, including the x^m term (0x11D for
  /// x^8+x^4+x^3+x^2+1). Throws DegreeMismatch or NotPrimitive.
  Field(int m, std::uint32_t primitive_poly);

  /// GF(256) with x^8+x^4+x^3+x^2+1, the field used by QR codes.
  static const Field& gf256();
  /// GF(2) as the degree-1 extension by x+1.
  static const Field& gf2();

  int degree() const noexcept { return m_; }
  std::uint32_t primitive_poly() const noexcept { return poly_; }
  std::uint32_t order() const noexcept { return q_; }
  /// Order of the multiplicative group, q - 1.
  std::uint32_t group_order() const noexcept { return q_ - 1; }

  bool contains(Element a) const noexcept { return a < q_; }

  static Element add(Element a, Element b) noexcept { return a ^ b; }
  static Element sub(Element a, Element b) noexcept { return a ^ b; }

  Element mul(Element a, Element b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return tables_->exp[tables_->log[a] + tables_->log[b]];
  }
  Element div(Element a, Element b) const;
  Element inv(Element a) const;
  /// a^e for any integer e; 0^0 = 1, 0^e = 0 for e > 0, 0^e with e < 0 throws.
  Element pow(Element a, long long e) const;

  /// beta^i where beta = x mod f(x); the exponent is reduced mod q-1.
  Element exp(long long i) const noexcept;
  /// Discrete log in [0, q-1); throws DivideByZero for 0.
  std::uint32_t log(Element a) const;

  /// The q-1 nonzero elements in power order, exp_table()[i] = beta^i.
  const std::vector<Element>& exp_table() const noexcept { return tables_->powers; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.m_ == b.m_ && a.poly_ == b.poly_;
  }

 private:
  struct Tables {
    std::vector<Element> powers;       // q-1 entries
    std::vector<Element> exp;          // 2(q-1) entries, avoids a modulo in mul
    std::vector<std::uint32_t> log;    // q entries, log[0] unused
  };

  int m_;
  std::uint32_t poly_;
  std::uint32_t q_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace qrflip
