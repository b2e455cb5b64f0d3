#include <doctest.h>

#include <random>

#include "qrflip/poly.hpp"

using namespace qrflip;

namespace {

Poly random_poly(const Field& f, std::mt19937& rng, int max_degree) {
  std::vector<Element> c(rng() % (max_degree + 1) + 1);
  for (auto& x : c) x = rng() % f.order();
  return Poly(f, c);
}

}  // namespace

TEST_CASE("normalization and basics") {
  const Field& g2 = Field::gf2();
  const Poly z = Poly::zero(g2);
  CHECK(z.is_zero());
  CHECK(z.degree() == Poly::kZeroDegree);
  CHECK(Poly(g2, {1, 1, 0, 0}).degree() == 1);
  CHECK(Poly::from_bits(g2, 0b1011) + z == Poly::from_bits(g2, 0b1011));
  CHECK((z * Poly::from_bits(g2, 0b111)).is_zero());
  CHECK(to_string(Poly::from_bits(g2, 0b1011)) == "x^3 + x + 1");
  CHECK(to_string(z) == "0");
}

TEST_CASE("products over GF(2)") {
  const Field& g2 = Field::gf2();
  CHECK(Poly::from_bits(g2, 0b11) * Poly::from_bits(g2, 0b111) == Poly::from_bits(g2, 0b1001));
  // x^7 - 1 = (x - 1)(x^3 + x^2 + 1)(x^3 + x + 1)
  const Poly f1 = Poly::from_bits(g2, 0b1011), f2 = Poly::from_bits(g2, 0b1101);
  CHECK((x_pow_minus_one(g2, 7) % f1).is_zero());
  CHECK((x_pow_minus_one(g2, 7) % f2).is_zero());
  CHECK(Poly::from_bits(g2, 0b11) * f1 * f2 == x_pow_minus_one(g2, 7));
}

TEST_CASE("shift") {
  const Field& g2 = Field::gf2();
  CHECK(Poly::constant(g2, 1).shift(32) == Poly::monomial(g2, 1, 32));
  CHECK(Poly::zero(g2).shift(5).is_zero());
  CHECK(Poly::from_bits(g2, 0b11).shift(2) == Poly::from_bits(g2, 0b1100));
}

TEST_CASE("cyclic shift is multiplication by x modulo x^n - 1") {
  const Field f(4, 0x13);
  std::mt19937 rng(3);
  const std::size_t n = 15;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Element> c(n);
    for (auto& x : c) x = rng() % 16;
    std::vector<Element> rotated(n);
    for (std::size_t i = 0; i < n; ++i) rotated[(i + 1) % n] = c[i];
    CHECK(Poly(f, c).shift(1) % x_pow_minus_one(f, n) == Poly(f, rotated));
  }
}

TEST_CASE("evaluation at roots") {
  const Field f8(3, 0b1011);
  const Poly p = Poly::from_bits(Field::gf2(), 0b1011);
  // Lift to GF(8) coefficients.
  const Poly lifted(f8, {1, 1, 0, 1});
  CHECK(lifted.eval(f8.exp(1)) == 0);
  CHECK(lifted.eval(f8.exp(2)) == 0);
  CHECK(lifted.eval(f8.exp(4)) == 0);
  CHECK(lifted.eval(f8.exp(3)) != 0);
  CHECK(Poly::zero(f8).eval(5) == 0);
  CHECK(p.eval(1) == 1);
}

TEST_CASE("divmod recomposes over GF(256)") {
  const Field& f = Field::gf256();
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Poly num = random_poly(f, rng, 30);
    Poly den = random_poly(f, rng, 12);
    if (den.is_zero()) den = Poly::constant(f, 1);
    const DivMod qr = divmod(num, den);
    CHECK(den * qr.quotient + qr.remainder == num);
    CHECK(qr.remainder.degree() < den.degree());
  }
  const Poly p(f, {3, 4, 5});
  const DivMod by_one = divmod(p, Poly::constant(f, 1));
  CHECK(by_one.quotient == p);
  CHECK(by_one.remainder.is_zero());
  CHECK_THROWS_AS(divmod(p, Poly::zero(f)), Error);
}

TEST_CASE("gcd, lcm and derivative") {
  const Field& g2 = Field::gf2();
  const Poly f1 = Poly::from_bits(g2, 0b1011), f2 = Poly::from_bits(g2, 0b1101), l = Poly::from_bits(g2, 0b11);
  CHECK(gcd(f1 * l, f2 * l) == l);
  CHECK(lcm(f1, f1 * l) == f1 * l);
  CHECK(lcm(f1, f2) == f1 * f2);
  // d/dx (x^3 + x + 1) = 3x^2 + 1 = x^2 + 1 in characteristic 2
  CHECK(f1.derivative() == Poly::from_bits(g2, 0b101));
  const Field f(4, 0x13);
  CHECK(make_monic(Poly(f, {2, 6})).is_monic());
}

TEST_CASE("mixed fields are rejected") {
  const Field f(4, 0x13);
  CHECK_THROWS_AS(Poly(f, {1}) + Poly(Field::gf2(), {1}), Error);
}
