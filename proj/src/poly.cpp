#include "qrflip/poly.hpp"

#include <algorithm>

namespace qrflip {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
}

}  // namespace

Poly::Poly(Field field, std::vector<Element> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (Element c : coeffs_)
    if (!field_.contains(c)) throw Error(Errc::FieldMismatch, "coefficient outside the field");
  normalize();
}

Poly Poly::monomial(const Field& field, Element c, std::size_t k) {
  std::vector<Element> coeffs(k + 1, 0);
  coeffs[k] = c;
  return Poly(field, std::move(coeffs));
}

Poly Poly::from_bits(const Field& field, std::uint64_t bits) {
  std::vector<Element> coeffs;
  for (; bits != 0; bits >>= 1) coeffs.push_back(static_cast<Element>(bits & 1));
  return Poly(field, std::move(coeffs));
}

void Poly::normalize() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Element Poly::eval(Element x) const noexcept {
  Element acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.mul(acc, x) ^ *it;
  return acc;
}

Poly Poly::shift(std::size_t k) const {
  if (is_zero()) return *this;
  Poly out(field_);
  out.coeffs_.assign(k, 0);
  out.coeffs_.insert(out.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

Poly Poly::scale(Element c) const {
  Poly out(field_);
  if (c == 0) return out;
  out.coeffs_.reserve(coeffs_.size());
  for (Element a : coeffs_) out.coeffs_.push_back(field_.mul(a, c));
  return out;
}

Poly Poly::derivative() const {
  // Characteristic 2: the coefficient of x^(i-1) is i*c_i, which vanishes for even i.
  Poly out(field_);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.coeffs_.push_back(i % 2 == 1 ? coeffs_[i] : 0);
  out.normalize();
  return out;
}

std::uint64_t Poly::to_bits() const {
  if (field_.degree() != 1 || coeffs_.size() > 64)
    throw Error(Errc::BadFormat, "bit encoding needs a GF(2) polynomial of degree < 64");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) bits |= static_cast<std::uint64_t>(coeffs_[i]) << i;
  return bits;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  Poly out(a.field_);
  out.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = a[i] ^ b[i];
  out.normalize();
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  Poly out(a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  out.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out.coeffs_[i + j] ^= a.field_.mul(a.coeffs_[i], b.coeffs_[j]);
  }
  out.normalize();
  return out;
}

DivMod divmod(const Poly& num, const Poly& den) {
  require_same_field(num, den);
  if (den.is_zero()) throw Error(Errc::DivideByZero, "polynomial division by zero");
  const Field& f = num.field();
  if (num.degree() < den.degree()) return {Poly::zero(f), num};

  std::vector<Element> rem = num.coeffs();
  const auto& d = den.coeffs();
  const std::size_t dd = d.size() - 1;
  std::vector<Element> quot(rem.size() - dd, 0);
  const Element lead_inv = f.inv(den.lead());
  for (std::size_t i = rem.size(); i-- > dd;) {
    if (rem[i] == 0) continue;
    const Element factor = f.mul(rem[i], lead_inv);
    quot[i - dd] = factor;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] ^= f.mul(factor, d[j]);
  }
  rem.resize(dd);
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly operator%(const Poly& num, const Poly& den) { return divmod(num, den).remainder; }

Poly make_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scale(p.field().inv(p.lead()));
}

Poly gcd(Poly a, Poly b) {
  require_same_field(a, b);
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return make_monic(divmod(a * b, gcd(a, b)).quotient);
}

Poly x_pow_minus_one(const Field& field, std::size_t n) {
  return Poly::monomial(field, 1, n) + Poly::constant(field, 1);
}

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Element c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    const bool show_coeff = c != 1 || i == 0;
    if (show_coeff) out += std::to_string(c);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace qrflip
