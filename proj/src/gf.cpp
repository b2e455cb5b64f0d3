#include "qrflip/gf.hpp"

#include <bit>
#include <string>

namespace qrflip {

Field::Field(int m, std::uint32_t primitive_poly) : m_(m), poly_(primitive_poly) {
  if (m < 1 || m > 16)
    throw Error(Errc::DegreeMismatch, "extension degree must be in [1, 16], got " + std::to_string(m));
  if (std::bit_width(primitive_poly) != static_cast<unsigned>(m + 1))
    throw Error(Errc::DegreeMismatch, "polynomial degree does not match m = " + std::to_string(m));
  q_ = 1u << m;

  auto tables = std::make_shared<Tables>();
  tables->powers.reserve(q_ - 1);
  tables->log.assign(q_, 0);
  std::vector<bool> seen(q_, false);

  Element value = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    if (seen[value])
      throw Error(Errc::NotPrimitive, "x has order " + std::to_string(i) + " < q-1 = " + std::to_string(q_ - 1));
    seen[value] = true;
    tables->powers.push_back(value);
    tables->log[value] = i;
    value <<= 1;
    if (value & q_) value ^= primitive_poly;
  }
  // After q-1 steps the sequence must close back to 1.
  if (value != 1)
    throw Error(Errc::NotPrimitive, "power sequence of x does not return to 1 after q-1 steps");

  tables->exp.reserve(2 * (q_ - 1));
  for (int rep = 0; rep < 2; ++rep)
    tables->exp.insert(tables->exp.end(), tables->powers.begin(), tables->powers.end());
  tables_ = std::move(tables);
}

const Field& Field::gf256() {
  static const Field field(8, 0x11D);
  return field;
}

const Field& Field::gf2() {
  static const Field field(1, 0x3);
  return field;
}

Element Field::div(Element a, Element b) const {
  if (b == 0) throw Error(Errc::DivideByZero, "division by zero field element");
  if (a == 0) return 0;
  return tables_->exp[tables_->log[a] + (q_ - 1) - tables_->log[b]];
}

Element Field::inv(Element a) const { return div(1, a); }

Element Field::pow(Element a, long long e) const {
  if (a == 0) {
    if (e < 0) throw Error(Errc::DivideByZero, "zero raised to a negative power");
    return e == 0 ? 1 : 0;
  }
  return exp(static_cast<long long>(tables_->log[a]) * e);
}

Element Field::exp(long long i) const noexcept {
  const long long n = q_ - 1;
  long long r = i % n;
  if (r < 0) r += n;
  return tables_->powers[static_cast<std::size_t>(r)];
}

std::uint32_t Field::log(Element a) const {
  if (a == 0) throw Error(Errc::DivideByZero, "logarithm of zero");
  return tables_->log[a];
}

}  // namespace qrflip
