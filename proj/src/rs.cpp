#include "qrflip/rs.hpp"

#include <algorithm>
#include <string>

namespace qrflip {

RsParams rs_params(const Field& field, std::size_t n, std::size_t k, int first_root) {
  if (k == 0 || k >= n || n > field.group_order())
    throw Error(Errc::BadDimensions, "RS(" + std::to_string(n) + ", " + std::to_string(k) +
                                         ") needs 0 < k < n <= " + std::to_string(field.group_order()));
  Poly g = Poly::constant(field, 1);
  for (std::size_t i = 0; i < n - k; ++i)
    g = g * Poly(field, {field.exp(first_root + static_cast<long long>(i)), 1});
  return RsParams{field, n, n - k, first_root, std::move(g)};
}

RsParams rs_params_qr(std::size_t n, std::size_t k) { return rs_params(Field::gf256(), n, k, 0); }

std::vector<Element> RsCodeword::combined() const {
  std::vector<Element> out = data;
  out.insert(out.end(), ec.begin(), ec.end());
  return out;
}

namespace {

// Remainder of data(x) * x^ec_len modulo the generator, highest degree first.
template <typename Symbol>
std::vector<Element> lfsr_remainder(const RsParams& params, std::span<const Symbol> data) {
  const Field& f = params.field;
  const std::size_t ec = params.ec_len;
  const auto& g = params.generator.coeffs();  // ascending, g[ec] == 1
  std::vector<Element> rem(ec, 0);
  for (Symbol symbol : data) {
    const Element factor = static_cast<Element>(symbol) ^ rem[0];
    std::rotate(rem.begin(), rem.begin() + 1, rem.end());
    rem[ec - 1] = 0;
    if (factor == 0) continue;
    for (std::size_t i = 0; i < ec; ++i) rem[i] ^= f.mul(g[ec - 1 - i], factor);
  }
  return rem;
}

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw Error(Errc::LengthMismatch, std::string(what) + " has length " + std::to_string(got) + ", expected " +
                                          std::to_string(want));
}

}  // namespace

RsCodeword rs_encode(const RsParams& params, std::span<const Element> data) {
  require_length(data.size(), params.k(), "data");
  for (Element e : data)
    if (!params.field.contains(e)) throw Error(Errc::FieldMismatch, "data symbol outside the field");
  return RsCodeword{std::vector<Element>(data.begin(), data.end()), lfsr_remainder(params, data)};
}

Bytes rs_parity(const RsParams& params, std::span<const std::uint8_t> data) {
  require_length(data.size(), params.k(), "data");
  const auto rem = lfsr_remainder(params, data);
  return Bytes(rem.begin(), rem.end());
}

std::vector<Element> syndromes(const RsParams& params, std::span<const Element> received) {
  require_length(received.size(), params.n, "received word");
  const Field& f = params.field;
  std::vector<Element> s(params.ec_len, 0);
  for (std::size_t j = 0; j < params.ec_len; ++j) {
    const Element x = f.exp(params.first_root + static_cast<long long>(j));
    Element acc = 0;
    for (Element r : received) acc = f.mul(acc, x) ^ r;
    s[j] = acc;
  }
  return s;
}

RsDecodeResult rs_decode(const RsParams& params, std::span<const Element> received) {
  const Field& f = params.field;
  const std::size_t n = params.n;
  const std::size_t ec = params.ec_len;
  const std::vector<Element> s = syndromes(params, received);

  RsDecodeResult out;
  out.corrected.assign(received.begin(), received.end());
  if (std::all_of(s.begin(), s.end(), [](Element e) { return e == 0; })) return out;

  // Berlekamp-Massey: shortest LFSR generating the syndrome sequence.
  std::vector<Element> locator{1};
  std::vector<Element> prev{1};
  std::size_t order = 0;
  std::size_t gap = 1;
  Element prev_disc = 1;
  for (std::size_t r = 0; r < ec; ++r) {
    Element disc = s[r];
    for (std::size_t i = 1; i <= order && i < locator.size(); ++i) disc ^= f.mul(locator[i], s[r - i]);
    if (disc == 0) {
      ++gap;
      continue;
    }
    const Element coef = f.div(disc, prev_disc);
    std::vector<Element> next = locator;
    if (next.size() < prev.size() + gap) next.resize(prev.size() + gap, 0);
    for (std::size_t i = 0; i < prev.size(); ++i) next[i + gap] ^= f.mul(coef, prev[i]);
    if (2 * order <= r) {
      prev = std::move(locator);
      order = r + 1 - order;
      prev_disc = disc;
      gap = 1;
    } else {
      ++gap;
    }
    locator = std::move(next);
  }
  const Poly lambda(f, locator);
  if (static_cast<std::size_t>(lambda.degree()) != order || order > params.t())
    throw Error(Errc::DecodeFailure, "error locator degree exceeds the correction radius");

  // Chien search over the n transmitted positions; wire index i carries x^(n-1-i).
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < n; ++i) {
    const long long power = static_cast<long long>(n - 1 - i);
    if (lambda.eval(f.exp(-power)) == 0) positions.push_back(i);
  }
  if (positions.size() != order)
    throw Error(Errc::DecodeFailure, "found " + std::to_string(positions.size()) + " locator roots, expected " +
                                         std::to_string(order));

  // Forney: e = X^(1-b) * Omega(X^-1) / Lambda'(X^-1).
  const Poly syndrome_poly(f, s);
  std::vector<Element> omega_coeffs = (syndrome_poly * lambda).coeffs();
  if (omega_coeffs.size() > ec) omega_coeffs.resize(ec);
  const Poly omega(f, std::move(omega_coeffs));
  const Poly lambda_prime = lambda.derivative();
  for (std::size_t i : positions) {
    const long long power = static_cast<long long>(n - 1 - i);
    const Element x_inv = f.exp(-power);
    const Element denom = lambda_prime.eval(x_inv);
    if (denom == 0) throw Error(Errc::DecodeFailure, "repeated locator root");
    const Element magnitude =
        f.mul(f.exp(power * (1 - static_cast<long long>(params.first_root))), f.div(omega.eval(x_inv), denom));
    out.corrected[i] ^= magnitude;
  }

  const std::vector<Element> check = syndromes(params, out.corrected);
  if (!std::all_of(check.begin(), check.end(), [](Element e) { return e == 0; }))
    throw Error(Errc::DecodeFailure, "correction did not produce a codeword");
  out.errors = positions.size();
  out.positions = std::move(positions);
  return out;
}

RsDecodeResult rs_decode_bytes(const RsParams& params, std::span<const std::uint8_t> received) {
  const std::vector<Element> word(received.begin(), received.end());
  return rs_decode(params, word);
}

}  // namespace qrflip
