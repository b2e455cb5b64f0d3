#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrflip/gf.hpp"
#include "qrflip/poly.hpp"

namespace qrflip {

using Bytes = std::vector<std::uint8_t>;

/// Parameters of a (possibly shortened) Reed-Solomon code RS(n, k).
///
/// Codewords are written data first, parity last. Read as a polynomial the
/// first data symbol is the coefficient of x^(n-1), so a shortened code is
/// the full-length code with its leading data symbols fixed to zero.
struct RsParams {
  Field field;
  std::size_t n = 0;
  std::size_t ec_len = 0;
  /// Exponent b of the first generator root; QR codes use b = 0.
  int first_root = 0;
  /// prod_{i=0}^{ec_len-1} (x - alpha^(b+i)), monic.
  Poly generator;

  std::size_t k() const noexcept { return n - ec_len; }
  /// Designed (and, for RS, true) minimum distance n - k + 1.
  std::size_t distance() const noexcept { return ec_len + 1; }
  /// Correction radius floor(ec_len / 2).
  std::size_t t() const noexcept { return ec_len / 2; }
};

/// Throws BadDimensions unless 0 < k < n <= q-1.
RsParams rs_params(const Field& field, std::size_t n, std::size_t k, int first_root = 0);

/// Shorthand for RS codes over the QR field GF(256), b = 0.
RsParams rs_params_qr(std::size_t n, std::size_t k);

struct RsCodeword {
  std::vector<Element> data;
  std::vector<Element> ec;
  std::vector<Element> combined() const;
};

/// Systematic encoding: ec = (data(x) * x^ec_len) mod generator.
/// Throws LengthMismatch when data.size() != k.
RsCodeword rs_encode(const RsParams& params, std::span<const Element> data);

/// Parity bytes only, over byte data; the QR hot path.
Bytes rs_parity(const RsParams& params, std::span<const std::uint8_t> data);

/// S_j = r(alpha^(b+j)) for j = 0 .. ec_len-1. All zero iff r is a codeword.
std::vector<Element> syndromes(const RsParams& params, std::span<const Element> received);

struct RsDecodeResult {
  std::vector<Element> corrected;
  std::size_t errors = 0;
  /// Wire indices that were changed.
  std::vector<std::size_t> positions;
};

/// Bounded-distance decoding (Berlekamp-Massey, Chien search, Forney).
/// Returns the unique codeword within distance t of `received`; throws
/// DecodeFailure when no such codeword is found.
RsDecodeResult rs_decode(const RsParams& params, std::span<const Element> received);

/// Byte convenience wrapper around rs_decode.
RsDecodeResult rs_decode_bytes(const RsParams& params, std::span<const std::uint8_t> received);

}  // namespace qrflip
