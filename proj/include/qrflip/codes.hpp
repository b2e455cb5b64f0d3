#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrflip/gf.hpp"
#include "qrflip/poly.hpp"

namespace qrflip {

/// [n, k, d]_q parameters of a block code.
struct CodeParams {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::size_t q = 0;
};

template <typename Symbol>
std::size_t hamming_distance(std::span<const Symbol> u, std::span<const Symbol> v) {
  if (u.size() != v.size())
    throw Error(Errc::LengthMismatch, "vectors of length " + std::to_string(u.size()) + " and " +
                                          std::to_string(v.size()));
  std::size_t d = 0;
  for (std::size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

template <typename Symbol>
std::size_t hamming_distance(const std::vector<Symbol>& u, const std::vector<Symbol>& v) {
  return hamming_distance(std::span<const Symbol>(u), std::span<const Symbol>(v));
}

/// Number of nonzero symbols.
template <typename Symbol>
std::size_t weight(std::span<const Symbol> v) {
  std::size_t w = 0;
  for (const Symbol& s : v) w += s != Symbol{};
  return w;
}

template <typename Symbol>
std::size_t weight(const std::vector<Symbol>& v) {
  return weight(std::span<const Symbol>(v));
}

using Word = std::vector<Element>;

struct MinDistance {
  std::size_t distance = 0;
  /// Minimum weight over nonzero words, reported when the set is linear.
  std::optional<std::size_t> min_weight;
};

/// Exact minimum pairwise distance over an explicit word list. When `linear`
/// is set, also computes the minimum nonzero weight and throws
/// VerificationFailed if it disagrees with the distance.
MinDistance min_distance_bruteforce(std::span<const Word> codewords, bool linear = false);

struct Capability {
  std::size_t correct = 0;  ///< t = floor((d-1)/2)
  std::size_t detect = 0;   ///< d-1 when used for detection only
};

constexpr Capability detect_correct_capability(std::size_t d) {
  if (d == 0) return {};
  return {(d - 1) / 2, d - 1};
}

/// Dense matrix over a Field, row-major.
class GfMatrix {
 public:
  GfMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Word row(std::size_t r) const;

  /// this * v, for a column vector v of length cols().
  Word apply(std::span<const Element> v) const;
  /// this * other^T.
  GfMatrix mul_transpose(const GfMatrix& other) const;
  bool is_zero() const noexcept;
  std::size_t rank() const;

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

/// Rows g, xg, ..., x^(k-1) g with k = n - deg(g). Throws NotADivisor when g
/// does not divide x^n - 1.
GfMatrix cyclic_generator_matrix(const Poly& g, std::size_t n);

/// Parity-check matrix built from the reciprocal of h = (x^n - 1)/g, so that
/// H G^T = 0. Throws NotADivisor.
GfMatrix parity_check_matrix(const Poly& g, std::size_t n);

/// w is a codeword iff H w = 0.
bool is_codeword(const GfMatrix& parity_check, std::span<const Element> w);

/// All q^k linear combinations of the rows of `generator`. Only sensible for
/// small q^k.
std::vector<Word> row_span(const GfMatrix& generator);

/// Minimal polynomial of `elem` over GF(2): the product of (x - c) over the
/// conjugacy class {elem^(2^j)}, returned with GF(2) coefficients.
Poly minimal_polynomial(const Field& field, Element elem);

/// Which subfield the BCH generator polynomial lives in.
enum class BchBase {
  Binary,  ///< minimal polynomials over GF(2); the classic binary BCH code.
  Field,   ///< minimal polynomials over the field itself; the RS case x - alpha^i.
};

/// lcm of the minimal polynomials of alpha^1 .. alpha^(delta-1).
/// Throws DeltaOutOfRange unless 2 <= delta <= q-1.
Poly bch_generator(const Field& field, std::size_t delta, BchBase base = BchBase::Binary);

/// Nearest-codeword decoding by exhaustive search. Returns the unique closest
/// codeword, or nullopt on a tie.
std::optional<Word> nearest_codeword(std::span<const Word> code, std::span<const Element> received);

/// Control letter of an 8-digit NIF: r = value mod 23 mapped through the
/// 23-letter table. Throws BadFormat.
char nif_control_letter(std::string_view digits);

struct NifCheck {
  char expected = 0;
  unsigned remainder = 0;
  std::optional<bool> valid;  ///< set when a received letter was supplied
};

/// Accepts "DDDDDDDD" or "DDDDDDDD-L"; with a letter, reports whether it matches.
NifCheck nif_check(std::string_view nif);

}  // namespace qrflip
