#include "qrflip/codes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <set>

namespace qrflip {

MinDistance min_distance_bruteforce(std::span<const Word> codewords, bool linear) {
  if (codewords.size() < 2) throw Error(Errc::TooFewWords, "need at least two codewords");
  MinDistance out;
  out.distance = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < codewords.size(); ++i)
    for (std::size_t j = i + 1; j < codewords.size(); ++j)
      out.distance = std::min(out.distance, hamming_distance(codewords[i], codewords[j]));

  if (linear) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const Word& w : codewords) {
      const std::size_t wt = weight(w);
      if (wt != 0) best = std::min(best, wt);
    }
    out.min_weight = best;
    if (best != out.distance)
      throw Error(Errc::VerificationFailed, "minimum distance " + std::to_string(out.distance) +
                                                " differs from minimum weight " + std::to_string(best));
  }
  return out;
}

Word GfMatrix::row(std::size_t r) const {
  return Word(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Word GfMatrix::apply(std::span<const Element> v) const {
  if (v.size() != cols_) throw Error(Errc::LengthMismatch, "vector length does not match matrix columns");
  Word out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Element acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc ^= field_.mul((*this)(r, c), v[c]);
    out[r] = acc;
  }
  return out;
}

GfMatrix GfMatrix::mul_transpose(const GfMatrix& other) const {
  if (!(field_ == other.field_)) throw Error(Errc::FieldMismatch, "matrices over different fields");
  if (cols_ != other.cols_) throw Error(Errc::LengthMismatch, "column counts differ");
  GfMatrix out(field_, rows_, other.rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < other.rows_; ++j) {
      Element acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) acc ^= field_.mul((*this)(i, c), other(j, c));
      out(i, j) = acc;
    }
  return out;
}

bool GfMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](Element e) { return e == 0; });
}

std::size_t GfMatrix::rank() const {
  GfMatrix m = *this;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows_ && m(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(m(pivot, k), m(rank, k));
    const Element inv = field_.inv(m(rank, c));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == rank || m(r, c) == 0) continue;
      const Element factor = field_.mul(m(r, c), inv);
      for (std::size_t k = 0; k < cols_; ++k) m(r, k) ^= field_.mul(factor, m(rank, k));
    }
    ++rank;
  }
  return rank;
}

namespace {

Poly require_divisor(const Poly& g, std::size_t n) {
  if (g.is_zero() || static_cast<std::size_t>(g.degree()) > n)
    throw Error(Errc::NotADivisor, "generator degree exceeds n");
  auto [h, r] = divmod(x_pow_minus_one(g.field(), n), g);
  if (!r.is_zero()) throw Error(Errc::NotADivisor, to_string(g) + " does not divide x^" + std::to_string(n) + " - 1");
  return h;
}

GfMatrix shifted_rows(const Poly& p, std::size_t count, std::size_t n) {
  GfMatrix m(p.field(), count, n);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) m(r, r + i) = p.coeffs()[i];
  return m;
}

}  // namespace

GfMatrix cyclic_generator_matrix(const Poly& g, std::size_t n) {
  require_divisor(g, n);
  return shifted_rows(g, n - static_cast<std::size_t>(g.degree()), n);
}

GfMatrix parity_check_matrix(const Poly& g, std::size_t n) {
  const Poly h = require_divisor(g, n);
  // Reciprocal x^k h(1/x): the coefficient vector reversed.
  std::vector<Element> rev(h.coeffs().rbegin(), h.coeffs().rend());
  return shifted_rows(Poly(g.field(), std::move(rev)), static_cast<std::size_t>(g.degree()), n);
}

bool is_codeword(const GfMatrix& parity_check, std::span<const Element> w) {
  const Word s = parity_check.apply(w);
  return std::all_of(s.begin(), s.end(), [](Element e) { return e == 0; });
}

std::vector<Word> row_span(const GfMatrix& generator) {
  const Field& f = generator.field();
  const std::size_t k = generator.rows();
  const std::size_t n = generator.cols();
  std::vector<Word> out;
  std::vector<Element> coeffs(k, 0);
  while (true) {
    Word w(n, 0);
    for (std::size_t r = 0; r < k; ++r)
      if (coeffs[r] != 0)
        for (std::size_t c = 0; c < n; ++c) w[c] ^= f.mul(coeffs[r], generator(r, c));
    out.push_back(std::move(w));
    // Odometer increment over GF(q)^k.
    std::size_t pos = 0;
    while (pos < k && ++coeffs[pos] == f.order()) coeffs[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

Poly minimal_polynomial(const Field& field, Element elem) {
  if (elem == 0 || !field.contains(elem)) throw Error(Errc::BadFormat, "minimal polynomial needs a nonzero element");
  std::set<Element> conjugates;
  for (Element c = elem; conjugates.insert(c).second;) c = field.mul(c, c);

  Poly product = Poly::constant(field, 1);
  for (Element c : conjugates) product = product * Poly(field, {c, 1});

  std::vector<Element> binary;
  for (Element c : product.coeffs()) {
    if (c > 1) throw Error(Errc::VerificationFailed, "minimal polynomial has a coefficient outside GF(2)");
    binary.push_back(c);
  }
  return Poly(Field::gf2(), std::move(binary));
}

Poly bch_generator(const Field& field, std::size_t delta, BchBase base) {
  if (delta < 2 || delta > field.group_order())
    throw Error(Errc::DeltaOutOfRange, "designed distance " + std::to_string(delta) + " outside [2, q-1]");
  const Field& coeff_field = base == BchBase::Binary ? Field::gf2() : field;
  Poly g = Poly::constant(coeff_field, 1);
  for (std::size_t i = 1; i < delta; ++i) {
    const Element root = field.exp(static_cast<long long>(i));
    const Poly q = base == BchBase::Binary ? minimal_polynomial(field, root) : Poly(field, {root, 1});
    g = lcm(g, q);
  }
  return g;
}

std::optional<Word> nearest_codeword(std::span<const Word> code, std::span<const Element> received) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::optional<Word> winner;
  bool tie = false;
  for (const Word& c : code) {
    const std::size_t d = hamming_distance(std::span<const Element>(c), received);
    if (d < best) {
      best = d;
      winner = c;
      tie = false;
    } else if (d == best) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return winner;
}

namespace {

constexpr std::array<char, 23> kNifLetters = {'T', 'R', 'W', 'A', 'G', 'M', 'Y', 'F', 'P', 'D', 'X', 'B',
                                              'N', 'J', 'Z', 'S', 'Q', 'V', 'H', 'L', 'C', 'K', 'E'};

unsigned nif_remainder(std::string_view digits) {
  if (digits.size() != 8 || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(Errc::BadFormat, "NIF needs exactly 8 decimal digits");
  unsigned long value = 0;
  for (char c : digits) value = value * 10 + static_cast<unsigned>(c - '0');
  return static_cast<unsigned>(value % 23);
}

}  // namespace

char nif_control_letter(std::string_view digits) { return kNifLetters[nif_remainder(digits)]; }

NifCheck nif_check(std::string_view nif) {
  NifCheck out;
  std::string_view digits = nif.substr(0, std::min<std::size_t>(nif.size(), 8));
  out.remainder = nif_remainder(digits);
  out.expected = kNifLetters[out.remainder];
  std::string_view rest = nif.substr(digits.size());
  if (!rest.empty() && rest.front() == '-') rest.remove_prefix(1);
  if (rest.size() > 1) throw Error(Errc::BadFormat, "trailing characters after the control letter");
  if (rest.size() == 1)
    out.valid = std::toupper(static_cast<unsigned char>(rest.front())) == out.expected;
  return out;
}

}  // namespace qrflip
