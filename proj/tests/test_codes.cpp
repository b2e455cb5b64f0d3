#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qrflip/codes.hpp"
#include "qrflip/rs.hpp"

using namespace qrflip;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::UsageError;
}

const Field& gf8() {
  static const Field f(3, 0b1011);
  return f;
}

}  // namespace

TEST_CASE("hamming distance and weight") {
  const std::vector<int> a{0, 1, 0, 1}, b{1, 0, 1, 0};
  CHECK(hamming_distance(a, a) == 0);
  CHECK(hamming_distance(a, b) == 4);
  CHECK(weight(std::vector<int>{0, 0, 0}) == 0);
  CHECK(weight(std::vector<int>{1, 1, 1, 1}) == 4);
  CHECK(code_of([&] { hamming_distance(a, std::vector<int>{1}); }) == Errc::LengthMismatch);

  const std::vector<std::uint8_t> b1{64, 180, 150, 67, 162, 3, 19, 35, 51, 67, 83, 99, 112,
                                     196, 144, 22, 34, 115, 74, 89, 202, 212, 234, 197, 39, 150};
  const std::vector<std::uint8_t> b2{64, 180, 150, 67, 162, 3, 19, 35, 51, 67, 83, 99, 96,
                                     188, 116, 128, 47, 172, 71, 62, 26, 14, 96, 156, 143, 69};
  CHECK(hamming_distance(b1, b2) == 14);

  std::mt19937 rng(1);
  for (int i = 0; i < 100; ++i) {
    std::vector<int> v(20);
    for (auto& x : v) x = static_cast<int>(rng() % 3);
    CHECK(weight(v) == hamming_distance(v, std::vector<int>(20, 0)));
  }
}

TEST_CASE("minimum distance by enumeration") {
  const std::vector<Word> example{{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 1, 1}};
  const MinDistance md = min_distance_bruteforce(example, true);
  CHECK(md.distance == 2);
  CHECK(md.min_weight == 2);

  // Even-weight words of length 3.
  const std::vector<Word> parity{{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  CHECK(min_distance_bruteforce(parity, true).distance == 2);

  const std::vector<Word> one{{0, 1}};
  CHECK(code_of([&] { min_distance_bruteforce(one); }) == Errc::TooFewWords);
}

TEST_CASE("RS over GF(16) meets the Singleton bound") {
  const Field f(4, 0x13);
  for (std::size_t k = 1; k <= 3; ++k) {
    const RsParams p = rs_params(f, 15, k, 1);
    const GfMatrix g = cyclic_generator_matrix(p.generator, 15);
    CHECK(g.rows() == k);
    const auto words = row_span(g);
    CHECK(words.size() == static_cast<std::size_t>(std::pow(16, k)));
    CHECK(min_distance_bruteforce(words, true).distance == 15 - k + 1);
  }
}

TEST_CASE("capability") {
  CHECK(detect_correct_capability(33).correct == 16);
  CHECK(detect_correct_capability(14).correct == 6);
  CHECK(detect_correct_capability(14).detect == 13);
  CHECK(detect_correct_capability(1).correct == 0);
  CHECK(detect_correct_capability(1).detect == 0);
  static_assert(detect_correct_capability(3).correct == 1);
}

TEST_CASE("[7,4,3] cyclic code matrices") {
  const Poly g = Poly::from_bits(Field::gf2(), 0b1011);
  const GfMatrix G = cyclic_generator_matrix(g, 7);
  const GfMatrix H = parity_check_matrix(g, 7);
  CHECK(G.rows() == 4);
  CHECK(G.rank() == 4);
  CHECK(H.rows() == 3);
  CHECK(H.mul_transpose(G).is_zero());
  const auto words = row_span(G);
  CHECK(words.size() == 16);
  CHECK(min_distance_bruteforce(words, true).distance == 3);

  const std::set<Word> code(words.begin(), words.end());
  for (unsigned v = 0; v < 128; ++v) {
    Word w(7);
    for (int i = 0; i < 7; ++i) w[i] = (v >> i) & 1u;
    CHECK(is_codeword(H, w) == (code.count(w) == 1));
  }
  // The nearest codeword is unique within distance 1.
  for (const Word& c : words)
    for (int i = 0; i < 7; ++i) {
      Word r = c;
      r[i] ^= 1;
      CHECK(nearest_codeword(words, r) == c);
    }

  CHECK(code_of([&] { cyclic_generator_matrix(Poly::from_bits(Field::gf2(), 0b111), 7); }) == Errc::NotADivisor);
}

TEST_CASE("degenerate generators") {
  const GfMatrix G = cyclic_generator_matrix(Poly::constant(Field::gf2(), 1), 5);
  CHECK(G.rows() == 5);
  CHECK(G.rank() == 5);
  const GfMatrix H = parity_check_matrix(x_pow_minus_one(Field::gf2(), 5), 5);
  CHECK(H.rows() == 5);
  const GfMatrix H0 = parity_check_matrix(Poly::constant(Field::gf2(), 1), 5);
  CHECK(H0.rows() == 0);
  CHECK(is_codeword(H0, Word{1, 0, 1, 1, 0}));
}

TEST_CASE("length-4 code with H equal to G") {
  GfMatrix G(Field::gf2(), 2, 4);
  G(0, 0) = G(0, 2) = 1;
  G(1, 1) = G(1, 3) = 1;
  CHECK(G.mul_transpose(G).is_zero());
  const auto words = row_span(G);
  const std::set<Word> got(words.begin(), words.end());
  CHECK(got == std::set<Word>{{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 1, 1}});
  // Same code as the cyclic code generated by x^2 + 1.
  const auto cyc = row_span(cyclic_generator_matrix(Poly::from_bits(Field::gf2(), 0b101), 4));
  CHECK(std::set<Word>(cyc.begin(), cyc.end()) == got);
}

TEST_CASE("minimal polynomials and BCH") {
  const Poly m1 = Poly::from_bits(Field::gf2(), 0b1011);
  const Poly m3 = Poly::from_bits(Field::gf2(), 0b1101);
  for (int i : {1, 2, 4}) CHECK(minimal_polynomial(gf8(), gf8().exp(i)) == m1);
  for (int i : {3, 5, 6}) CHECK(minimal_polynomial(gf8(), gf8().exp(i)) == m3);
  CHECK(minimal_polynomial(gf8(), 1) == Poly::from_bits(Field::gf2(), 0b11));
  CHECK(minimal_polynomial(Field::gf256(), 1) == Poly::from_bits(Field::gf2(), 0b11));

  const Poly g = bch_generator(gf8(), 3);
  CHECK(g == m1);
  CHECK(7 - g.degree() == 4);
  CHECK(bch_generator(gf8(), 4) == m1 * m3);

  const Field& f = Field::gf256();
  CHECK(bch_generator(f, 2, BchBase::Field) == Poly(f, {f.exp(1), 1}));
  // Minimal polynomials over GF(2) divide x^n - 1 and vanish at the element.
  for (int i = 1; i < 255; i += 17) {
    const Poly mp = minimal_polynomial(f, f.exp(i));
    CHECK((x_pow_minus_one(Field::gf2(), 255) % mp).is_zero());
    const std::vector<Element> lifted(mp.coeffs().begin(), mp.coeffs().end());
    CHECK(Poly(f, lifted).eval(f.exp(i)) == 0);
  }
  CHECK(code_of([] { bch_generator(gf8(), 1); }) == Errc::DeltaOutOfRange);
  CHECK(code_of([] { bch_generator(gf8(), 8); }) == Errc::DeltaOutOfRange);
}

TEST_CASE("nearest codeword ties") {
  const std::vector<Word> code{{0, 0, 0, 0}, {1, 1, 1, 1}};
  CHECK(!nearest_codeword(code, Word{1, 1, 0, 0}).has_value());
  CHECK(nearest_codeword(code, Word{1, 1, 1, 0}) == Word{1, 1, 1, 1});
}

TEST_CASE("NIF control letter") {
  CHECK(nif_control_letter("51234511") == 'X');
  CHECK(nif_control_letter("18279322") == 'A');
  CHECK(nif_control_letter("00000000") == 'T');
  const NifCheck bad = nif_check("18279322-G");
  CHECK(bad.expected == 'A');
  CHECK(bad.remainder == 3);
  CHECK(bad.valid == false);
  CHECK(nif_check("51234511-X").valid == true);
  CHECK(nif_check("51234511").remainder == 10);
  CHECK(!nif_check("51234511").valid.has_value());
  CHECK(code_of([] { nif_control_letter("1234"); }) == Errc::BadFormat);
  CHECK(code_of([] { nif_check("1234567a"); }) == Errc::BadFormat);
}
