#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>

#include "qrflip/attack.hpp"

using namespace qrflip;
using namespace qrflip::attack;
using qr::EcLevel;

namespace {

const QrConfig kV1Q{1, EcLevel::Q, {}};
const QrConfig kV1L{1, EcLevel::L, {}};

std::string random_text(std::mt19937& rng, std::size_t n) {
  std::string s(n, '\0');
  for (char& c : s) c = static_cast<char>(rng() % 256);
  return s;
}

// Exhaustive optimum per block: over every subset of differing bytes left
// unfixed that the decoder can still absorb (at most t), the cheapest fix.
std::size_t subset_optimum(const DiffReport& diff, const CodewordSet& set) {
  std::size_t total = 0;
  for (std::size_t b = 0; b < diff.by_block.size(); ++b) {
    const auto& rows = diff.by_block[b];
    const std::size_t t = set.layout.blocks[b].ec_len / 2;
    std::size_t best = SIZE_MAX;
    for (std::uint32_t keep = 0; keep < (1u << rows.size()); ++keep) {
      if (rows.size() - static_cast<std::size_t>(std::popcount(keep)) > t) continue;
      std::size_t cost = 0;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if ((keep >> i) & 1u) cost += static_cast<std::size_t>(diff.rows[rows[i]].bit_cost);
      best = std::min(best, cost);
    }
    total += best;
  }
  return total;
}

}  // namespace

TEST_CASE("diff of the worked example") {
  const CodewordSet a = qr::encode(std::string_view("Id: 1234567"), kV1Q);
  const CodewordSet b = qr::encode(std::string_view("Id: 1234566"), kV1Q);
  const DiffReport d = codeword_diff(a, b);
  REQUIRE(d.rows.size() == 14);
  const int costs[] = {1, 4, 4, 4, 3, 7, 3, 5, 3, 5, 3, 4, 3, 5};
  for (std::size_t i = 0; i < 14; ++i) {
    CHECK(d.rows[i].index == 12 + i);
    CHECK(d.rows[i].bit_cost == costs[i]);
  }
  CHECK(!d.rows[0].is_ec);
  CHECK(d.rows[1].is_ec);
  CHECK(codeword_diff(a, a).empty());
  CHECK_THROWS_AS(codeword_diff(a, qr::encode(std::string_view("x"), kV1L)), Error);

  const DiffReport d2 = codeword_diff(qr::encode(std::string_view("Id: bhavuksikka"), kV1L),
                                      qr::encode(std::string_view("Id: bhavYksikka"), kV1L));
  CHECK(d2.rows[0].index == 9);
  CHECK(d2.rows[0].bit_cost == 1);
  CHECK(d2.rows[1].index == 10);
  CHECK(d2.rows[1].bit_cost == 2);
}

TEST_CASE("plans for the worked examples") {
  const CodewordSet a = qr::encode(std::string_view("Id: 1234567"), kV1Q);
  const CodewordSet b = qr::encode(std::string_view("Id: 1234566"), kV1Q);
  const AttackPlan p = minimal_flip_plan(a, b);
  CHECK(p.bytes.size() == 8);
  CHECK(p.total_bit_flips == 24);
  CHECK(p.total_bits == 208);
  CHECK(std::abs(p.percentage() - 11.54) <= 0.01);
  CHECK(p.pixels.size() == 24);
  CHECK(verify_plan(a, p) == "Id: 1234566");

  const CodewordSet c = qr::encode(std::string_view("Id: bhavuksikka"), kV1L);
  const AttackPlan q = minimal_flip_plan(c, qr::encode(std::string_view("Id: bhavYksikka"), kV1L));
  CHECK(q.bytes.size() == 6);
  CHECK(q.total_bit_flips == 8);
  CHECK(std::abs(q.percentage() - 3.85) <= 0.01);
  CHECK(verify_plan(c, q) == "Id: bhavYksikka");

  const AttackPlan none = minimal_flip_plan(a, a);
  CHECK(none.empty());
  CHECK(none.total_bit_flips == 0);
  CHECK(none.pixels.empty());
  CHECK(verify_plan(a, none) == "Id: 1234567");
}

TEST_CASE("pixels are distinct data modules") {
  const CodewordSet a = qr::encode(std::string_view("Id: 1234567"), kV1Q);
  const AttackPlan p = minimal_flip_plan(a, qr::encode(std::string_view("Id: 1234566"), kV1Q));
  const std::set<Coord> unique(p.pixels.begin(), p.pixels.end());
  CHECK(unique.size() == 24);
  const qr::ModuleMatrix f = qr::function_patterns(1);
  for (const auto& [r, c] : p.pixels) CHECK(!f.is_function(r, c));
  CHECK(plan_to_pixels(p, kV1Q) == p.pixels);
}

TEST_CASE("greedy selection equals the exhaustive optimum") {
  std::mt19937 rng(31);
  for (EcLevel l : {EcLevel::L, EcLevel::M, EcLevel::Q, EcLevel::H}) {
    const QrConfig cfg{1, l, {}};
    for (int i = 0; i < 40; ++i) {
      const std::string t = random_text(rng, qr::capacity(1, l));
      std::string u = t;
      u[rng() % u.size()] ^= static_cast<char>(rng() % 255 + 1);
      const CodewordSet a = qr::encode(t, cfg), b = qr::encode(u, cfg);
      CHECK(minimal_flip_plan(a, b).total_bit_flips == subset_optimum(codeword_diff(a, b), a));
    }
  }
}

TEST_CASE("plans are sound") {
  std::mt19937 rng(77);
  int checked = 0;
  for (int v = 1; v <= 3; ++v)
    for (EcLevel l : {EcLevel::L, EcLevel::M, EcLevel::Q, EcLevel::H})
      for (int i = 0; i < 42; ++i) {
        const QrConfig cfg{v, l, {}};
        const std::string t = random_text(rng, 1 + rng() % qr::capacity(v, l));
        std::string u = t;
        u[rng() % u.size()] ^= static_cast<char>(rng() % 255 + 1);
        const CodewordSet a = qr::encode(t, cfg);
        const AttackPlan p = minimal_flip_plan(a, qr::encode(u, cfg));
        REQUIRE(verify_plan(a, p) == u);
        ++checked;
      }
  CHECK(checked >= 500);
}

TEST_CASE("fast search agrees with the full route") {
  std::mt19937 rng(5);
  for (auto [v, l] : {std::pair{1, EcLevel::L}, {2, EcLevel::M}, {3, EcLevel::H}, {5, EcLevel::Q}}) {
    const QrConfig cfg{v, l, {}};
    const std::string t = random_text(rng, qr::capacity(v, l));
    const NearestResult r = nearest_message(t, cfg, {Alphabet::All, 1});
    for (const Candidate& c : r.candidates) CHECK(flip_cost(t, cfg, c.position, c.xor_byte) == r.minimum_flips);
    // Every other edit at a few positions costs at least the minimum.
    for (int k = 0; k < 6; ++k) {
      const std::size_t pos = rng() % t.size();
      for (unsigned x = 1; x < 256; x += 7) CHECK(flip_cost(t, cfg, pos, static_cast<std::uint8_t>(x)) >= r.minimum_flips);
    }
  }
}

TEST_CASE("cost does not depend on the text") {
  std::mt19937 rng(13);
  const QrConfig cfg{2, EcLevel::Q, {}};
  for (int k = 0; k < 5; ++k) {
    const std::size_t pos = rng() % 20;
    const auto x = static_cast<std::uint8_t>(rng() % 255 + 1);
    const std::size_t ref = flip_cost(random_text(rng, 20), cfg, pos, x);
    for (int i = 0; i < 50; ++i) CHECK(flip_cost(random_text(rng, 20), cfg, pos, x) == ref);
  }
}

TEST_CASE("nearest messages") {
  const NearestResult any = nearest_message(std::string(17, 'a'), kV1L);
  CHECK(any.minimum_flips == 7);
  std::set<std::pair<std::size_t, int>> got;
  for (const Candidate& c : any.candidates) got.insert({c.position, c.xor_byte});
  CHECK(got == std::set<std::pair<std::size_t, int>>{{14, 0x01}, {15, 0x40}, {15, 0x80}});

  const NearestResult alnum = nearest_message("Id: bhavuksikka", kV1L, {Alphabet::Alnum, 0});
  REQUIRE(alnum.candidates.size() == 1);
  CHECK(alnum.candidates[0].text == "Id: bhavYksikka");

  const NearestResult printable = nearest_message("Some binary text.", kV1L, {Alphabet::Printable, 2});
  REQUIRE(printable.candidates.size() == 2);
  CHECK(printable.candidates[0].text == "Some binary teyt.");
  CHECK(printable.candidates[1].text == "Some binary tex4.");

  // Thread count does not change the answer.
  const std::string t = "thread count should not matter";
  const QrConfig cfg{2, EcLevel::L, {}};
  const NearestResult one = nearest_message(t, cfg, {Alphabet::All, 1});
  const NearestResult many = nearest_message(t, cfg, {Alphabet::All, 5});
  CHECK(one.minimum_flips == many.minimum_flips);
  REQUIRE(one.candidates.size() == many.candidates.size());
  for (std::size_t i = 0; i < one.candidates.size(); ++i) CHECK(one.candidates[i].text == many.candidates[i].text);

  CHECK_THROWS_AS(nearest_message(std::string(18, 'a'), kV1L), Error);
  CHECK(in_alphabet(Alphabet::Alnum, ' '));
  CHECK(!in_alphabet(Alphabet::Alnum, 'a'));
  CHECK(in_alphabet(Alphabet::Printable, 'a'));
  CHECK(!in_alphabet(Alphabet::Printable, 0x7F));
  CHECK(parse_alphabet("printable") == Alphabet::Printable);
  CHECK_THROWS_AS(parse_alphabet("greek"), Error);
}

TEST_CASE("edit tables") {
  const GeneralizationTable m1 = generalization_table(1, EcLevel::M);
  CHECK(m1.capacity == 14);
  CHECK(format_row(m1) == "1 | 0x4B | 9");
  const GeneralizationTable h2 = generalization_table(2, EcLevel::H);
  CHECK(format_row(h2) == "4 | 0x88 | 30");
  // Across all blocks, v6-M has a cheaper edit at each block start after the first.
  TableOptions all;
  all.first_block_only = false;
  CHECK(format_row(generalization_table(6, EcLevel::M)) == "4,12 | 0x24,0x48,0x4C / 0xB8 | 16");
  CHECK(format_row(generalization_table(6, EcLevel::M, all)) == "26,53,80 | 0x54,0xA8 / 0x54,0xA8 / 0x54,0xA8 | 15");
  CHECK_THROWS_AS(generalization_table(41, EcLevel::L), Error);
}

TEST_CASE("JSON and PBM output") {
  const CodewordSet a = qr::encode(std::string_view("Id: 1234567"), kV1Q);
  const AttackPlan p = minimal_flip_plan(a, qr::encode(std::string_view("Id: 1234566"), kV1Q));
  const std::string json = plan_to_json(p);
  CHECK(json.rfind("{\"flips\":24,\"percent\":11.54,\"bytes\":[{\"index\":12,\"xor\":\"0x10\",\"bits\":1}", 0) == 0);
  const std::string pbm = pixels_to_pbm(p.pixels, 21);
  CHECK(pbm.rfind("P1\n29 29\n", 0) == 0);
  const std::string body = pbm.substr(pbm.find('\n', 3) + 1);
  CHECK(std::count(body.begin(), body.end(), '1') == 24);
}
