#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrflip/qr.hpp"

namespace qrflip::attack {

using qr::Coord;
using qr::CodewordSet;
using qr::QrConfig;

/// One codeword byte where two encodings differ.
struct DiffRow {
  std::size_t index = 0;        ///< wire position
  std::size_t block = 0;
  std::size_t block_index = 0;  ///< position inside the block, data first
  bool is_ec = false;
  std::uint8_t original = 0;
  std::uint8_t target = 0;
  int bit_cost = 0;             ///< popcount(original ^ target)
};

struct DiffReport {
  std::vector<DiffRow> rows;  ///< ascending wire index
  /// rows indices grouped per block.
  std::vector<std::vector<std::size_t>> by_block;

  bool empty() const noexcept { return rows.empty(); }
};

/// Throws ConfigMismatch when the two sets use different versions or levels.
DiffReport codeword_diff(const CodewordSet& original, const CodewordSet& target);

struct ByteFlip {
  std::size_t index = 0;  ///< wire position
  std::size_t block = 0;
  std::size_t block_index = 0;
  std::uint8_t xor_mask = 0;
  int bits = 0;
};

/// Bytes to flip in an original encoding so that a bounded-distance decoder
/// returns the target encoding.
struct AttackPlan {
  QrConfig config;
  std::string target_text;
  std::vector<ByteFlip> bytes;  ///< ascending wire index
  std::size_t total_bit_flips = 0;
  std::size_t total_bits = 0;   ///< 8 * total codewords
  std::vector<Coord> pixels;

  bool empty() const noexcept { return bytes.empty(); }
  double percentage() const noexcept {
    return total_bits == 0 ? 0.0 : 100.0 * static_cast<double>(total_bit_flips) / static_cast<double>(total_bits);
  }
};

/// Per block, keeps the |D| - t cheapest differing bytes (ties by ascending
/// wire index). Identical inputs give an empty plan. Throws ConfigMismatch.
AttackPlan minimal_flip_plan(const CodewordSet& original, const CodewordSet& target);

/// Wire codewords with the plan's XOR masks applied.
Bytes apply_plan(const CodewordSet& original, const AttackPlan& plan);

/// Renders the original, toggles the plan's pixels, and decodes. Returns the
/// decoded text; throws VerificationFailed if it is not the target text or a
/// block needed more than t corrections.
std::string verify_plan(const CodewordSet& original, const AttackPlan& plan);

/// Each flipped codeword bit mapped through interleaving and the placement
/// path to its module. Throws LayoutMismatch.
std::vector<Coord> plan_to_pixels(const AttackPlan& plan, const QrConfig& config);

/// Alnum is the QR alphanumeric-mode set: 0-9, A-Z, space and $%*+-./:
enum class Alphabet { All, Printable, Alnum };

Alphabet parse_alphabet(std::string_view s);
bool in_alphabet(Alphabet alphabet, std::uint8_t byte);

struct Candidate {
  std::size_t position = 0;
  std::uint8_t xor_byte = 0;
  std::string text;
  std::size_t bit_flips = 0;
};

struct NearestResult {
  std::vector<Candidate> candidates;  ///< all minimizers, by (position, xor)
  std::size_t minimum_flips = 0;
  std::size_t total_bits = 0;
};

struct SearchOptions {
  Alphabet alphabet = Alphabet::All;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Skip positions whose byte is not wholly inside the first RS block.
  bool first_block_only = false;
};

/// Exhaustive single-byte search: every text position, every XOR value whose
/// result stays in the alphabet. Throws Overflow.
NearestResult nearest_message(const std::string& text, const QrConfig& config, SearchOptions options = {});

/// Bit flips needed to turn `text` into `text` with byte `position` XORed by
/// `xor_byte`, through the full encode, diff and plan route.
std::size_t flip_cost(const std::string& text, const QrConfig& config, std::size_t position, std::uint8_t xor_byte);

struct TableRow {
  std::size_t position = 0;
  std::vector<std::uint8_t> xors;
  std::size_t bit_flips = 0;
};

struct GeneralizationTable {
  int version = 1;
  qr::EcLevel level = qr::EcLevel::L;
  std::size_t capacity = 0;
  std::vector<TableRow> rows;
};

struct TableOptions {
  unsigned threads = 0;
  std::uint64_t seed = 1;
  /// Independent random probe texts; results must agree across all of them.
  int probes = 2;
  /// Report minimizers among edits confined to the first block. The other
  /// blocks can repeat the same pattern at other offsets, or beat it when a
  /// block boundary aligns with a text byte.
  bool first_block_only = true;
};

/// Minimizing (position, xor) pairs for a full-capacity text. Throws
/// VerificationFailed if two probes disagree, UnsupportedVersion.
GeneralizationTable generalization_table(int version, qr::EcLevel level, TableOptions options = {});

/// "14,15 | 0x01 / 0x40,0x80 | 7"
std::string format_row(const GeneralizationTable& table);

/// {"flips","percent","bytes":[{"index","xor","bits"}],"pixels":[[r,c]]}
std::string plan_to_json(const AttackPlan& plan, int indent = -1);

/// Plain PBM of the matrix size plus quiet zone with only the plan's pixels dark.
std::string pixels_to_pbm(const std::vector<Coord>& pixels, int size, int quiet = 4);

}  // namespace qrflip::attack
