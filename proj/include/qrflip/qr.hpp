#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrflip/rs.hpp"

namespace qrflip::qr {

enum class EcLevel { L, M, Q, H };

inline constexpr int kMinVersion = 1;
inline constexpr int kMaxVersion = 40;
inline constexpr int kMaskCount = 8;

char to_char(EcLevel level);
/// Accepts L, M, Q, H (either case). Throws BadFormat.
EcLevel parse_ec_level(std::string_view s);

struct QrConfig {
  int version = 1;
  EcLevel ec = EcLevel::L;
  /// Fixed mask pattern, or nullopt to select the lowest-penalty mask.
  std::optional<int> mask;

  int size() const noexcept { return 17 + 4 * version; }
};

struct BlockSpec {
  std::size_t data_len = 0;
  std::size_t ec_len = 0;
  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// Per-version, per-level split of the codewords into independent RS blocks,
/// shorter blocks first.
struct BlockLayout {
  std::vector<BlockSpec> blocks;
  std::size_t total_data = 0;
  std::size_t total_ec = 0;

  std::size_t total() const noexcept { return total_data + total_ec; }
};

/// Throws UnsupportedVersion outside 1..40.
BlockLayout block_layout(int version, EcLevel level);

/// Number of text bytes a byte-mode segment can carry.
std::size_t capacity(int version, EcLevel level);

/// Width of the character-count field in byte mode: 8 bits up to version 9, 16 after.
int length_field_bits(int version);

/// Byte-mode data codewords before error correction.
struct DataSegment {
  std::uint8_t mode_bits = 0b0100;
  std::size_t length = 0;
  int length_bits = 8;
  Bytes payload;
  std::size_t terminator_bits = 0;
  std::size_t pad_bytes = 0;
  /// The packed, padded data codewords; size equals the layout's total_data.
  Bytes codewords;
};

inline constexpr std::uint8_t kPadByteA = 0xEC;
inline constexpr std::uint8_t kPadByteB = 0x11;

/// Throws Overflow when the text exceeds capacity.
DataSegment build_data_segment(std::span<const std::uint8_t> text, int version, EcLevel level);

/// Inverse of build_data_segment on data codewords; throws BadFormat when the
/// mode is not byte mode or the length field overruns the codewords.
Bytes parse_data_segment(std::span<const std::uint8_t> data_codewords, int version);

struct Block {
  Bytes data;
  Bytes ec;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Position of a codeword byte inside the block structure.
struct WireSlot {
  std::size_t block = 0;
  /// Index inside the block, data bytes first then parity bytes.
  std::size_t index = 0;
  bool is_ec = false;
};

/// wire_slots(layout)[w] names the block byte sent at wire position w.
std::vector<WireSlot> wire_slots(const BlockLayout& layout);

Bytes interleave(std::span<const Block> blocks);
/// Throws LayoutMismatch when the byte count disagrees with the layout.
std::vector<Block> deinterleave(std::span<const std::uint8_t> wire, const BlockLayout& layout);

/// Encoded data and parity per block plus their wire order.
struct CodewordSet {
  QrConfig config;
  BlockLayout layout;
  std::vector<Block> blocks;
  Bytes interleaved;

  /// Data codewords of all blocks, in block order.
  Bytes data_codewords() const;
};

/// Segment, RS-encode every block, interleave. Throws Overflow.
CodewordSet encode(std::span<const std::uint8_t> text, const QrConfig& config);
CodewordSet encode(std::string_view text, const QrConfig& config);

/// Rebuilds the CodewordSet for already-packed data codewords.
CodewordSet encode_data_codewords(std::span<const std::uint8_t> data_codewords, const QrConfig& config);

inline constexpr std::uint16_t kFormatMask = 0x5412;

/// 15-bit format word: 2 level bits, 3 mask bits, 10 BCH parity bits, XOR 0x5412.
std::uint16_t format_info(EcLevel level, int mask);

struct FormatInfo {
  EcLevel level = EcLevel::L;
  int mask = 0;
  int distance = 0;  ///< bit errors corrected
};

/// Nearest valid format word within 3 bit errors, or nullopt.
std::optional<FormatInfo> decode_format_info(std::uint16_t bits);

/// 18-bit version word for versions 7..40.
std::uint32_t version_info(int version);

/// Square grid of modules plus a parallel grid marking function modules.
class ModuleMatrix {
 public:
  explicit ModuleMatrix(int size = 21)
      : size_(size), dark_(static_cast<std::size_t>(size * size), 0), function_(dark_.size(), 0) {}

  int size() const noexcept { return size_; }
  int version() const noexcept { return (size_ - 17) / 4; }

  bool dark(int row, int col) const { return dark_[index(row, col)] != 0; }
  void set_dark(int row, int col, bool value) { dark_[index(row, col)] = value ? 1 : 0; }
  void toggle(int row, int col) { dark_[index(row, col)] ^= 1; }

  bool is_function(int row, int col) const { return function_[index(row, col)] != 0; }
  void set_function(int row, int col, bool dark_value) {
    function_[index(row, col)] = 1;
    set_dark(row, col, dark_value);
  }

  /// Mask recorded at construction by build_matrix; decoders must not rely on it.
  std::optional<int> mask() const noexcept { return mask_; }
  void set_mask(std::optional<int> m) noexcept { mask_ = m; }

  friend bool operator==(const ModuleMatrix& a, const ModuleMatrix& b) noexcept {
    return a.size_ == b.size_ && a.dark_ == b.dark_;
  }

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(col);
  }

  int size_;
  std::vector<std::uint8_t> dark_;
  std::vector<std::uint8_t> function_;
  std::optional<int> mask_;
};

using Coord = std::pair<int, int>;  ///< (row, col)

/// Finder, separator, timing, alignment and dark modules drawn; format and
/// version areas reserved as function modules (light).
ModuleMatrix function_patterns(int version);

/// Coordinates of every non-function module in placement order: the
/// two-column zig-zag from the bottom-right corner, skipping the vertical
/// timing column. Entry 8*w + (7 - b) holds bit b of wire codeword w.
const std::vector<Coord>& data_path(int version);

/// Mask predicate: true where the mask inverts the module.
bool mask_predicate(int mask, int row, int col);

/// XOR the mask over every non-function module. An involution.
ModuleMatrix apply_mask(ModuleMatrix matrix, int mask);

/// Writes both copies of the format word (and the version word for v7+).
void draw_format_and_version(ModuleMatrix& matrix, EcLevel level, int mask);

/// Standard four-term penalty score (runs, 2x2 blocks, finder-like patterns, balance).
long penalty_score(const ModuleMatrix& matrix);

/// Place the interleaved codewords, choose or apply the mask, stamp format
/// information. Throws LayoutMismatch.
ModuleMatrix build_matrix(const CodewordSet& codewords, const QrConfig& config);
ModuleMatrix build_matrix(const CodewordSet& codewords);

struct MatrixDecode {
  Bytes text;
  int version = 0;
  EcLevel level = EcLevel::L;
  int mask = 0;
  std::vector<std::size_t> block_errors;
  /// Corrected wire codewords.
  Bytes codewords;

  std::string text_string() const { return std::string(text.begin(), text.end()); }
};

/// Read the format word, unmask, deinterleave, RS-decode each block, parse the
/// segment. Throws FormatUnreadable, BlockDecodeFailure, BadFormat.
MatrixDecode decode_matrix(const ModuleMatrix& matrix);

/// Raw wire bytes read from the data path after removing `mask`.
Bytes read_codewords(const ModuleMatrix& matrix, int mask);

/// Plain PBM (P1), dark = 1, with a quiet zone of `quiet` light modules.
std::string to_pbm(const ModuleMatrix& matrix, int quiet = 4);
/// Parses P1 PBM; a quiet zone, if present, is detected and stripped.
ModuleMatrix from_pbm(std::string_view pbm);

/// Two characters per module, '#' for dark.
std::string to_ascii(const ModuleMatrix& matrix, int quiet = 1);

/// {"version","ec","mask","blocks":[{"data","ec"}],"interleaved"} with bytes as integers.
std::string to_json(const CodewordSet& codewords, std::optional<int> mask, int indent = -1);

}  // namespace qrflip::qr
