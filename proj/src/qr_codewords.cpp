#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <mutex>

#include <json.hpp>

#include "qrflip/qr.hpp"

namespace qrflip::qr {

namespace {

// ISO/IEC 18004 Table 9: error correction codewords per block and number of
// blocks, indexed [level][version]; index 0 unused. Level order L, M, Q, H.
constexpr std::array<std::array<int, 41>, 4> kEcPerBlock = {{
    {-1, 7,  10, 15, 20, 26, 18, 20, 24, 30, 18, 20, 24, 26, 30, 22, 24, 28, 30, 28, 28,
     28, 28, 30, 30, 26, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 10, 16, 26, 18, 24, 16, 18, 22, 22, 26, 30, 22, 22, 24, 24, 28, 28, 26, 26, 26,
     26, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28, 28},
    {-1, 13, 22, 18, 26, 18, 24, 18, 22, 20, 24, 28, 26, 24, 20, 30, 24, 28, 28, 26, 30,
     28, 30, 30, 30, 30, 28, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
    {-1, 17, 28, 22, 16, 22, 28, 26, 26, 24, 28, 24, 28, 22, 24, 24, 30, 28, 28, 26, 28,
     30, 24, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30, 30},
}};

constexpr std::array<std::array<int, 41>, 4> kBlockCount = {{
    {-1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4, 4, 4, 4, 4, 6, 6, 6, 6, 7, 8,
     8, 9, 9, 10, 12, 12, 12, 13, 14, 15, 16, 17, 18, 19, 19, 20, 21, 22, 24, 25},
    {-1, 1, 1, 1, 2, 2, 4, 4, 4, 5, 5, 5, 8, 9, 9, 10, 10, 11, 13, 14, 16,
     17, 17, 18, 20, 21, 23, 25, 26, 28, 29, 31, 33, 35, 37, 38, 40, 43, 45, 47, 49},
    {-1, 1, 1, 2, 2, 4, 4, 6, 6, 8, 8, 8, 10, 12, 16, 12, 17, 16, 18, 21, 20,
     23, 23, 25, 27, 29, 34, 34, 35, 38, 40, 43, 45, 48, 51, 53, 56, 59, 62, 65, 68},
    {-1, 1, 1, 2, 4, 4, 4, 5, 6, 8, 8, 11, 11, 16, 16, 18, 16, 19, 21, 25, 25,
     25, 34, 30, 32, 35, 37, 40, 42, 45, 48, 51, 54, 57, 60, 63, 66, 70, 74, 77, 81},
}};

void require_version(int version) {
  if (version < kMinVersion || version > kMaxVersion)
    throw Error(Errc::UnsupportedVersion, "version " + std::to_string(version) + " outside 1..40");
}

// Modules available for codeword bits: the whole grid minus function patterns.
std::size_t raw_data_modules(int version) {
  std::size_t result = static_cast<std::size_t>((16 * version + 128) * version + 64);
  if (version >= 2) {
    const int align = version / 7 + 2;
    result -= static_cast<std::size_t>((25 * align - 10) * align - 55);
    if (version >= 7) result -= 36;
  }
  return result;
}

class BitWriter {
 public:
  void put(std::uint32_t value, int bits) {
    for (int i = bits - 1; i >= 0; --i) bits_.push_back(((value >> i) & 1u) != 0);
  }
  std::size_t size() const noexcept { return bits_.size(); }
  Bytes bytes() const {
    Bytes out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
  }

 private:
  std::vector<bool> bits_;
};

}  // namespace

char to_char(EcLevel level) {
  switch (level) {
    case EcLevel::L: return 'L';
    case EcLevel::M: return 'M';
    case EcLevel::Q: return 'Q';
    case EcLevel::H: return 'H';
  }
  return '?';
}

EcLevel parse_ec_level(std::string_view s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'L': return EcLevel::L;
      case 'M': return EcLevel::M;
      case 'Q': return EcLevel::Q;
      case 'H': return EcLevel::H;
      default: break;
    }
  }
  throw Error(Errc::BadFormat, "error correction level must be one of L, M, Q, H");
}

BlockLayout block_layout(int version, EcLevel level) {
  require_version(version);
  const auto li = static_cast<std::size_t>(level);
  const auto vi = static_cast<std::size_t>(version);
  const std::size_t ec = static_cast<std::size_t>(kEcPerBlock[li][vi]);
  const std::size_t count = static_cast<std::size_t>(kBlockCount[li][vi]);
  const std::size_t raw = raw_data_modules(version) / 8;
  const std::size_t short_count = count - raw % count;
  const std::size_t short_len = raw / count;

  BlockLayout layout;
  for (std::size_t i = 0; i < count; ++i)
    layout.blocks.push_back({short_len - ec + (i < short_count ? 0 : 1), ec});
  layout.total_ec = ec * count;
  layout.total_data = raw - layout.total_ec;
  return layout;
}

int length_field_bits(int version) { return version <= 9 ? 8 : 16; }

std::size_t capacity(int version, EcLevel level) {
  const std::size_t bits = block_layout(version, level).total_data * 8;
  return (bits - 4 - static_cast<std::size_t>(length_field_bits(version))) / 8;
}

DataSegment build_data_segment(std::span<const std::uint8_t> text, int version, EcLevel level) {
  const std::size_t cap = capacity(version, level);
  if (text.size() > cap)
    throw Error(Errc::Overflow, std::to_string(text.size()) + " bytes exceed the capacity of " +
                                    std::to_string(cap) + " for version " + std::to_string(version) + "-" +
                                    to_char(level));
  DataSegment seg;
  seg.length = text.size();
  seg.length_bits = length_field_bits(version);
  seg.payload.assign(text.begin(), text.end());

  const std::size_t capacity_bits = block_layout(version, level).total_data * 8;
  BitWriter w;
  w.put(seg.mode_bits, 4);
  w.put(static_cast<std::uint32_t>(text.size()), seg.length_bits);
  for (std::uint8_t b : text) w.put(b, 8);
  seg.terminator_bits = std::min<std::size_t>(4, capacity_bits - w.size());
  w.put(0, static_cast<int>(seg.terminator_bits));
  w.put(0, static_cast<int>((8 - w.size() % 8) % 8));

  seg.codewords = w.bytes();
  const std::size_t total = capacity_bits / 8;
  for (std::uint8_t pad = kPadByteA; seg.codewords.size() < total; pad ^= kPadByteA ^ kPadByteB) {
    seg.codewords.push_back(pad);
    ++seg.pad_bytes;
  }
  return seg;
}

Bytes parse_data_segment(std::span<const std::uint8_t> data_codewords, int version) {
  const std::size_t total_bits = data_codewords.size() * 8;
  std::size_t pos = 0;
  auto read = [&](int bits) {
    if (pos + static_cast<std::size_t>(bits) > total_bits) throw Error(Errc::BadFormat, "segment overruns the data codewords");
    std::uint32_t v = 0;
    for (int i = 0; i < bits; ++i, ++pos) v = (v << 1) | ((data_codewords[pos / 8] >> (7 - pos % 8)) & 1u);
    return v;
  };
  const std::uint32_t mode = read(4);
  if (mode != 0b0100) throw Error(Errc::BadFormat, "mode indicator " + std::to_string(mode) + " is not byte mode");
  const std::uint32_t length = read(length_field_bits(version));
  Bytes text;
  text.reserve(length);
  for (std::uint32_t i = 0; i < length; ++i) text.push_back(static_cast<std::uint8_t>(read(8)));
  return text;
}

std::vector<WireSlot> wire_slots(const BlockLayout& layout) {
  std::vector<WireSlot> slots;
  slots.reserve(layout.total());
  std::size_t max_data = 0;
  for (const auto& b : layout.blocks) max_data = std::max(max_data, b.data_len);
  for (std::size_t i = 0; i < max_data; ++i)
    for (std::size_t b = 0; b < layout.blocks.size(); ++b)
      if (i < layout.blocks[b].data_len) slots.push_back({b, i, false});
  const std::size_t ec = layout.blocks.empty() ? 0 : layout.blocks.front().ec_len;
  for (std::size_t i = 0; i < ec; ++i)
    for (std::size_t b = 0; b < layout.blocks.size(); ++b)
      slots.push_back({b, layout.blocks[b].data_len + i, true});
  return slots;
}

Bytes interleave(std::span<const Block> blocks) {
  Bytes out;
  std::size_t max_data = 0;
  std::size_t max_ec = 0;
  for (const auto& b : blocks) {
    max_data = std::max(max_data, b.data.size());
    max_ec = std::max(max_ec, b.ec.size());
  }
  for (std::size_t i = 0; i < max_data; ++i)
    for (const auto& b : blocks)
      if (i < b.data.size()) out.push_back(b.data[i]);
  for (std::size_t i = 0; i < max_ec; ++i)
    for (const auto& b : blocks)
      if (i < b.ec.size()) out.push_back(b.ec[i]);
  return out;
}

std::vector<Block> deinterleave(std::span<const std::uint8_t> wire, const BlockLayout& layout) {
  if (wire.size() != layout.total())
    throw Error(Errc::LayoutMismatch, "got " + std::to_string(wire.size()) + " codewords, layout has " +
                                          std::to_string(layout.total()));
  std::vector<Block> blocks(layout.blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    blocks[b].data.assign(layout.blocks[b].data_len, 0);
    blocks[b].ec.assign(layout.blocks[b].ec_len, 0);
  }
  const auto slots = wire_slots(layout);
  for (std::size_t w = 0; w < slots.size(); ++w) {
    const WireSlot& s = slots[w];
    if (s.is_ec)
      blocks[s.block].ec[s.index - layout.blocks[s.block].data_len] = wire[w];
    else
      blocks[s.block].data[s.index] = wire[w];
  }
  return blocks;
}

Bytes CodewordSet::data_codewords() const {
  Bytes out;
  out.reserve(layout.total_data);
  for (const auto& b : blocks) out.insert(out.end(), b.data.begin(), b.data.end());
  return out;
}

namespace {

// RS parameters are shared across calls; at most a handful of (n, k) pairs per layout.
const RsParams& cached_params(std::size_t n, std::size_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, RsParams> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({n, k});
  if (it == cache.end()) it = cache.emplace(std::make_pair(n, k), rs_params_qr(n, k)).first;
  return it->second;
}

}  // namespace

CodewordSet encode_data_codewords(std::span<const std::uint8_t> data_codewords, const QrConfig& config) {
  CodewordSet set;
  set.config = config;
  set.layout = block_layout(config.version, config.ec);
  if (data_codewords.size() != set.layout.total_data)
    throw Error(Errc::LayoutMismatch, "data codeword count does not match the layout");
  std::size_t offset = 0;
  for (const auto& spec : set.layout.blocks) {
    Block block;
    block.data.assign(data_codewords.begin() + static_cast<std::ptrdiff_t>(offset),
                      data_codewords.begin() + static_cast<std::ptrdiff_t>(offset + spec.data_len));
    offset += spec.data_len;
    block.ec = rs_parity(cached_params(spec.data_len + spec.ec_len, spec.data_len), block.data);
    set.blocks.push_back(std::move(block));
  }
  set.interleaved = interleave(set.blocks);
  return set;
}

CodewordSet encode(std::span<const std::uint8_t> text, const QrConfig& config) {
  const DataSegment seg = build_data_segment(text, config.version, config.ec);
  return encode_data_codewords(seg.codewords, config);
}

CodewordSet encode(std::string_view text, const QrConfig& config) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(text.data());
  return encode(std::span<const std::uint8_t>(p, text.size()), config);
}

std::string to_json(const CodewordSet& codewords, std::optional<int> mask, int indent) {
  nlohmann::ordered_json j;
  j["version"] = codewords.config.version;
  j["ec"] = std::string(1, to_char(codewords.config.ec));
  if (mask)
    j["mask"] = *mask;
  else
    j["mask"] = nullptr;
  nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
  for (const auto& b : codewords.blocks) {
    nlohmann::ordered_json jb;
    jb["data"] = b.data;
    jb["ec"] = b.ec;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  j["interleaved"] = codewords.interleaved;
  return j.dump(indent);
}

}  // namespace qrflip::qr
