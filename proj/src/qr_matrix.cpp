#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>

#include "qrflip/qr.hpp"

namespace qrflip::qr {

namespace {

constexpr std::uint32_t kFormatGenerator = 0x537;    // x^10+x^8+x^5+x^4+x^2+x+1
constexpr std::uint32_t kVersionGenerator = 0x1F25;  // x^12+x^11+x^10+x^9+x^8+x^5+x^2+1

int level_bits(EcLevel level) {
  switch (level) {
    case EcLevel::L: return 1;
    case EcLevel::M: return 0;
    case EcLevel::Q: return 3;
    case EcLevel::H: return 2;
  }
  return 0;
}

int version_for_size(int size) {
  if (size < 21 || (size - 17) % 4 != 0 || (size - 17) / 4 > kMaxVersion)
    throw Error(Errc::LayoutMismatch, "matrix size " + std::to_string(size) + " is not a QR size");
  return (size - 17) / 4;
}

std::vector<int> alignment_positions(int version) {
  if (version == 1) return {};
  const int count = version / 7 + 2;
  const int step = version == 32 ? 26 : (version * 4 + count * 2 + 1) / (2 * count - 2) * 2;
  std::vector<int> out;
  for (int i = 0, pos = version * 4 + 10; i < count - 1; ++i, pos -= step) out.insert(out.begin(), pos);
  out.insert(out.begin(), 6);
  return out;
}

// Format bit i lives at first_copy[i] and second_copy[i].
struct FormatCells {
  std::array<Coord, 15> first;
  std::array<Coord, 15> second;
};

FormatCells format_cells(int size) {
  FormatCells cells;
  for (int i = 0; i <= 5; ++i) cells.first[static_cast<std::size_t>(i)] = {i, 8};
  cells.first[6] = {7, 8};
  cells.first[7] = {8, 8};
  cells.first[8] = {8, 7};
  for (int i = 9; i < 15; ++i) cells.first[static_cast<std::size_t>(i)] = {8, 14 - i};
  for (int i = 0; i < 8; ++i) cells.second[static_cast<std::size_t>(i)] = {8, size - 1 - i};
  for (int i = 8; i < 15; ++i) cells.second[static_cast<std::size_t>(i)] = {size - 15 + i, 8};
  return cells;
}

void draw_finder(ModuleMatrix& m, int row, int col) {
  for (int dr = -4; dr <= 4; ++dr)
    for (int dc = -4; dc <= 4; ++dc) {
      const int r = row + dr;
      const int c = col + dc;
      if (r < 0 || r >= m.size() || c < 0 || c >= m.size()) continue;
      const int dist = std::max(std::abs(dr), std::abs(dc));
      m.set_function(r, c, dist != 2 && dist != 4);
    }
}

void draw_alignment(ModuleMatrix& m, int row, int col) {
  for (int dr = -2; dr <= 2; ++dr)
    for (int dc = -2; dc <= 2; ++dc) m.set_function(row + dr, col + dc, std::max(std::abs(dr), std::abs(dc)) != 1);
}

ModuleMatrix build_function_patterns(int version) {
  ModuleMatrix m(17 + 4 * version);
  const int size = m.size();
  for (int i = 0; i < size; ++i) {
    m.set_function(6, i, i % 2 == 0);
    m.set_function(i, 6, i % 2 == 0);
  }
  draw_finder(m, 3, 3);
  draw_finder(m, 3, size - 4);
  draw_finder(m, size - 4, 3);

  const auto align = alignment_positions(version);
  const std::size_t n = align.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if ((i == 0 && j == 0) || (i == 0 && j == n - 1) || (i == n - 1 && j == 0)) continue;
      draw_alignment(m, align[i], align[j]);
    }

  // Reserve the format and version areas; their contents are stamped later.
  const FormatCells cells = format_cells(size);
  for (std::size_t i = 0; i < 15; ++i) {
    m.set_function(cells.first[i].first, cells.first[i].second, false);
    m.set_function(cells.second[i].first, cells.second[i].second, false);
  }
  m.set_function(size - 8, 8, true);
  if (version >= 7)
    for (int i = 0; i < 18; ++i) {
      const int a = size - 11 + i % 3;
      const int b = i / 3;
      m.set_function(b, a, false);
      m.set_function(a, b, false);
    }
  return m;
}

std::vector<Coord> build_data_path(const ModuleMatrix& functions) {
  const int size = functions.size();
  std::vector<Coord> path;
  for (int right = size - 1; right >= 1; right -= 2) {
    if (right == 6) right = 5;
    const bool upward = ((right + 1) & 2) == 0;
    for (int vert = 0; vert < size; ++vert)
      for (int j = 0; j < 2; ++j) {
        const int col = right - j;
        const int row = upward ? size - 1 - vert : vert;
        if (!functions.is_function(row, col)) path.emplace_back(row, col);
      }
  }
  return path;
}

}  // namespace

std::uint16_t format_info(EcLevel level, int mask) {
  if (mask < 0 || mask >= kMaskCount) throw Error(Errc::BadFormat, "mask must be in 0..7");
  const std::uint32_t data = static_cast<std::uint32_t>(level_bits(level) << 3 | mask);
  std::uint32_t rem = data;
  for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * kFormatGenerator);
  return static_cast<std::uint16_t>(((data << 10) | (rem & 0x3FF)) ^ kFormatMask);
}

std::optional<FormatInfo> decode_format_info(std::uint16_t bits) {
  std::optional<FormatInfo> best;
  for (EcLevel level : {EcLevel::L, EcLevel::M, EcLevel::Q, EcLevel::H})
    for (int mask = 0; mask < kMaskCount; ++mask) {
      const int d = std::popcount(static_cast<unsigned>(format_info(level, mask) ^ bits));
      if (d <= 3 && (!best || d < best->distance)) best = FormatInfo{level, mask, d};
    }
  return best;
}

std::uint32_t version_info(int version) {
  if (version < 7 || version > kMaxVersion) throw Error(Errc::UnsupportedVersion, "version info exists for 7..40 only");
  std::uint32_t rem = static_cast<std::uint32_t>(version);
  for (int i = 0; i < 12; ++i) rem = (rem << 1) ^ ((rem >> 11) * kVersionGenerator);
  return static_cast<std::uint32_t>(version) << 12 | (rem & 0xFFF);
}

ModuleMatrix function_patterns(int version) {
  if (version < kMinVersion || version > kMaxVersion)
    throw Error(Errc::UnsupportedVersion, "version " + std::to_string(version) + " outside 1..40");
  static std::array<std::once_flag, kMaxVersion + 1> once;
  static std::array<std::optional<ModuleMatrix>, kMaxVersion + 1> cache;
  const auto v = static_cast<std::size_t>(version);
  std::call_once(once[v], [&] { cache[v] = build_function_patterns(version); });
  return *cache[v];
}

const std::vector<Coord>& data_path(int version) {
  if (version < kMinVersion || version > kMaxVersion)
    throw Error(Errc::UnsupportedVersion, "version " + std::to_string(version) + " outside 1..40");
  static std::array<std::once_flag, kMaxVersion + 1> once;
  static std::array<std::vector<Coord>, kMaxVersion + 1> cache;
  const auto v = static_cast<std::size_t>(version);
  std::call_once(once[v], [&] { cache[v] = build_data_path(function_patterns(version)); });
  return cache[v];
}

bool mask_predicate(int mask, int row, int col) {
  switch (mask) {
    case 0: return (row + col) % 2 == 0;
    case 1: return row % 2 == 0;
    case 2: return col % 3 == 0;
    case 3: return (row + col) % 3 == 0;
    case 4: return (row / 2 + col / 3) % 2 == 0;
    case 5: return row * col % 2 + row * col % 3 == 0;
    case 6: return (row * col % 2 + row * col % 3) % 2 == 0;
    case 7: return ((row + col) % 2 + row * col % 3) % 2 == 0;
    default: throw Error(Errc::BadFormat, "mask must be in 0..7");
  }
}

ModuleMatrix apply_mask(ModuleMatrix matrix, int mask) {
  for (const auto& [r, c] : data_path(matrix.version()))
    if (mask_predicate(mask, r, c)) matrix.toggle(r, c);
  return matrix;
}

void draw_format_and_version(ModuleMatrix& matrix, EcLevel level, int mask) {
  const std::uint16_t bits = format_info(level, mask);
  const FormatCells cells = format_cells(matrix.size());
  for (std::size_t i = 0; i < 15; ++i) {
    const bool bit = ((bits >> i) & 1u) != 0;
    matrix.set_function(cells.first[i].first, cells.first[i].second, bit);
    matrix.set_function(cells.second[i].first, cells.second[i].second, bit);
  }
  matrix.set_function(matrix.size() - 8, 8, true);

  const int version = matrix.version();
  if (version >= 7) {
    const std::uint32_t vbits = version_info(version);
    for (int i = 0; i < 18; ++i) {
      const bool bit = ((vbits >> i) & 1u) != 0;
      const int a = matrix.size() - 11 + i % 3;
      const int b = i / 3;
      matrix.set_function(b, a, bit);
      matrix.set_function(a, b, bit);
    }
  }
}

long penalty_score(const ModuleMatrix& m) {
  constexpr long kRun = 3, kBlock = 3, kFinder = 40, kBalance = 10;
  const int size = m.size();
  long score = 0;

  auto line_penalty = [&](bool rows) {
    for (int a = 0; a < size; ++a) {
      bool color = false;
      int run = 0;
      unsigned window = 0;
      for (int b = 0; b < size; ++b) {
        const bool dark = rows ? m.dark(a, b) : m.dark(b, a);
        if (b == 0 || dark != color) {
          color = dark;
          run = 1;
        } else if (++run == 5) {
          score += kRun;
        } else if (run > 5) {
          ++score;
        }
        // 1:1:3:1:1 finder-like run with four light modules on one side.
        window = ((window << 1) & 0x7FF) | (dark ? 1u : 0u);
        if (b >= 10 && (window == 0x05D || window == 0x5D0)) score += kFinder;
      }
    }
  };
  line_penalty(true);
  line_penalty(false);

  for (int r = 0; r + 1 < size; ++r)
    for (int c = 0; c + 1 < size; ++c) {
      const bool d = m.dark(r, c);
      if (d == m.dark(r, c + 1) && d == m.dark(r + 1, c) && d == m.dark(r + 1, c + 1)) score += kBlock;
    }

  long dark = 0;
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) dark += m.dark(r, c);
  const long total = static_cast<long>(size) * size;
  for (long k = 0; dark * 20 < (9 - k) * total || dark * 20 > (11 + k) * total; ++k) score += kBalance;
  return score;
}

ModuleMatrix build_matrix(const CodewordSet& codewords, const QrConfig& config) {
  if (config.version != codewords.config.version || config.ec != codewords.config.ec)
    throw Error(Errc::LayoutMismatch, "configuration differs from the codeword set");
  const BlockLayout layout = block_layout(config.version, config.ec);
  if (codewords.interleaved.size() != layout.total())
    throw Error(Errc::LayoutMismatch, "codeword count does not match the layout");
  if (config.mask && (*config.mask < 0 || *config.mask >= kMaskCount))
    throw Error(Errc::BadFormat, "mask must be in 0..7");

  ModuleMatrix placed = function_patterns(config.version);
  const auto& path = data_path(config.version);
  const std::size_t bits = codewords.interleaved.size() * 8;
  for (std::size_t i = 0; i < bits; ++i) {
    const bool bit = ((codewords.interleaved[i / 8] >> (7 - i % 8)) & 1u) != 0;
    placed.set_dark(path[i].first, path[i].second, bit);
  }

  auto finish = [&](int mask) {
    ModuleMatrix m = apply_mask(placed, mask);
    draw_format_and_version(m, config.ec, mask);
    m.set_mask(mask);
    return m;
  };
  if (config.mask) return finish(*config.mask);

  std::optional<ModuleMatrix> best;
  long best_score = std::numeric_limits<long>::max();
  for (int mask = 0; mask < kMaskCount; ++mask) {
    ModuleMatrix m = finish(mask);
    const long score = penalty_score(m);
    if (score < best_score) {
      best_score = score;
      best = std::move(m);
    }
  }
  return *best;
}

ModuleMatrix build_matrix(const CodewordSet& codewords) { return build_matrix(codewords, codewords.config); }

Bytes read_codewords(const ModuleMatrix& matrix, int mask) {
  const int version = version_for_size(matrix.size());
  const auto& path = data_path(version);
  Bytes wire(path.size() / 8, 0);
  for (std::size_t i = 0; i < wire.size() * 8; ++i) {
    const auto [r, c] = path[i];
    const bool bit = matrix.dark(r, c) != mask_predicate(mask, r, c);
    if (bit) wire[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return wire;
}

MatrixDecode decode_matrix(const ModuleMatrix& matrix) {
  MatrixDecode out;
  out.version = version_for_size(matrix.size());

  const FormatCells cells = format_cells(matrix.size());
  std::uint16_t first = 0;
  std::uint16_t second = 0;
  for (std::size_t i = 0; i < 15; ++i) {
    if (matrix.dark(cells.first[i].first, cells.first[i].second)) first |= static_cast<std::uint16_t>(1u << i);
    if (matrix.dark(cells.second[i].first, cells.second[i].second)) second |= static_cast<std::uint16_t>(1u << i);
  }
  auto a = decode_format_info(first);
  auto b = decode_format_info(second);
  if (!a && !b) throw Error(Errc::FormatUnreadable, "neither format copy is within 3 bit errors of a valid word");
  const FormatInfo fmt = (a && (!b || a->distance <= b->distance)) ? *a : *b;
  out.level = fmt.level;
  out.mask = fmt.mask;

  const BlockLayout layout = block_layout(out.version, out.level);
  Bytes wire = read_codewords(matrix, out.mask);
  wire.resize(layout.total());
  std::vector<Block> blocks = deinterleave(wire, layout);

  Bytes data;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    Block& blk = blocks[bi];
    Bytes received = blk.data;
    received.insert(received.end(), blk.ec.begin(), blk.ec.end());
    const std::size_t n = received.size();
    RsDecodeResult fixed;
    try {
      fixed = rs_decode_bytes(rs_params_qr(n, blk.data.size()), received);
    } catch (const Error& e) {
      throw Error(Errc::BlockDecodeFailure, "block " + std::to_string(bi) + ": " + e.what());
    }
    for (std::size_t i = 0; i < blk.data.size(); ++i) blk.data[i] = static_cast<std::uint8_t>(fixed.corrected[i]);
    for (std::size_t i = 0; i < blk.ec.size(); ++i)
      blk.ec[i] = static_cast<std::uint8_t>(fixed.corrected[blk.data.size() + i]);
    out.block_errors.push_back(fixed.errors);
    data.insert(data.end(), blk.data.begin(), blk.data.end());
  }
  out.codewords = interleave(blocks);
  out.text = parse_data_segment(data, out.version);
  return out;
}

std::string to_pbm(const ModuleMatrix& matrix, int quiet) {
  const int size = matrix.size();
  const int width = size + 2 * quiet;
  std::ostringstream os;
  os << "P1\n" << width << ' ' << width << '\n';
  for (int r = -quiet; r < size + quiet; ++r) {
    for (int c = -quiet; c < size + quiet; ++c) {
      const bool inside = r >= 0 && r < size && c >= 0 && c < size;
      if (c != -quiet) os << ' ';
      os << (inside && matrix.dark(r, c) ? '1' : '0');
    }
    os << '\n';
  }
  return os.str();
}

ModuleMatrix from_pbm(std::string_view pbm) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < pbm.size()) {
      if (pbm[pos] == '#') {
        while (pos < pbm.size() && pbm[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(pbm[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&] {
    skip_space();
    int v = 0;
    const std::size_t start = pos;
    while (pos < pbm.size() && std::isdigit(static_cast<unsigned char>(pbm[pos]))) v = v * 10 + (pbm[pos++] - '0');
    if (pos == start) throw Error(Errc::BadFormat, "malformed PBM header");
    return v;
  };

  skip_space();
  if (pbm.substr(pos, 2) != "P1") throw Error(Errc::BadFormat, "only plain PBM (P1) is supported");
  pos += 2;
  const int width = read_int();
  const int height = read_int();
  if (width != height || width <= 0) throw Error(Errc::BadFormat, "QR bitmap must be square");

  std::vector<std::uint8_t> pixels;
  pixels.reserve(static_cast<std::size_t>(width * height));
  while (pixels.size() < static_cast<std::size_t>(width * height)) {
    skip_space();
    if (pos >= pbm.size()) throw Error(Errc::BadFormat, "PBM pixel data truncated");
    const char ch = pbm[pos++];
    if (ch != '0' && ch != '1') throw Error(Errc::BadFormat, "unexpected character in PBM data");
    pixels.push_back(ch == '1');
  }
  auto px = [&](int r, int c) { return pixels[static_cast<std::size_t>(r * width + c)] != 0; };

  // Strip a uniformly light border as the quiet zone.
  int border = 0;
  auto ring_light = [&](int k) {
    for (int i = k; i < width - k; ++i)
      if (px(k, i) || px(width - 1 - k, i) || px(i, k) || px(i, width - 1 - k)) return false;
    return true;
  };
  while (2 * (border + 1) < width && ring_light(border)) ++border;
  const int size = width - 2 * border;
  version_for_size(size);

  ModuleMatrix m(size);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) m.set_dark(r, c, px(r + border, c + border));
  return m;
}

std::string to_ascii(const ModuleMatrix& matrix, int quiet) {
  std::string out;
  const int size = matrix.size();
  for (int r = -quiet; r < size + quiet; ++r) {
    for (int c = -quiet; c < size + quiet; ++c) {
      const bool inside = r >= 0 && r < size && c >= 0 && c < size;
      out += inside && matrix.dark(r, c) ? "##" : "  ";
    }
    out += '\n';
  }
  return out;
}

}  // namespace qrflip::qr
