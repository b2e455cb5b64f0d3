#include "qrflip/attack.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string_view>
#include <thread>

#include <json.hpp>

namespace qrflip::attack {

namespace {

void require_same_config(const CodewordSet& a, const CodewordSet& b) {
  if (a.config.version != b.config.version || a.config.ec != b.config.ec)
    throw Error(Errc::ConfigMismatch, "codeword sets use different versions or levels");
}

std::string hex_byte(std::uint8_t b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned>(b));
  return buf;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

DiffReport codeword_diff(const CodewordSet& original, const CodewordSet& target) {
  require_same_config(original, target);
  DiffReport report;
  report.by_block.resize(original.layout.blocks.size());
  const auto slots = qr::wire_slots(original.layout);
  for (std::size_t w = 0; w < slots.size(); ++w) {
    const std::uint8_t a = original.interleaved[w];
    const std::uint8_t b = target.interleaved[w];
    if (a == b) continue;
    report.by_block[slots[w].block].push_back(report.rows.size());
    report.rows.push_back({w, slots[w].block, slots[w].index, slots[w].is_ec, a, b,
                           std::popcount(static_cast<unsigned>(a ^ b))});
  }
  return report;
}

AttackPlan minimal_flip_plan(const CodewordSet& original, const CodewordSet& target) {
  const DiffReport diff = codeword_diff(original, target);
  AttackPlan plan;
  plan.config = original.config;
  const Bytes text = qr::parse_data_segment(target.data_codewords(), target.config.version);
  plan.target_text.assign(text.begin(), text.end());
  plan.total_bits = original.layout.total() * 8;

  for (std::size_t b = 0; b < diff.by_block.size(); ++b) {
    std::vector<std::size_t> rows = diff.by_block[b];
    const std::size_t t = original.layout.blocks[b].ec_len / 2;
    if (rows.size() <= t) continue;
    const std::size_t keep = rows.size() - t;
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t x, std::size_t y) {
      const DiffRow& rx = diff.rows[x];
      const DiffRow& ry = diff.rows[y];
      return rx.bit_cost != ry.bit_cost ? rx.bit_cost < ry.bit_cost : rx.index < ry.index;
    });
    for (std::size_t i = 0; i < keep; ++i) {
      const DiffRow& r = diff.rows[rows[i]];
      plan.bytes.push_back({r.index, r.block, r.block_index, static_cast<std::uint8_t>(r.original ^ r.target), r.bit_cost});
      plan.total_bit_flips += static_cast<std::size_t>(r.bit_cost);
    }
  }
  std::sort(plan.bytes.begin(), plan.bytes.end(), [](const ByteFlip& a, const ByteFlip& b) { return a.index < b.index; });
  plan.pixels = plan_to_pixels(plan, plan.config);
  return plan;
}

Bytes apply_plan(const CodewordSet& original, const AttackPlan& plan) {
  Bytes wire = original.interleaved;
  for (const ByteFlip& f : plan.bytes) {
    if (f.index >= wire.size()) throw Error(Errc::LayoutMismatch, "plan index beyond the codewords");
    wire[f.index] ^= f.xor_mask;
  }
  return wire;
}

std::vector<Coord> plan_to_pixels(const AttackPlan& plan, const QrConfig& config) {
  const qr::BlockLayout layout = qr::block_layout(config.version, config.ec);
  const auto& path = qr::data_path(config.version);
  std::vector<Coord> pixels;
  for (const ByteFlip& f : plan.bytes) {
    if (f.index >= layout.total()) throw Error(Errc::LayoutMismatch, "plan index beyond the layout");
    for (int bit = 7; bit >= 0; --bit)
      if ((f.xor_mask >> bit) & 1u) pixels.push_back(path[f.index * 8 + static_cast<std::size_t>(7 - bit)]);
  }
  return pixels;
}

std::string verify_plan(const CodewordSet& original, const AttackPlan& plan) {
  if (original.config.version != plan.config.version || original.config.ec != plan.config.ec)
    throw Error(Errc::ConfigMismatch, "plan was built for a different configuration");
  qr::ModuleMatrix matrix = qr::build_matrix(original, plan.config);
  for (const auto& [r, c] : plan_to_pixels(plan, plan.config)) matrix.toggle(r, c);

  qr::MatrixDecode decoded;
  try {
    decoded = qr::decode_matrix(matrix);
  } catch (const Error& e) {
    throw Error(Errc::VerificationFailed, std::string("manipulated matrix does not decode: ") + e.what());
  }
  const std::string text = decoded.text_string();
  if (!plan.empty() && text != plan.target_text)
    throw Error(Errc::VerificationFailed, "decoded \"" + text + "\" instead of \"" + plan.target_text + "\"");
  for (std::size_t b = 0; b < decoded.block_errors.size(); ++b)
    if (decoded.block_errors[b] > original.layout.blocks[b].ec_len / 2)
      throw Error(Errc::VerificationFailed, "block correction count exceeds t");
  return text;
}

Alphabet parse_alphabet(std::string_view s) {
  if (s == "all") return Alphabet::All;
  if (s == "printable") return Alphabet::Printable;
  if (s == "alnum") return Alphabet::Alnum;
  throw Error(Errc::BadFormat, "alphabet must be all, printable or alnum");
}

bool in_alphabet(Alphabet alphabet, std::uint8_t byte) {
  switch (alphabet) {
    case Alphabet::All: return true;
    case Alphabet::Printable: return byte >= 0x20 && byte <= 0x7E;
    case Alphabet::Alnum:
      // QR alphanumeric-mode character set.
      return (byte >= '0' && byte <= '9') || (byte >= 'A' && byte <= 'Z') ||
             std::string_view(" $%*+-./:").find(static_cast<char>(byte)) != std::string_view::npos;
  }
  return false;
}

std::size_t flip_cost(const std::string& text, const QrConfig& config, std::size_t position, std::uint8_t xor_byte) {
  std::string changed = text;
  changed.at(position) = static_cast<char>(static_cast<std::uint8_t>(changed[position]) ^ xor_byte);
  return minimal_flip_plan(qr::encode(text, config), qr::encode(changed, config)).total_bit_flips;
}

namespace {

// Evaluates single-byte edits of one text by re-packing the edited byte into
// the data codewords and re-encoding only the blocks it touches.
class CandidateEvaluator {
 public:
  CandidateEvaluator(const std::string& text, const QrConfig& config)
      : config_(config), original_(qr::encode(text, config)), data_(original_.data_codewords()) {
    std::size_t offset = 0;
    for (const auto& spec : original_.layout.blocks) {
      block_start_.push_back(offset);
      offset += spec.data_len;
      params_.push_back(rs_params_qr(spec.data_len + spec.ec_len, spec.data_len));
    }
    header_bits_ = 4 + static_cast<std::size_t>(qr::length_field_bits(config.version));
  }

  std::size_t total_bits() const { return original_.layout.total() * 8; }

  bool in_first_block(std::size_t position) const {
    return (header_bits_ + 8 * position + 7) / 8 < original_.layout.blocks.front().data_len;
  }

  std::size_t cost(std::size_t position, std::uint8_t new_byte, Bytes& scratch) const {
    const std::size_t bit0 = header_bits_ + 8 * position;
    std::size_t touched[2];
    std::size_t n_touched = 0;
    Bytes& data = scratch;
    data = data_;
    for (std::size_t k = 0; k < 8; ++k) {
      const std::size_t bit = bit0 + k;
      const auto mask = static_cast<std::uint8_t>(0x80u >> (bit % 8));
      if ((new_byte >> (7 - k)) & 1u)
        data[bit / 8] |= mask;
      else
        data[bit / 8] &= static_cast<std::uint8_t>(~mask);
    }
    for (std::size_t byte = bit0 / 8; byte <= (bit0 + 7) / 8; ++byte) {
      if (data[byte] == data_[byte]) continue;
      const std::size_t blk = block_of(byte);
      if (n_touched == 0 || touched[n_touched - 1] != blk) touched[n_touched++] = blk;
    }

    std::size_t total = 0;
    std::vector<int> costs;
    for (std::size_t i = 0; i < n_touched; ++i) {
      const std::size_t b = touched[i];
      const auto& spec = original_.layout.blocks[b];
      const auto begin = data.begin() + static_cast<std::ptrdiff_t>(block_start_[b]);
      const std::span<const std::uint8_t> block_data(&*begin, spec.data_len);
      const Bytes ec = rs_parity(params_[b], block_data);
      costs.clear();
      const Block& orig = original_.blocks[b];
      for (std::size_t j = 0; j < spec.data_len; ++j)
        if (block_data[j] != orig.data[j]) costs.push_back(std::popcount(static_cast<unsigned>(block_data[j] ^ orig.data[j])));
      for (std::size_t j = 0; j < spec.ec_len; ++j)
        if (ec[j] != orig.ec[j]) costs.push_back(std::popcount(static_cast<unsigned>(ec[j] ^ orig.ec[j])));
      const std::size_t t = spec.ec_len / 2;
      if (costs.size() <= t) continue;
      const std::size_t keep = costs.size() - t;
      std::partial_sort(costs.begin(), costs.begin() + static_cast<std::ptrdiff_t>(keep), costs.end());
      for (std::size_t j = 0; j < keep; ++j) total += static_cast<std::size_t>(costs[j]);
    }
    return total;
  }

 private:
  using Block = qr::Block;

  std::size_t block_of(std::size_t data_index) const {
    auto it = std::upper_bound(block_start_.begin(), block_start_.end(), data_index);
    return static_cast<std::size_t>(it - block_start_.begin()) - 1;
  }

  QrConfig config_;
  CodewordSet original_;
  Bytes data_;
  std::vector<std::size_t> block_start_;
  std::vector<RsParams> params_;
  std::size_t header_bits_ = 0;
};

}  // namespace

NearestResult nearest_message(const std::string& text, const QrConfig& config, SearchOptions options) {
  const CandidateEvaluator eval(text, config);
  const std::size_t positions = text.size();
  const unsigned threads = std::min<unsigned>(resolve_threads(options.threads),
                                              static_cast<unsigned>(std::max<std::size_t>(1, positions)));

  struct Partial {
    std::size_t best = SIZE_MAX;
    std::vector<std::pair<std::size_t, std::uint8_t>> hits;
  };
  std::vector<Partial> partials(threads);
  auto worker = [&](unsigned id) {
    Partial& p = partials[id];
    Bytes scratch;
    for (std::size_t pos = id; pos < positions; pos += threads) {
      if (options.first_block_only && !eval.in_first_block(pos)) continue;
      const auto orig = static_cast<std::uint8_t>(text[pos]);
      for (unsigned x = 1; x < 256; ++x) {
        const auto replaced = static_cast<std::uint8_t>(orig ^ x);
        if (!in_alphabet(options.alphabet, replaced)) continue;
        const std::size_t c = eval.cost(pos, replaced, scratch);
        if (c < p.best) {
          p.best = c;
          p.hits.clear();
        }
        if (c == p.best) p.hits.emplace_back(pos, static_cast<std::uint8_t>(x));
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  NearestResult result;
  result.total_bits = eval.total_bits();
  result.minimum_flips = SIZE_MAX;
  for (const auto& p : partials) result.minimum_flips = std::min(result.minimum_flips, p.best);
  if (result.minimum_flips == SIZE_MAX) {
    result.minimum_flips = 0;
    return result;
  }
  for (const auto& p : partials) {
    if (p.best != result.minimum_flips) continue;
    for (const auto& [pos, x] : p.hits) {
      std::string changed = text;
      changed[pos] = static_cast<char>(static_cast<std::uint8_t>(changed[pos]) ^ x);
      result.candidates.push_back({pos, x, std::move(changed), result.minimum_flips});
    }
  }
  std::sort(result.candidates.begin(), result.candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.position != b.position ? a.position < b.position : a.xor_byte < b.xor_byte;
  });
  return result;
}

GeneralizationTable generalization_table(int version, qr::EcLevel level, TableOptions options) {
  GeneralizationTable table;
  table.version = version;
  table.level = level;
  table.capacity = qr::capacity(version, level);

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  const QrConfig config{version, level, std::nullopt};
  for (int probe = 0; probe < std::max(1, options.probes); ++probe) {
    std::string text(table.capacity, '\0');
    for (char& c : text) c = static_cast<char>(byte_dist(rng));
    const NearestResult result = nearest_message(text, config, {Alphabet::All, options.threads, options.first_block_only});

    std::map<std::size_t, TableRow> grouped;
    for (const Candidate& c : result.candidates) {
      TableRow& row = grouped[c.position];
      row.position = c.position;
      row.bit_flips = c.bit_flips;
      row.xors.push_back(c.xor_byte);
    }
    std::vector<TableRow> rows;
    for (auto& [pos, row] : grouped) rows.push_back(std::move(row));

    if (probe == 0) {
      table.rows = std::move(rows);
      continue;
    }
    const bool same = rows.size() == table.rows.size() &&
                      std::equal(rows.begin(), rows.end(), table.rows.begin(), [](const TableRow& a, const TableRow& b) {
                        return a.position == b.position && a.xors == b.xors && a.bit_flips == b.bit_flips;
                      });
    if (!same) throw Error(Errc::VerificationFailed, "minimizers differ between probe texts");
  }
  return table;
}

std::string format_row(const GeneralizationTable& table) {
  std::string positions;
  std::string xors;
  for (const TableRow& row : table.rows) {
    if (!positions.empty()) {
      positions += ",";
      xors += " / ";
    }
    positions += std::to_string(row.position);
    for (std::size_t i = 0; i < row.xors.size(); ++i) xors += (i ? "," : "") + hex_byte(row.xors[i]);
  }
  const std::size_t flips = table.rows.empty() ? 0 : table.rows.front().bit_flips;
  return positions + " | " + xors + " | " + std::to_string(flips);
}

std::string plan_to_json(const AttackPlan& plan, int indent) {
  nlohmann::ordered_json j;
  j["flips"] = plan.total_bit_flips;
  j["percent"] = std::round(plan.percentage() * 100.0) / 100.0;
  nlohmann::ordered_json bytes = nlohmann::ordered_json::array();
  for (const ByteFlip& f : plan.bytes) {
    nlohmann::ordered_json jb;
    jb["index"] = f.index;
    jb["xor"] = hex_byte(f.xor_mask);
    jb["bits"] = f.bits;
    bytes.push_back(std::move(jb));
  }
  j["bytes"] = std::move(bytes);
  nlohmann::ordered_json pixels = nlohmann::ordered_json::array();
  for (const auto& [r, c] : plan.pixels) pixels.push_back({r, c});
  j["pixels"] = std::move(pixels);
  return j.dump(indent);
}

std::string pixels_to_pbm(const std::vector<Coord>& pixels, int size, int quiet) {
  qr::ModuleMatrix m(size);
  for (const auto& [r, c] : pixels) m.set_dark(r, c, true);
  return qr::to_pbm(m, quiet);
}

}  // namespace qrflip::attack
