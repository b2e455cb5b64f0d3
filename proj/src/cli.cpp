#include "qrflip/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "qrflip/attack.hpp"
#include "qrflip/codes.hpp"
#include "qrflip/gf.hpp"
#include "qrflip/qr.hpp"
#include "qrflip/rs.hpp"

namespace qrflip::cli {

namespace {

Bytes parse_hex(std::string_view hex) {
  std::string digits;
  for (char c : hex)
    if (!std::isspace(static_cast<unsigned char>(c))) digits += c;
  if (digits.size() % 2 != 0) throw Error(Errc::BadFormat, "hex string has an odd number of digits");
  Bytes out;
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    unsigned v = 0;
    for (std::size_t j = 0; j < 2; ++j) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[i + j])));
      if (c >= '0' && c <= '9')
        v = v * 16 + static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        v = v * 16 + static_cast<unsigned>(c - 'a' + 10);
      else
        throw Error(Errc::BadFormat, "invalid hex digit");
    }
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

std::string to_hex(const auto& bytes) {
  std::string out;
  char buf[3];
  for (auto b : bytes) {
    std::snprintf(buf, sizeof buf, "%02x", static_cast<unsigned>(b));
    out += buf;
  }
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::IoError, "cannot write " + path);
  file << content;
}

std::optional<int> parse_mask(const std::string& s) {
  if (s == "auto") return std::nullopt;
  if (s.size() == 1 && s[0] >= '0' && s[0] <= '7') return s[0] - '0';
  throw Error(Errc::BadFormat, "mask must be auto or 0..7");
}

std::string payload(const std::string& text, bool hex) {
  if (!hex) return text;
  const Bytes b = parse_hex(text);
  return std::string(b.begin(), b.end());
}

std::string printable(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (c >= 0x20 && c < 0x7F && c != '\\') {
      out += static_cast<char>(c);
    } else {
      char buf[5];
      std::snprintf(buf, sizeof buf, "\\x%02x", c);
      out += buf;
    }
  }
  return out;
}

std::string bit_vector(Element e, int m) {
  std::string s;
  for (int i = 0; i < m; ++i) s += ((e >> i) & 1u) ? '1' : '0';
  return s;
}

std::string residue(Element e) {
  if (e == 0) return "0";
  std::string s;
  for (int i = 0; i < 32; ++i) {
    if (!((e >> i) & 1u)) continue;
    if (!s.empty()) s += " + ";
    s += i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i));
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reed-Solomon, QR byte-mode and selective bit-flip toolkit", "qrflip"};
  app.require_subcommand(1, 1);

  // encode
  auto* enc = app.add_subcommand("encode", "Encode text into QR codewords and a module matrix");
  std::string enc_text, enc_ec = "L", enc_mask = "auto", enc_pbm, enc_json;
  int enc_version = 1;
  bool enc_hex = false, enc_ascii = false;
  enc->add_option("--text", enc_text, "Payload (raw bytes)")->required();
  enc->add_flag("--hex", enc_hex, "Interpret --text as hex");
  enc->add_option("--version", enc_version, "QR version 1..40")->required();
  enc->add_option("--ec", enc_ec, "Error correction level L|M|Q|H")->required();
  enc->add_option("--mask", enc_mask, "auto or 0..7");
  enc->add_option("--pbm", enc_pbm, "Write plain PBM (- for stdout)");
  enc->add_option("--json", enc_json, "Write codeword JSON (- for stdout)");
  enc->add_flag("--ascii", enc_ascii, "Print an ASCII rendering");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a PBM module matrix");
  std::string dec_pbm;
  dec->add_option("--pbm", dec_pbm, "PBM input (- for stdin)")->required();

  // rs
  auto* rs = app.add_subcommand("rs", "Reed-Solomon over GF(256), first root alpha^0");
  std::string rs_mode, rs_data;
  std::size_t rs_n = 0, rs_k = 0;
  rs->add_option("mode", rs_mode, "encode | decode")->required()->check(CLI::IsMember({"encode", "decode"}));
  rs->add_option("--n", rs_n, "Codeword length")->required();
  rs->add_option("--k", rs_k, "Data length")->required();
  rs->add_option("--data", rs_data, "Hex input: k bytes to encode or n bytes to decode")->required();

  // attack
  auto* atk = app.add_subcommand("attack", "Minimal bit-flip plan from one text to another");
  std::string atk_text, atk_target, atk_ec = "L", atk_mask = "auto", atk_json, atk_pbm;
  int atk_version = 1;
  bool atk_hex = false;
  atk->add_option("--text", atk_text, "Original payload")->required();
  atk->add_option("--target", atk_target, "Target payload of the same length")->required();
  atk->add_flag("--hex", atk_hex, "Interpret payloads as hex");
  atk->add_option("--version", atk_version)->required();
  atk->add_option("--ec", atk_ec)->required();
  atk->add_option("--mask", atk_mask, "auto or 0..7");
  atk->add_option("--json", atk_json, "Write plan JSON (default stdout)");
  atk->add_option("--pbm-diff", atk_pbm, "Write PBM with flipped pixels dark");

  // nearest
  auto* nst = app.add_subcommand("nearest", "Cheapest single-byte edits of a text");
  std::string nst_text, nst_ec = "L", nst_alpha = "all";
  int nst_version = 1;
  unsigned nst_threads = 0;
  bool nst_hex = false;
  nst->add_option("--text", nst_text)->required();
  nst->add_flag("--hex", nst_hex);
  nst->add_option("--version", nst_version)->required();
  nst->add_option("--ec", nst_ec)->required();
  nst->add_option("--alphabet", nst_alpha, "all | printable | alnum");
  nst->add_option("--threads", nst_threads, "Worker threads (0 = all cores)");

  // table
  auto* tbl = app.add_subcommand("table", "Minimal single-byte edit table for a version");
  int tbl_version = 1;
  std::string tbl_ec;
  unsigned tbl_threads = 0;
  std::uint64_t tbl_seed = 1;
  tbl->add_option("--version", tbl_version)->required();
  tbl->add_option("--ec", tbl_ec, "Restrict to one level");
  tbl->add_option("--threads", tbl_threads);
  tbl->add_option("--seed", tbl_seed, "Seed for the probe texts");
  bool tbl_all_blocks = false;
  tbl->add_flag("--all-blocks", tbl_all_blocks, "Search every block, not just the first");

  // gf-table
  auto* gft = app.add_subcommand("gf-table", "Power table of GF(2^m)");
  int gft_m = 4;
  std::string gft_poly;
  gft->add_option("--m", gft_m)->required();
  gft->add_option("--poly", gft_poly, "Primitive polynomial in hex, e.g. 13 for x^4+x+1")->required();

  // nif
  auto* nif = app.add_subcommand("nif", "NIF control letter");
  std::string nif_digits, nif_letter;
  nif->add_option("--digits", nif_digits, "8 digits, optionally followed by -L")->required();
  nif->add_option("--letter", nif_letter, "Received control letter to check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << errc_name(Errc::UsageError) << ": " << e.what() << '\n';
    return 2;
  }

  try {
    if (*enc) {
      const qr::QrConfig config{enc_version, qr::parse_ec_level(enc_ec), parse_mask(enc_mask)};
      const qr::CodewordSet set = qr::encode(payload(enc_text, enc_hex), config);
      const qr::ModuleMatrix matrix = qr::build_matrix(set, config);
      if (!enc_pbm.empty()) write_output(enc_pbm, qr::to_pbm(matrix), out);
      if (!enc_json.empty()) write_output(enc_json, qr::to_json(set, matrix.mask()) + "\n", out);
      if (enc_ascii) out << qr::to_ascii(matrix);
      if (enc_pbm.empty() && enc_json.empty() && !enc_ascii) out << qr::to_json(set, matrix.mask()) << '\n';
    } else if (*dec) {
      const qr::MatrixDecode d = qr::decode_matrix(qr::from_pbm(read_file(dec_pbm)));
      out << d.text_string() << '\n';
      out << "version " << d.version << " ec " << qr::to_char(d.level) << " mask " << d.mask << " errors";
      for (std::size_t e : d.block_errors) out << ' ' << e;
      out << '\n';
    } else if (*rs) {
      const RsParams params = rs_params_qr(rs_n, rs_k);
      const Bytes data = parse_hex(rs_data);
      if (rs_mode == "encode") {
        const Bytes ec = rs_parity(params, data);
        out << to_hex(data) << to_hex(ec) << '\n';
      } else {
        const RsDecodeResult r = rs_decode_bytes(params, data);
        out << to_hex(r.corrected) << '\n' << "errors " << r.errors << '\n';
      }
    } else if (*atk) {
      const qr::QrConfig config{atk_version, qr::parse_ec_level(atk_ec), parse_mask(atk_mask)};
      const std::string text = payload(atk_text, atk_hex);
      const std::string target = payload(atk_target, atk_hex);
      if (text.size() != target.size()) throw Error(Errc::BadFormat, "text and target must have the same length");
      const qr::CodewordSet original = qr::encode(text, config);
      attack::AttackPlan plan = attack::minimal_flip_plan(original, qr::encode(target, config));
      attack::verify_plan(original, plan);
      write_output(atk_json.empty() ? "-" : atk_json, attack::plan_to_json(plan) + "\n", out);
      if (!atk_pbm.empty()) write_output(atk_pbm, attack::pixels_to_pbm(plan.pixels, config.size()), out);
    } else if (*nst) {
      const qr::QrConfig config{nst_version, qr::parse_ec_level(nst_ec), std::nullopt};
      const auto result = attack::nearest_message(payload(nst_text, nst_hex), config,
                                                  {attack::parse_alphabet(nst_alpha), nst_threads});
      out << "min_flips " << result.minimum_flips << " percent " << std::fixed << std::setprecision(2)
          << 100.0 * static_cast<double>(result.minimum_flips) / static_cast<double>(result.total_bits) << '\n';
      for (const auto& c : result.candidates) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "0x%02X", static_cast<unsigned>(c.xor_byte));
        out << c.position << ' ' << buf << ' ' << printable(c.text) << '\n';
      }
    } else if (*tbl) {
      std::vector<qr::EcLevel> levels;
      if (tbl_ec.empty())
        levels = {qr::EcLevel::L, qr::EcLevel::M, qr::EcLevel::Q, qr::EcLevel::H};
      else
        levels = {qr::parse_ec_level(tbl_ec)};
      for (qr::EcLevel level : levels) {
        const auto table = attack::generalization_table(tbl_version, level, {tbl_threads, tbl_seed, 2, !tbl_all_blocks});
        if (tbl_ec.empty()) out << qr::to_char(level) << " | " << table.capacity << " | ";
        out << attack::format_row(table) << '\n';
      }
    } else if (*gft) {
      const Field field(gft_m, static_cast<std::uint32_t>(std::stoul(gft_poly, nullptr, 16)));
      out << bit_vector(0, gft_m) << " | 0 | -\n";
      const auto& powers = field.exp_table();
      for (std::size_t i = 0; i < powers.size(); ++i)
        out << bit_vector(powers[i], gft_m) << " | " << residue(powers[i]) << " | beta^" << i << '\n';
    } else if (*nif) {
      std::string input = nif_digits;
      if (!nif_letter.empty()) input += "-" + nif_letter;
      const NifCheck check = nif_check(input);
      out << check.expected << '\n';
      if (check.valid) {
        if (*check.valid)
          out << "valid\n";
        else
          out << "invalid: received " << static_cast<char>(std::toupper(static_cast<unsigned char>(input.back())))
              << ", expected " << check.expected << '\n';
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << errc_name(Errc::UsageError) << ": " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace qrflip::cli
