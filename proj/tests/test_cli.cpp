#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrflip/cli.hpp"

namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = qrflip::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qrflip_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("encode prints codeword JSON") {
  const Outcome o = run({"encode", "--text", "Id: 1234567", "--version", "1", "--ec", "Q", "--mask", "1"});
  CHECK(o.status == 0);
  CHECK(o.out ==
        "{\"version\":1,\"ec\":\"Q\",\"mask\":1,\"blocks\":[{\"data\":[64,180,150,67,162,3,19,35,51,67,83,99,112],"
        "\"ec\":[196,144,22,34,115,74,89,202,212,234,197,39,150]}],\"interleaved\":[64,180,150,67,162,3,19,35,51,67,"
        "83,99,112,196,144,22,34,115,74,89,202,212,234,197,39,150]}\n");
  const Outcome hex = run({"encode", "--text", "49643a2031323334353637", "--hex", "--version", "1", "--ec", "Q", "--mask", "1"});
  CHECK(hex.out == o.out);
}

TEST_CASE("encode then decode through a PBM file") {
  const auto pbm = scratch("roundtrip.pbm");
  const Outcome e = run({"encode", "--text", "hello pbm", "--version", "2", "--ec", "M", "--mask", "5", "--pbm", pbm.string()});
  REQUIRE(e.status == 0);
  CHECK(e.out.empty());
  CHECK(slurp(pbm).rfind("P1\n33 33\n", 0) == 0);
  const Outcome d = run({"decode", "--pbm", pbm.string()});
  CHECK(d.status == 0);
  CHECK(d.out == "hello pbm\nversion 2 ec M mask 5 errors 0\n");
}

TEST_CASE("rs subcommands") {
  CHECK(run({"rs", "encode", "--n", "26", "--k", "13", "--data", "40b"}).status == 1);
  const Outcome enc = run({"rs", "encode", "--n", "26", "--k", "13", "--data", "40b49643a20313233343536370"});
  CHECK(enc.status == 0);
  CHECK(enc.out == "40b49643a20313233343536370c4901622734a59cad4eac52796\n");
  // First and last bytes corrupted.
  const Outcome dec = run({"rs", "decode", "--n", "26", "--k", "13", "--data", "00b49643a20313233343536370c4901622734a59cad4eac52700"});
  CHECK(dec.status == 0);
  CHECK(dec.out == "40b49643a20313233343536370c4901622734a59cad4eac52796\nerrors 2\n");
}

TEST_CASE("attack and nearest") {
  const auto diff = scratch("diff.pbm");
  const Outcome a = run({"attack", "--text", "Id: 1234567", "--target", "Id: 1234566", "--version", "1", "--ec", "Q",
                         "--pbm-diff", diff.string()});
  CHECK(a.status == 0);
  CHECK(a.out.rfind("{\"flips\":24,\"percent\":11.54,", 0) == 0);
  const std::string pbm = slurp(diff);
  const std::string body = pbm.substr(pbm.find('\n', 3) + 1);
  CHECK(std::count(body.begin(), body.end(), '1') == 24);

  const Outcome n = run({"nearest", "--text", "Some binary text.", "--version", "1", "--ec", "L", "--alphabet", "printable"});
  CHECK(n.status == 0);
  CHECK(n.out == "min_flips 7 percent 3.37\n14 0x01 Some binary teyt.\n15 0x40 Some binary tex4.\n");
  const Outcome y = run({"nearest", "--text", "Id: bhavuksikka", "--version", "1", "--ec", "L", "--alphabet", "alnum"});
  CHECK(y.out == "min_flips 8 percent 3.85\n8 0x2C Id: bhavYksikka\n");
}

TEST_CASE("table rows") {
  CHECK(run({"table", "--version", "1", "--ec", "H"}).out == "0,3,4,5 | 0x12,0x24 / 0x14 / 0x5B / 0x61,0xC2 | 20\n");
  CHECK(run({"table", "--version", "1"}).out ==
        "L | 17 | 14,15 | 0x01 / 0x40,0x80 | 7\n"
        "M | 14 | 1 | 0x4B | 9\n"
        "Q | 11 | 2 | 0x0C | 14\n"
        "H | 7 | 0,3,4,5 | 0x12,0x24 / 0x14 / 0x5B / 0x61,0xC2 | 20\n");
}

TEST_CASE("field table and NIF") {
  const Outcome g = run({"gf-table", "--m", "4", "--poly", "13"});
  CHECK(g.status == 0);
  CHECK(g.out.rfind("0000 | 0 | -\n1000 | 1 | beta^0\n0100 | x | beta^1\n", 0) == 0);
  CHECK(g.out.find("1101 | 1 + x + x^3 | beta^7\n") != std::string::npos);
  CHECK(run({"gf-table", "--m", "4", "--poly", "1f"}).err.rfind("error: NotPrimitive:", 0) == 0);

  CHECK(run({"nif", "--digits", "51234511"}).out == "X\n");
  CHECK(run({"nif", "--digits", "18279322", "--letter", "G"}).out == "A\ninvalid: received G, expected A\n");
  CHECK(run({"nif", "--digits", "18279322", "--letter", "A"}).out == "A\nvalid\n");
}

TEST_CASE("errors and usage") {
  const Outcome none = run({});
  CHECK(none.status == 2);
  CHECK(none.err.rfind("error: UsageError:", 0) == 0);
  CHECK(run({"encode", "--version", "1"}).status == 2);
  const Outcome big = run({"encode", "--text", "x", "--version", "41", "--ec", "L"});
  CHECK(big.status == 1);
  CHECK(big.err == "error: UnsupportedVersion: version 41 outside 1..40\n");
  const Outcome over = run({"encode", "--text", std::string(18, 'a'), "--version", "1", "--ec", "L"});
  CHECK(over.err.rfind("error: Overflow:", 0) == 0);
  CHECK(run({"decode", "--pbm", scratch("missing.pbm").string()}).err.rfind("error: IoError:", 0) == 0);
  CHECK(run({"--help"}).status == 0);
}
