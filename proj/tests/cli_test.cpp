#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "tes/cli.hpp"

namespace tes {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("tes_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::vector<std::uint8_t>& data) const {
    std::ofstream f(path(name), std::ios::binary);
    f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }

  std::vector<std::uint8_t> read(const std::string& name) const {
    std::ifstream f(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
};

const std::string kKey16 = "000102030405060708090a0b0c0d0e0f";
const std::string kKey32 = kKey16 + "f0e0d0c0b0a090807060504030201000";

TEST_F(CliFiles, FileRoundTripAllModes) {
  std::mt19937_64 rng(1);
  const auto plain = testing::random_bytes(rng, 4096);
  write("p.bin", plain);
  for (const char* mode : {"xcbv1", "xcbv2", "mxcbv1", "mxcbv2", "hctr", "hctr-fix"}) {
    const std::string key = std::string(mode).rfind("hctr", 0) == 0 ? kKey32 : kKey16;
    Result e = run({"encrypt", "--mode", mode, "--key", key, "--tweak", "0badc0de", "--in", path("p.bin"),
                    "--out", path("c.bin")});
    ASSERT_EQ(e.code, 0) << e.err;
    EXPECT_EQ(read("c.bin").size(), plain.size());
    EXPECT_NE(read("c.bin"), plain);
    Result d = run({"decrypt", "--mode", mode, "--key", key, "--tweak", "0badc0de", "--in", path("c.bin"),
                    "--out", path("d.bin")});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(read("d.bin"), plain) << mode;
  }
}

TEST_F(CliFiles, Xcbv2PartialNeedsOptIn) {
  std::mt19937_64 rng(2);
  write("p.bin", testing::random_bytes(rng, 100));
  Result r = run({"encrypt", "--mode", "xcbv2", "--key", kKey16, "--in", path("p.bin"), "--out", path("c.bin")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("distinguishing attack"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
  r = run({"encrypt", "--mode", "xcbv2", "--key", kKey16, "--in", path("p.bin"), "--out", path("c.bin"),
           "--allow-insecure-partial"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("c.bin").size(), 100u);
}

TEST_F(CliFiles, MissingInputIsDataError) {
  Result r = run({"encrypt", "--mode", "xcbv1", "--key", kKey16, "--in", path("absent"), "--out", path("x")});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, InlineHexIsDeterministic) {
  const std::vector<std::string> args = {"encrypt", "--mode", "hctr", "--key", kKey32, "--in-hex",
                                         "00112233445566778899aabbccddeeff0102"};
  Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.size(), 2 * 18 + 1);
  Result d = run({"decrypt", "--mode", "hctr", "--key", kKey32, "--in-hex", a.out.substr(0, 36)});
  EXPECT_EQ(d.out, "00112233445566778899aabbccddeeff0102\n");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"encrypt", "--mode", "xts", "--key", kKey16, "--in-hex", "00"}).code, 2);
  EXPECT_EQ(run({"encrypt", "--mode", "xcbv1", "--key", "zz", "--in-hex", "00"}).code, 2);
  EXPECT_EQ(run({"bounds", "--q", "3^2"}).code, 2);
  EXPECT_EQ(run({"attack", "hctr-recover", "--trials", "many"}).code, 2);
  const Result r = run({"incsets", "--width", "8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, DataErrorsExitOne) {
  EXPECT_EQ(run({"encrypt", "--mode", "xcbv1", "--key", "00", "--in-hex", kKey16}).code, 1);
  EXPECT_EQ(run({"encrypt", "--mode", "xcbv1", "--key", kKey16, "--in-hex", "00"}).code, 1);
  EXPECT_EQ(run({"weakkey", "--h", std::string(32, '0')}).code, 1);
  EXPECT_EQ(run({"incsets", "--width", "40", "--rmax", "3"}).code, 1);
  EXPECT_EQ(run({"bounds", "--n", "12"}).code, 1);
}

TEST(Cli, BoundsDefaultsListTwelveRows) {
  const Result r = run({"--format", "structured", "bounds"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rows=12\n"), std::string::npos);
  EXPECT_NE(r.out.find("row.1.advantage_log2=-49.81"), std::string::npos);
  const Result t = run({"bounds"});
  EXPECT_NE(t.out.find("Repaired XCBv1"), std::string::npos);
}

TEST(Cli, RecoverReportsDemoKey) {
  const Result r = run({"attack", "hctr-recover", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto field = [&](const std::string& key) {
    const auto at = r.out.find("\n" + key + "=");
    return r.out.substr(at + key.size() + 2, 32);
  };
  EXPECT_EQ(field("recovered"), field("demo_h"));
  EXPECT_NE(r.out.find("successes=1\n"), std::string::npos);
  EXPECT_EQ(run({"attack", "hctr-recover", "--seed", "7"}).out, r.out);
}

TEST(Cli, AttackSubcommands) {
  Result r = run({"attack", "hctr-distinguish", "--trials", "500", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("trials=500\n"), std::string::npos);
  r = run({"attack", "hctr-distinguish", "--trials", "500", "--oracle", "ideal"});
  EXPECT_NE(r.out.find("successes=0\n"), std::string::npos);
  r = run({"attack", "hctr-keydep", "--trials", "10"});
  EXPECT_NE(r.out.find("successes=10\n"), std::string::npos);
  r = run({"attack", "xcb-cycle", "--order", "5", "--trials", "10", "--swap", "1,6"});
  EXPECT_NE(r.out.find("successes=10\n"), std::string::npos) << r.out << r.err;
  r = run({"attack", "xcb-cycle", "--order", "5", "--trials", "10", "--random-h"});
  EXPECT_NE(r.out.find("successes=0\n"), std::string::npos);
  r = run({"attack", "xcb-cycle", "--order", "4", "--trials", "1"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, WeakKeyAndIncSets) {
  Result r = run({"weakkey", "--h", "00000000000000000000000000000001", "--max-order", "2^16"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("order=1\n"), std::string::npos);
  r = run({"--format", "structured", "incsets", "--width", "8", "--rmax", "255"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("method=exhaustive\n"), std::string::npos);
  EXPECT_NE(r.out.find("w_max=8\n"), std::string::npos);
  r = run({"--format", "structured", "incsets", "--width", "32", "--rmax", "1024", "--samples", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("method=carry-class\nrows=50\n"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

}  // namespace
}  // namespace tes
