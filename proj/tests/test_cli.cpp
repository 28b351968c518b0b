#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "poptree/sequence.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = poptree::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("poptree_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return (path_ / name).string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("mine reports the planted outlier first") {
  TempDir dir;
  const auto input = dir.write("planted.txt", poptree::testing::planted_ab_text() + "\n");
  const auto r = run({"mine", "--input", input, "--format", "plain", "--surprise-min", "0.7",
                      "--conf-min", "0.8", "--mad-k", "3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "count,period,pattern,start_pos,end_pos,conf,surp");
  CHECK(rows[1].rfind("4,50,z,10,160,1.0000,", 0) == 0);
}

TEST_CASE("mine on an empty file fails with EmptyInput") {
  TempDir dir;
  const auto r = run({"mine", "--input", dir.write("empty.txt", "")});
  CHECK(r.code == 1);
  CHECK(r.err.find("EmptyInput") != std::string::npos);
}

TEST_CASE("mine reproduces the xy worked example") {
  TempDir dir;
  const auto input = dir.write("series_s.txt", std::string(poptree::testing::series_s) + "\n");
  const auto r = run({"mine", "--input", input, "--surprise-min", "0", "--conf-min", "0.5",
                      "--no-mad-gate", "--d-max", "8"});
  REQUIRE(r.code == 0);
  bool found = false;
  for (const auto& row : lines(r.out)) found |= row.rfind("6,4,xy,0,25,0.8571,", 0) == 0;
  CHECK(found);
}

TEST_CASE("usage errors exit with 2") {
  TempDir dir;
  const auto input = dir.write("s.txt", "abcabc");
  CHECK(run({"mine", "--input", input, "--bogus"}).code == 2);
  CHECK(run({"mine", "--input", input, "--format", "xml"}).code == 2);
  CHECK(run({"mine", "--input", input, "--tolerance", "1"}).code == 2);  // t >= p_min
  CHECK(run({"mine"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"mine", "--input", dir.file("missing.txt")}).code == 1);
}

TEST_CASE("reports are deterministic and regenerable from the manifest") {
  TempDir dir;
  const auto input = dir.write("planted.txt", poptree::testing::planted_ab_text());
  const std::vector<std::string> base{"mine", "--input", input, "--mad-k", "3", "--no-timings"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  REQUIRE(run(with({"--out-csv", dir.file("a.csv"), "--out-json", dir.file("a.json"),
                    "--out-pft", dir.file("a_pft.csv")})).code == 0);
  REQUIRE(run(with({"--out-csv", dir.file("b.csv"), "--out-json", dir.file("b.json"),
                    "--threads", "3"})).code == 0);
  const auto a_csv = poptree::read_file(dir.file("a.csv"));
  CHECK(a_csv == poptree::read_file(dir.file("b.csv")));
  auto a_json = nlohmann::json::parse(poptree::read_file(dir.file("a.json")));
  auto b_json = nlohmann::json::parse(poptree::read_file(dir.file("b.json")));
  CHECK(a_json.at("hits") == b_json.at("hits"));
  CHECK(a_json.at("pft") == b_json.at("pft"));
  CHECK(lines(poptree::read_file(dir.file("a_pft.csv")))[0] == "pattern_length,count,mean,median,mad");

  // Same run twice, byte for byte.
  REQUIRE(run(with({"--out-json", dir.file("c.json")})).code == 0);
  REQUIRE(run(with({"--out-json", dir.file("d.json")})).code == 0);
  CHECK(poptree::read_file(dir.file("c.json")) == poptree::read_file(dir.file("d.json")));

  // Regenerate from the sidecar manifest and from the JSON report.
  REQUIRE(run({"mine", "--from-manifest", dir.file("a.csv") + ".manifest.json", "--out-csv",
               dir.file("r1.csv")}).code == 0);
  CHECK(poptree::read_file(dir.file("r1.csv")) == a_csv);
  REQUIRE(run({"mine", "--from-manifest", dir.file("a.json"), "--out-csv", dir.file("r2.csv")})
              .code == 0);
  CHECK(poptree::read_file(dir.file("r2.csv")) == a_csv);
}

TEST_CASE("mine accepts fasta and csv inputs") {
  TempDir dir;
  const auto fasta = dir.write("p.fa", ">seq1 demo\n" + poptree::testing::planted_ab_text() + "\n");
  const auto r = run({"mine", "--input", fasta, "--format", "fasta", "--mad-k", "3"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).at(1).rfind("4,50,z,", 0) == 0);

  std::string csv = "t,value\n";
  for (int i = 0; i < 200; ++i) csv += std::to_string(i) + "," + (i % 50 == 10 ? "100" : (i % 2 ? "1" : "2")) + "\n";
  const auto c = run({"mine", "--input", dir.write("v.csv", csv), "--format", "csv", "--column",
                      "value", "--bins", "4", "--mad-k", "3", "--out-json", dir.file("v.json")});
  REQUIRE(c.code == 0);
  const auto j = nlohmann::json::parse(poptree::read_file(dir.file("v.json")));
  CHECK(j.at("manifest").at("discretization").at("bin_count") == 4);
  REQUIRE(!j.at("hits").empty());
  CHECK(j.at("hits")[0].at("pattern") == "D");
  CHECK(j.at("hits")[0].at("period") == 50);
}

TEST_CASE("discretize command") {
  TempDir dir;
  const auto out = dir.file("sym.txt");
  REQUIRE(run({"discretize", "--input", dir.write("a.csv", "1\n1\n9\n9\n"), "--bins", "2",
               "--output", out}).code == 0);
  CHECK(poptree::read_file(out) == "AABB\n");
  const auto side = nlohmann::json::parse(poptree::read_file(out + ".manifest.json"));
  CHECK(side.at("bin_count") == 2);
  CHECK(side.at("observed_max") == 9.0);

  const auto constant = run({"discretize", "--input", dir.write("c.csv", "v\n3\n3\n3\n"),
                             "--column", "v"});
  CHECK(constant.code == 0);
  CHECK(lines(constant.out).at(0) == "AAA");
  CHECK(constant.err.find("warning") != std::string::npos);

  const auto bad = run({"discretize", "--input", dir.write("b.csv", "v\n1\nx\n")});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("row 3") != std::string::npos);
}

TEST_CASE("default bins give the A-H alphabet") {
  TempDir dir;
  std::string csv;
  for (int i = 0; i < 16; ++i) csv += std::to_string(i) + "\n";
  const auto r = run({"discretize", "--input", dir.write("ramp.csv", csv)});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).at(0) == "AABBCCDDEEFFGGHH");
}

TEST_CASE("bench emits one row per algorithm and sweep point") {
  const auto r = run({"bench", "--lengths", "1000,5000,10000", "--seed", "7", "--reps", "1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == "series_len,period,algo,millis");
  CHECK(rows[1].rfind("1000,0,tree,", 0) == 0);
  CHECK(rows[2].rfind("1000,0,oracle,", 0) == 0);
  CHECK(rows[6].rfind("10000,0,oracle,", 0) == 0);

  const auto periods = run({"bench", "--lengths", "2000", "--periods", "5,10,20", "--reps", "1"});
  REQUIRE(periods.code == 0);
  CHECK(lines(periods.out).size() == 7);

  CHECK(run({"bench", "--lengths", "1"}).code == 2);
  CHECK(run({"bench", "--lengths", "100", "--periods", "100"}).code == 2);
  CHECK(run({"bench"}).code == 2);
}
