// Copyright 2026 The jrom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"
#include "jrom/romizer.hpp"
#include "support/class_builder.hpp"
#include "support/corpus.hpp"

namespace jrom {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun jrom(std::vector<std::string> args) {
  args.insert(args.begin(), "jrom");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string corpus() { return testing::corpus_dir().string(); }

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("jrom_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
  }

  fs::path dir_;
};

TEST(Cli, MissingClasspathEntryIsConfigError) {
  CliRun r = jrom({"report", "--classpath", "/no/such/dir"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("/no/such/dir"), std::string::npos) << r.err;
}

TEST(Cli, ClasspathIsRequired) {
  EXPECT_EQ(jrom({"report"}).code, kExitConfig);
  EXPECT_EQ(jrom({}).code, kExitConfig);
  EXPECT_EQ(jrom({"frobnicate"}).code, kExitConfig);
}

TEST(Cli, HelpSucceeds) {
  CliRun r = jrom({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("romize"), std::string::npos);
}

TEST(Cli, BadReportFormat) {
  EXPECT_EQ(jrom({"report", "-c", corpus(), "--report-format", "xml"}).code,
            kExitConfig);
}

TEST(Cli, ReportHasThreeStages) {
  CliRun r = jrom({"report", "-c", corpus()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("# flags: introspection"), std::string::npos);
  std::istringstream in(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) {
    if (!line.starts_with("#")) rows.push_back(line);
  }
  ASSERT_GT(rows.size(), 30u);
  std::vector<std::string> head = testing::split_words(rows.front());
  EXPECT_EQ(head, (std::vector<std::string>{"class", "entries", "loaded",
                                            "linked", "link%", "bytes",
                                            "loaded", "linked", "link%",
                                            "cls.raw", "cls.load", "cls.link"}));
  EXPECT_TRUE(rows.back().starts_with("TOTAL"));
  EXPECT_NE(r.out.find("desk/Dog"), std::string::npos);
}

std::size_t total_linked_bytes(const std::string& records) {
  std::istringstream in(records);
  std::string last;
  for (std::string line; std::getline(in, line);) last = line;
  auto j = nlohmann::json::parse(last);
  EXPECT_EQ(j["record"], "total");
  return j["linked"]["bytes"].get<std::size_t>();
}

TEST(Cli, NoIntrospectionShrinksReport) {
  CliRun on = jrom({"report", "-c", corpus(), "--report-format", "records"});
  CliRun off = jrom({"report", "-c", corpus(), "--report-format", "records",
                  "--no-introspection"});
  ASSERT_EQ(on.code, kExitOk);
  ASSERT_EQ(off.code, kExitOk);
  EXPECT_NE(off.out.find("\"flags\":\"no-introspection\""), std::string::npos);
  EXPECT_LT(total_linked_bytes(off.out), total_linked_bytes(on.out));
}

TEST(Cli, PerClassFailureExitsOne) {
  CliRun r = jrom({"link", "-c", corpus(), "desk/Dog", "desk/Missing"});
  EXPECT_EQ(r.code, kExitFailures);
  EXPECT_NE(r.err.find("desk/Missing"), std::string::npos);
  EXPECT_NE(r.out.find("linked 1 classes"), std::string::npos) << r.out;
}

TEST_F(Scratch, ReportToFileIsIdempotent) {
  ASSERT_EQ(jrom({"report", "-c", corpus(), "-o", path("a.txt")}).code, kExitOk);
  ASSERT_EQ(jrom({"report", "-c", corpus(), "-o", path("b.txt")}).code, kExitOk);
  EXPECT_FALSE(slurp(path("a.txt")).empty());
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
}

TEST_F(Scratch, RomizeWithVerify) {
  CliRun r = jrom({"romize", "-c", corpus(), "--verify", "-o", path("img"),
                "--c-out", path("img.c")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("verified 401 methods"), std::string::npos) << r.out;
  std::string image = slurp(path("img"));
  Bytes bytes(image.begin(), image.end());
  EXPECT_EQ(load_image(bytes).classes.size(), testing::corpus_names().size());
  EXPECT_NE(slurp(path("img.c")).find("jrom_image_len = " +
                                      std::to_string(bytes.size())),
            std::string::npos);
  EXPECT_NE(slurp(path("img.report")).find("TOTAL"), std::string::npos);
}

TEST_F(Scratch, RomizeTwiceIsIdentical) {
  ASSERT_EQ(jrom({"romize", "-c", corpus(), "-o", path("one")}).code, kExitOk);
  ASSERT_EQ(jrom({"romize", "-c", corpus(), "-o", path("two")}).code, kExitOk);
  EXPECT_EQ(slurp(path("one")), slurp(path("two")));
  EXPECT_EQ(slurp(path("one.report")), slurp(path("two.report")));
}

TEST_F(Scratch, RomizeMissingClosureNamesClass) {
  CliRun r = jrom({"romize", "-c", corpus(), "desk/Dog", "-o", path("img")});
  EXPECT_EQ(r.code, kExitFailures);
  EXPECT_NE(r.err.find("desk/Animal"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("img")));
  CliRun closed = jrom({"romize", "-c", corpus(), "desk/Dog", "--closure", "-o",
                     path("img")});
  EXPECT_EQ(closed.code, kExitOk) << closed.err;
}

TEST_F(Scratch, RomizeNeedsDistinctOutputs) {
  EXPECT_EQ(jrom({"romize", "-c", corpus(), "-o", path("x"), "--c-out",
                  path("x")}).code,
            kExitConfig);
  EXPECT_EQ(jrom({"romize", "-c", corpus()}).code, kExitConfig);
}

TEST(Cli, VerifyUntampered) {
  CliRun r = jrom({"verify", "-c", corpus(), "--seed", "9"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mutation detected"), std::string::npos) << r.out;
}

TEST(Cli, VerifyInjectedCorruptionNamesMethod) {
  CliRun r = jrom({"verify", "-c", corpus(), "--inject-corruption",
                "desk/Arith.poly"});
  EXPECT_EQ(r.code, kExitFailures);
  EXPECT_NE(r.err.find("mismatch: desk/Arith.poly(I)I"), std::string::npos)
      << r.err;
}

TEST_F(Scratch, VerifyNothingToCheckWarns) {
  testing::ClassBuilder object("java/lang/Object", std::nullopt);
  testing::ClassBuilder iface("pkg/Shape", "java/lang/Object",
                              kAccPublic | kAccInterface | kAccAbstract);
  iface.method(kAccPublic | kAccAbstract, "area", "()I", std::nullopt);
  fs::create_directories(dir_ / "java/lang");
  fs::create_directories(dir_ / "pkg");
  for (auto& [file, b] : {std::pair{"java/lang/Object.class", &object},
                          std::pair{"pkg/Shape.class", &iface}}) {
    Bytes bytes = b->build();
    std::ofstream(path(file), std::ios::binary)
        .write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
  }
  CliRun r = jrom({"verify", "-c", dir_.string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("0 methods checked"), std::string::npos) << r.err;
}

TEST_F(Scratch, TraceIsWritten) {
  CliRun r = jrom({"verify", "-c", corpus(), "--vectors", "1", "--trace",
                path("trace.txt")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(slurp(path("trace.txt")).find("desk/Arith.poly"), std::string::npos);
}

}  // namespace
}  // namespace jrom
