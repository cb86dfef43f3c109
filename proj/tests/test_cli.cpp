#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "synth.hpp"
#include "twc/jsonl.hpp"
#include "twc/quality.hpp"

namespace fs = std::filesystem;

namespace twc {
namespace {

#ifdef TWC_CLI_PATH

const fs::path kFixtures = TWC_FIXTURE_DIR;

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TWC_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("twc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, RunWritesShardsAndStats) {
  const fs::path out = dir_ / "out";
  ASSERT_EQ(run_cli("run -c \"" + (kFixtures / "golden.conf").string() + "\" -o \"" + out.string() + "\" --worker-count 2"), 0);
  EXPECT_TRUE(fs::exists(out / "part-00000.jsonl"));
  EXPECT_TRUE(fs::exists(out / "part-00001.jsonl"));
  EXPECT_TRUE(fs::exists(out / "stats.txt"));
  EXPECT_EQ(slurp(out / "stats.json"), slurp(kFixtures / "golden_stats.json"));
  EXPECT_EQ(run_cli("stats \"" + (out / "stats.json").string() + "\" --format summary"), 0);
}

TEST_F(CliTest, MissingBlocklistIsConfigErrorAndWritesNothing) {
  const fs::path out = dir_ / "out";
  EXPECT_EQ(run_cli("run -i \"" + (kFixtures / "golden.warc.gz").string() + "\" -o \"" + out.string() +
                    "\" --blocklist-path \"" + (dir_ / "nope.txt").string() + "\""),
            1);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run_cli("run -i \"" + (kFixtures / "golden.warc.gz").string() + "\" -o \"" + out.string() +
                    "\" --min-words lots"),
            1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST_F(CliTest, StageGopherKeepsExactlyTheKeepDocuments) {
  std::mt19937_64 rng(12);
  std::vector<Document> docs;
  for (int i = 0; i < 60; ++i) {
    std::string text = i % 3 == 0 ? "太短了。" : test::traditional_sentences(rng, 1 + i % 7);
    if (i % 5 == 0) text = test::stopword_free_sentences(rng, 5);
    docs.push_back(test::make_doc("doc" + std::to_string(i), text));
  }
  {
    std::ofstream a(dir_ / "a.jsonl", std::ios::binary);
    write_documents_jsonl(docs, a);
  }
  ASSERT_EQ(run_cli("stage gopher --in \"" + (dir_ / "a.jsonl").string() + "\" --out \"" + (dir_ / "b.jsonl").string() + "\""), 0);
  std::vector<Document> keep;
  for (const Document& d : docs) {
    if (gopher_filter(d, QualityConfig{}).keep()) keep.push_back(d);
  }
  ASSERT_GT(keep.size(), 0u);
  ASSERT_LT(keep.size(), docs.size());
  std::ostringstream expected;
  write_documents_jsonl(keep, expected);
  EXPECT_EQ(slurp(dir_ / "b.jsonl"), expected.str());
}

TEST_F(CliTest, SamplePromptsCompare) {
  std::vector<Document> docs;
  for (int i = 0; i < 20; ++i) docs.push_back(test::make_doc("d" + std::to_string(i), "文字" + std::to_string(i)));
  {
    std::ofstream a(dir_ / "corpus.jsonl", std::ios::binary);
    write_documents_jsonl(docs, a);
  }
  ASSERT_EQ(run_cli("sample --in \"" + (dir_ / "corpus.jsonl").string() + "\" --out \"" + (dir_ / "s.jsonl").string() +
                    "\" -n 5 --seed 3"),
            0);
  ASSERT_EQ(run_cli("prompts --in \"" + (dir_ / "s.jsonl").string() + "\" --out \"" + (dir_ / "p.jsonl").string() + "\""), 0);
  std::string line;
  std::ifstream prompts(dir_ / "p.jsonl");
  int n = 0;
  while (std::getline(prompts, line)) ++n;
  EXPECT_EQ(n, 5);

  const auto write_responses = [&](const fs::path& p, int shift) {
    std::ofstream out(p);
    for (int i = 0; i < 6; ++i) {
      out << "{\"doc_id\":\"d" << i << "\",\"response\":\"1. 繁體中文與語言自然性：" << (i + shift) % 6
          << "\\n2. 教育價值：" << i % 4 << "\\n3. 敏感內容：" << (i * 2) % 6 << "\"}\n";
    }
  };
  write_responses(dir_ / "r1.jsonl", 0);
  write_responses(dir_ / "r2.jsonl", 2);
  EXPECT_EQ(run_cli("compare --stage raw=\"" + (dir_ / "r1.jsonl").string() + "\" --stage final=\"" +
                    (dir_ / "r2.jsonl").string() + "\" --out \"" + (dir_ / "cmp.json").string() + "\""),
            0);
  EXPECT_NE(slurp(dir_ / "cmp.json").find("\"pairs\""), std::string::npos);
  EXPECT_EQ(run_cli("compare --stage only=\"" + (dir_ / "r1.jsonl").string() + "\""), 2);
}

#endif

}  // namespace
}  // namespace twc
