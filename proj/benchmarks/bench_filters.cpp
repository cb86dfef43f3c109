#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "twc/dedup.hpp"
#include "twc/eval.hpp"
#include "twc/prefilter.hpp"
#include "twc/quality.hpp"
#include "twc/utf8.hpp"

namespace {

// Roughly `lines` lines of Traditional Chinese prose with some ASCII mixed in.
std::string sample_text(std::size_t lines, std::uint64_t seed = 1) {
  static const std::vector<std::string> pieces = {"臺灣", "的", "學校", "老師", "今天", "天氣", "很好", "我們",
                                                   "一起", "去", "公園", "散步", "2024", "年", "OK", "，"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1), len(8, 30);
  std::string out;
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t k = 0, n = len(rng); k < n; ++k) out += pieces[pick(rng)];
    out += "。\n";
  }
  return out;
}

twc::Document sample_doc(std::size_t lines) {
  twc::Document d;
  d.id = "bench";
  d.text = sample_text(lines);
  return d;
}

void BM_WordCount(benchmark::State& state) {
  const std::string text = sample_text(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twc::word_count(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_WordCount)->Arg(10)->Arg(1000);

void BM_GopherFilter(benchmark::State& state) {
  const twc::Document d = sample_doc(static_cast<std::size_t>(state.range(0)));
  const twc::QualityConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(twc::gopher_filter(d, cfg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * d.text.size()));
}
BENCHMARK(BM_GopherFilter)->Arg(10)->Arg(1000);

void BM_C4Filter(benchmark::State& state) {
  const twc::Document d = sample_doc(static_cast<std::size_t>(state.range(0)));
  const twc::QualityConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(twc::c4_document_filter(d, cfg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * d.text.size()));
}
BENCHMARK(BM_C4Filter)->Arg(10)->Arg(1000);

void BM_FineWebFilter(benchmark::State& state) {
  const twc::Document d = sample_doc(static_cast<std::size_t>(state.range(0)));
  const twc::QualityConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(twc::fineweb_filter(d, cfg));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * d.text.size()));
}
BENCHMARK(BM_FineWebFilter)->Arg(10)->Arg(1000);

void BM_CjkRun(benchmark::State& state) {
  // Worst case: no qualifying run anywhere, so the whole input is scanned.
  std::string text;
  for (int i = 0; i < state.range(0); ++i) text += "abc 中文 def ";
  for (auto _ : state) benchmark::DoNotOptimize(twc::has_fuzzy_cjk_run(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_CjkRun)->Arg(100)->Arg(10000);

void BM_ExtractMainText(benchmark::State& state) {
  std::string html = "<html><head><title>t</title><script>var a=1;</script></head><body><nav>選單</nav><article>";
  for (int i = 0; i < state.range(0); ++i) html += "<p>" + sample_text(1, static_cast<std::uint64_t>(i)) + "</p>";
  html += "</article><footer>頁尾</footer></body></html>";
  for (auto _ : state) benchmark::DoNotOptimize(twc::extract_main_text(html));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * html.size()));
}
BENCHMARK(BM_ExtractMainText)->Arg(10)->Arg(1000);

void BM_MinhashSignature(benchmark::State& state) {
  const std::string text = sample_text(static_cast<std::size_t>(state.range(0)));
  const twc::MinhashParams p;
  for (auto _ : state) {
    const auto hashes = twc::shingle_hashes(text, p.shingle_size, p.hash_seed);
    benchmark::DoNotOptimize(twc::lsh_bucket_keys(twc::minhash_from_hashes(hashes, p), p));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_MinhashSignature)->Arg(10)->Arg(1000);

void BM_WelchTTest(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> score(0, 15);
  std::vector<double> a, b;
  for (int i = 0; i < state.range(0); ++i) {
    a.push_back(score(rng));
    b.push_back(score(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(twc::welch_t_test(a, b));
}
BENCHMARK(BM_WelchTTest)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
