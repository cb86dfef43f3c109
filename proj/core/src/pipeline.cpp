#include "twc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <unordered_set>

#include "twc/error.hpp"
#include "twc/hashing.hpp"
#include "twc/jsonl.hpp"
#include "twc/langid.hpp"
#include "twc/log.hpp"
#include "twc/prefilter.hpp"
#include "twc/stats_report.hpp"
#include "twc/warc.hpp"
#include "twc/worker_pool.hpp"

namespace twc {

namespace fs = std::filesystem;

std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::kPrefilter: return "prefilter";
    case Stage::kExtraction: return "extraction";
    case Stage::kLangId: return "langid";
    case Stage::kGopher: return "gopher";
    case Stage::kC4: return "c4";
    case Stage::kFineWeb: return "fineweb";
    case Stage::kMinhash: return "minhash";
    case Stage::kLineTrim: return "line_trim";
  }
  return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (stage_name(s) == name) return s;
  }
  return std::nullopt;
}

StageMetric governing_metric(Stage s) {
  switch (s) {
    case Stage::kPrefilter:
    case Stage::kExtraction:
    case Stage::kLangId: return StageMetric::kDocuments;
    default: return StageMetric::kBytes;
  }
}

StageStats StageStats::for_stage(Stage s) {
  StageStats st;
  st.stage_name = std::string(twc::stage_name(s));
  st.metric = governing_metric(s);
  return st;
}

std::uint64_t StageStats::removed_total() const {
  std::uint64_t n = 0;
  for (const auto& [reason, count] : removal_reasons) n += count;
  return n;
}

RemovalRate relative_removal_rate(const StageStats& stats) { return relative_removal_rate(stats, stats.metric); }

RemovalRate relative_removal_rate(const StageStats& stats, StageMetric metric) {
  const std::uint64_t in = metric == StageMetric::kDocuments ? stats.docs_in : stats.bytes_in;
  const std::uint64_t out = metric == StageMetric::kDocuments ? stats.docs_out : stats.bytes_out;
  if (in == 0) return {0.0, true};
  return {1.0 - static_cast<double>(out) / static_cast<double>(in), false};
}

namespace {

double chain_rate(std::span<const StageStats> stats, StageMetric metric, bool byte_stages_only) {
  std::vector<const StageStats*> chain;
  for (const StageStats& s : stats) {
    if (!byte_stages_only || s.metric == StageMetric::kBytes) chain.push_back(&s);
  }
  auto in_of = [&](const StageStats* s) { return metric == StageMetric::kDocuments ? s->docs_in : s->bytes_in; };
  auto out_of = [&](const StageStats* s) { return metric == StageMetric::kDocuments ? s->docs_out : s->bytes_out; };
  if (chain.empty()) return 1.0;
  bool chained = in_of(chain.front()) > 0;
  for (std::size_t i = 1; chained && i < chain.size(); ++i) {
    chained = in_of(chain[i]) == out_of(chain[i - 1]);
  }
  if (chained) {
    return static_cast<double>(out_of(chain.back())) / static_cast<double>(in_of(chain.front()));
  }
  double rate = 1.0;
  for (const StageStats* s : chain) {
    if (in_of(s) > 0) rate *= static_cast<double>(out_of(s)) / static_cast<double>(in_of(s));
  }
  return rate;
}

}  // namespace

GlobalKeptRate global_kept_rate(std::span<const StageStats> stats) {
  return {chain_rate(stats, StageMetric::kDocuments, false), chain_rate(stats, StageMetric::kBytes, true)};
}

void PipelineConfig::validate() const {
  if (worker_count < 1) throw ConfigInvalid("worker_count must be at least 1");
  if (shard_count < 1) throw ConfigInvalid("shard_count must be at least 1");
  if (min_cjk_run < 1) throw ConfigInvalid("min_cjk_run must be at least 1");
  if (!(language_threshold >= 0.0 && language_threshold <= 1.0)) {
    throw ConfigInvalid("language_threshold must lie in [0, 1]");
  }
  if (!(max_simplified_fraction >= 0.0 && max_simplified_fraction <= 1.0)) {
    throw ConfigInvalid("max_simplified_fraction must lie in [0, 1]");
  }
  quality.validate();
  minhash.validate();
  for (const fs::path& p : input_paths) {
    if (!fs::is_regular_file(p)) throw ConfigInvalid("input archive not found: " + p.string());
  }
  if (!blocklist_path.empty() && !fs::is_regular_file(blocklist_path)) {
    throw ConfigInvalid("blocklist not found: " + blocklist_path.string());
  }
  const int profiles = !profile_simplified_path.empty() + !profile_traditional_path.empty() +
                       !profile_phrases_path.empty();
  if (profiles != 0 && profiles != 3) {
    throw ConfigInvalid("profile_simplified_path, profile_traditional_path and profile_phrases_path go together");
  }
  for (const fs::path* p : {&profile_simplified_path, &profile_traditional_path, &profile_phrases_path}) {
    if (!p->empty() && !fs::is_regular_file(*p)) throw ConfigInvalid("profile file not found: " + p->string());
  }
  if (!scorer_model_path.empty() && !fs::is_regular_file(scorer_model_path)) {
    throw ScorerUnavailable("language model not found: " + scorer_model_path.string());
  }
  if (!output_dir.empty() && fs::exists(output_dir) && !fs::is_directory(output_dir)) {
    throw ConfigInvalid("output_dir exists and is not a directory: " + output_dir.string());
  }
}

namespace {

constexpr std::size_t kBatchSize = 256;
constexpr std::size_t kMapStages = 6;  // prefilter .. fineweb

// Everything the per-document stages need. Shared read-only between
// workers except for the per-worker scorers.
class Context {
 public:
  explicit Context(const PipelineConfig& cfg) : cfg_(cfg), pool_(cfg.worker_count) {
    if (!cfg.blocklist_path.empty()) blocklist_ = UrlBlocklist::load(cfg.blocklist_path);
    if (!cfg.profile_simplified_path.empty()) {
      loaded_profile_ = std::make_unique<ScriptProfile>(ScriptProfile::load(
          cfg.profile_simplified_path, cfg.profile_traditional_path, cfg.profile_phrases_path));
    }
    langid_.min_confidence = cfg.language_threshold;
    langid_.max_simplified_fraction = cfg.max_simplified_fraction;
    minhash_ = cfg.minhash;
    minhash_.hash_seed = cfg.seed;
    const ScorerFactory factory = make_scorer_factory(cfg.scorer_model_path);
    for (std::size_t w = 0; w < pool_.size(); ++w) scorers_.push_back(factory());
  }

  const PipelineConfig& cfg() const { return cfg_; }
  WorkerPool& pool() { return pool_; }
  const MinhashParams& minhash() const { return minhash_; }

  // Prefilter on a raw record; `doc` receives the decoded payload either
  // way. A record id seen earlier in the run counts as a duplicate.
  FilterVerdict prefilter(const RawRecord& rec, bool repeated, Document& doc) const {
    doc.id = document_id_for(rec.warc_record_id);
    doc.url = rec.target_url;
    doc.date = rec.fetch_date;
    doc.text = decode_payload(rec.payload, rec.content_type);
    if (!rec.content_type.empty()) doc.meta["content_type"] = rec.content_type;
    if (repeated) return FilterVerdict::Remove(Reason::kDuplicate);
    if (url_blocked(rec.target_url, blocklist_)) return FilterVerdict::Remove(Reason::kUrlBlocked);
    if (!has_fuzzy_cjk_run(doc.text, cfg_.min_cjk_run, ranges_)) return FilterVerdict::Remove(Reason::kNoCjkRun);
    return FilterVerdict::Keep();
  }

  // Stages 2..6 on a document, in place.
  FilterVerdict apply(Stage s, Document& doc, std::size_t worker) const {
    switch (s) {
      case Stage::kExtraction:
        doc.text = extract_main_text(doc.text);
        doc.meta.erase("content_type");
        return FilterVerdict::Keep();
      case Stage::kLangId:
        return identify(doc, *scorers_[worker], profile(), langid_);
      case Stage::kGopher:
        return gopher_filter(doc, cfg_.quality);
      case Stage::kC4: {
        C4Result r = c4_document_filter(doc, cfg_.quality);
        if (r.verdict.keep()) doc.text = std::move(r.cleaned_text);
        return r.verdict;
      }
      case Stage::kFineWeb:
        return fineweb_filter(doc, cfg_.quality);
      default:
        throw Error("stage is not a per-document stage: " + std::string(stage_name(s)));
    }
  }

 private:
  const ScriptProfile& profile() const { return loaded_profile_ ? *loaded_profile_ : ScriptProfile::builtin(); }

  const PipelineConfig& cfg_;
  WorkerPool pool_;
  UrlBlocklist blocklist_;
  std::unique_ptr<ScriptProfile> loaded_profile_;
  LangIdConfig langid_;
  CjkRanges ranges_;
  MinhashParams minhash_;
  std::vector<std::unique_ptr<LanguageScorer>> scorers_;
};

// What happened to one record over the per-document stages.
struct Trace {
  std::size_t entered = 0;  // number of stages the document reached
  bool survived = false;
  Reason reason = Reason::kKept;
  std::array<std::uint64_t, kMapStages> bytes_in{};
  std::array<std::uint64_t, kMapStages> bytes_out{};
  Document doc;
  std::vector<Document> snapshots;  // output of each passed stage, only when persisting
};

void account(const Trace& t, std::span<StageStats> stats, std::size_t first_stage) {
  for (std::size_t i = 0; i < t.entered; ++i) {
    StageStats& s = stats[first_stage + i];
    ++s.docs_in;
    s.bytes_in += t.bytes_in[i];
    const bool last = i + 1 == t.entered;
    if (last && !t.survived) {
      s.add_removal(t.reason);
    } else {
      ++s.docs_out;
      s.bytes_out += t.bytes_out[i];
    }
  }
}

// Runs stages [from, to) of the per-document cascade on t.doc.
void run_doc_stages(const Context& ctx, Trace& t, std::size_t from, std::size_t to, std::size_t worker,
                    bool persist) {
  for (std::size_t i = from; i < to; ++i) {
    const std::size_t k = t.entered;
    t.bytes_in[k] = t.doc.byte_len();
    ++t.entered;
    const FilterVerdict v = ctx.apply(kAllStages[i], t.doc, worker);
    if (!v.keep()) {
      t.survived = false;
      t.reason = v.reason();
      return;
    }
    t.bytes_out[k] = t.doc.byte_len();
    if (persist) t.snapshots.push_back(t.doc);
  }
  t.survived = true;
}

class OutputFile {
 public:
  explicit OutputFile(const fs::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw SinkWriteFailure("cannot open " + path.string());
  }
  void write(const Document& d) { write_document_jsonl(d, out_); }
  void close() {
    out_.flush();
    if (!out_) throw SinkWriteFailure("failed writing " + path_.string());
    out_.close();
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string stage_file_name(Stage s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%zu-%s.jsonl",
                static_cast<std::size_t>(std::find(kAllStages.begin(), kAllStages.end(), s) - kAllStages.begin()) + 1,
                std::string(stage_name(s)).c_str());
  return buf;
}

// Reads JSONL documents in batches and hands each batch to `fn`.
template <typename Fn>
void for_each_batch(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  JsonlDocumentReader reader(in);
  std::vector<Document> batch;
  while (auto d = reader.next()) {
    batch.push_back(std::move(*d));
    if (batch.size() == kBatchSize) {
      fn(batch);
      batch.clear();
    }
  }
  if (!batch.empty()) fn(batch);
}

// Pass 1 of dedup: band keys of every document in the file, computed in
// parallel, then clustered by one coordinator.
std::unordered_set<std::string> find_duplicates(Context& ctx, const fs::path& path, StageStats& stats) {
  std::vector<DedupCandidate> candidates;
  for_each_batch(path, [&](std::vector<Document>& batch) {
    std::vector<DedupCandidate> keys(batch.size());
    ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t) {
      const MinhashParams& p = ctx.minhash();
      const auto hashes = shingle_hashes(batch[i].text, p.shingle_size, p.hash_seed);
      keys[i] = {batch[i].id, lsh_bucket_keys(minhash_from_hashes(hashes, p), p)};
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++stats.docs_in;
      stats.bytes_in += batch[i].byte_len();
      if (!keys[i].band_keys.empty()) candidates.push_back(std::move(keys[i]));
    }
  });
  const std::vector<std::string> removed = cluster_and_select(candidates);
  return {removed.begin(), removed.end()};
}

// Pass 2: line counts over the documents that survived dedup, accumulated
// per worker and merged.
LineFrequencyTable count_lines(Context& ctx, const fs::path& path, const std::unordered_set<std::string>& removed,
                               StageStats& minhash_stats) {
  std::vector<LineFrequencyTable> partial(ctx.pool().size());
  for_each_batch(path, [&](std::vector<Document>& batch) {
    ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t worker) {
      if (!removed.contains(batch[i].id)) partial[worker].add_document(batch[i].text);
    });
    for (const Document& d : batch) {
      if (removed.contains(d.id)) {
        minhash_stats.add_removal(Reason::kDuplicate);
      } else {
        ++minhash_stats.docs_out;
        minhash_stats.bytes_out += d.byte_len();
      }
    }
  });
  LineFrequencyTable table;
  for (const auto& t : partial) table.merge(t);
  return table;
}

// Pass 3: trims every surviving document and hands it to `sink` in input
// order.
template <typename Sink>
void trim_and_emit(Context& ctx, const fs::path& path, const std::unordered_set<std::string>& removed,
                   const LineFrequencyTable& table, StageStats& stats, Sink&& sink) {
  const std::uint64_t threshold = ctx.cfg().line_trim_threshold;
  for_each_batch(path, [&](std::vector<Document>& batch) {
    std::vector<Document> trimmed(batch.size());
    ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t) {
      if (!removed.contains(batch[i].id)) trimmed[i] = trim_frequent_lines(batch[i], table, threshold);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (removed.contains(batch[i].id)) continue;
      ++stats.docs_in;
      ++stats.docs_out;
      stats.bytes_in += batch[i].byte_len();
      stats.bytes_out += trimmed[i].byte_len();
      sink(batch[i], trimmed[i]);
    }
  });
}

std::size_t shard_of(const std::string& id, std::size_t shard_count) {
  return static_cast<std::size_t>(hash_bytes(id) % shard_count);
}

std::string shard_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "part-%05zu.jsonl", i);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.flush();
  if (!out) throw SinkWriteFailure("failed writing " + path.string());
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  if (config.output_dir.empty()) throw ConfigInvalid("output_dir is required");
  Context ctx(config);

  PipelineResult result;
  for (Stage s : kAllStages) result.stages.push_back(StageStats::for_stage(s));
  std::span<StageStats> stats(result.stages);

  fs::create_directories(config.output_dir);
  const fs::path work_dir = config.output_dir / "_work";
  fs::create_directories(work_dir);
  const fs::path stage_dir = config.output_dir / "stages";
  std::vector<std::unique_ptr<OutputFile>> persisted;
  if (config.persist_stages) {
    fs::create_directories(stage_dir);
    for (std::size_t i = 0; i < kMapStages; ++i) {
      persisted.push_back(std::make_unique<OutputFile>(stage_dir / stage_file_name(kAllStages[i])));
    }
  }
  const fs::path map_output = work_dir / "fineweb.jsonl";
  {
    OutputFile survivors(map_output);
    std::unordered_set<std::string> seen_records;
    std::vector<RawRecord> batch;
    std::vector<bool> repeated;

    auto flush = [&] {
      std::vector<Trace> traces(batch.size());
      ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t worker) {
        Trace& t = traces[i];
        t.entered = 1;
        const FilterVerdict v = ctx.prefilter(batch[i], repeated[i], t.doc);
        // Charged in decoded bytes, which is what the next stage sees.
        t.bytes_in[0] = t.bytes_out[0] = t.doc.byte_len();
        if (!v.keep()) {
          t.reason = v.reason();
          return;
        }
        if (config.persist_stages) t.snapshots.push_back(t.doc);
        run_doc_stages(ctx, t, 1, kMapStages, worker, config.persist_stages);
      });
      for (Trace& t : traces) {
        account(t, stats, 0);
        for (std::size_t k = 0; k < t.snapshots.size(); ++k) persisted[k]->write(t.snapshots[k]);
        if (t.survived) survivors.write(t.doc);
      }
      batch.clear();
      repeated.clear();
    };

    for (const fs::path& path : config.input_paths) {
      ++result.input.archives;
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        ++result.input.failed_archives;
        log::error("cannot open archive " + path.string());
        continue;
      }
      WarcReader reader(in);
      try {
        while (auto rec = reader.next()) {
          repeated.push_back(!seen_records.insert(rec->warc_record_id).second);
          batch.push_back(std::move(*rec));
          if (batch.size() == kBatchSize) flush();
        }
      } catch (const Error& e) {
        ++result.input.failed_archives;
        log::error(path.string() + ": " + e.what() + "; rest of archive skipped");
      }
      result.input.corrupt_records += reader.corrupt_records();
      result.input.skipped_records += reader.skipped_records();
    }
    flush();
    survivors.close();
    for (auto& f : persisted) f->close();
  }

  // Dedup barrier: the map output is re-read once per pass.
  StageStats& minhash = stats[6];
  StageStats& trim = stats[7];
  const auto removed = find_duplicates(ctx, map_output, minhash);
  const LineFrequencyTable table = count_lines(ctx, map_output, removed, minhash);

  std::vector<std::unique_ptr<OutputFile>> shards;
  for (std::size_t i = 0; i < config.shard_count; ++i) {
    result.shards.push_back(config.output_dir / shard_name(i));
    shards.push_back(std::make_unique<OutputFile>(result.shards.back()));
  }
  std::unique_ptr<OutputFile> minhash_out, trim_out;
  if (config.persist_stages) {
    minhash_out = std::make_unique<OutputFile>(stage_dir / stage_file_name(Stage::kMinhash));
    trim_out = std::make_unique<OutputFile>(stage_dir / stage_file_name(Stage::kLineTrim));
  }
  trim_and_emit(ctx, map_output, removed, table, trim, [&](const Document& before, const Document& after) {
    if (minhash_out) minhash_out->write(before);
    if (trim_out) trim_out->write(after);
    shards[shard_of(after.id, config.shard_count)]->write(after);
  });
  for (auto& s : shards) s->close();
  if (minhash_out) minhash_out->close();
  if (trim_out) trim_out->close();
  fs::remove_all(work_dir);

  const StatsReport report = make_stats_report(result.input, result.stages);
  write_text_file(config.output_dir / "stats.json", stats_to_json(report));
  write_text_file(config.output_dir / "stats.txt", render_stats_table(report) + "\n" + render_stage_summary(report));
  return result;
}

StageStats run_stage(Stage stage, const PipelineConfig& config, const fs::path& in, const fs::path& out) {
  config.validate();
  if (!fs::is_regular_file(in)) throw ConfigInvalid("stage input not found: " + in.string());
  Context ctx(config);
  StageStats stats = StageStats::for_stage(stage);

  if (stage == Stage::kMinhash || stage == Stage::kLineTrim) {
    OutputFile sink(out);
    std::unordered_set<std::string> removed;
    StageStats scratch;
    if (stage == Stage::kMinhash) {
      removed = find_duplicates(ctx, in, stats);
      for_each_batch(in, [&](std::vector<Document>& batch) {
        for (const Document& d : batch) {
          if (removed.contains(d.id)) {
            stats.add_removal(Reason::kDuplicate);
          } else {
            ++stats.docs_out;
            stats.bytes_out += d.byte_len();
            sink.write(d);
          }
        }
      });
    } else {
      const LineFrequencyTable table = count_lines(ctx, in, removed, scratch);
      trim_and_emit(ctx, in, removed, table, stats, [&](const Document&, const Document& after) { sink.write(after); });
    }
    sink.close();
    return stats;
  }

  OutputFile sink(out);
  if (stage == Stage::kPrefilter) {
    std::ifstream src(in, std::ios::binary);
    WarcReader reader(src);
    std::unordered_set<std::string> seen;
    std::vector<RawRecord> batch;
    std::vector<bool> repeated;
    auto flush = [&] {
      std::vector<Trace> traces(batch.size());
      ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t) {
        Trace& t = traces[i];
        t.entered = 1;
        const FilterVerdict v = ctx.prefilter(batch[i], repeated[i], t.doc);
        t.bytes_in[0] = t.bytes_out[0] = t.doc.byte_len();
        t.survived = v.keep();
        t.reason = v.reason();
      });
      for (const Trace& t : traces) {
        account(t, std::span<StageStats>(&stats, 1), 0);
        if (t.survived) sink.write(t.doc);
      }
      batch.clear();
      repeated.clear();
    };
    while (auto rec = reader.next()) {
      repeated.push_back(!seen.insert(rec->warc_record_id).second);
      batch.push_back(std::move(*rec));
      if (batch.size() == kBatchSize) flush();
    }
    flush();
  } else {
    const std::size_t index =
        static_cast<std::size_t>(std::find(kAllStages.begin(), kAllStages.end(), stage) - kAllStages.begin());
    for_each_batch(in, [&](std::vector<Document>& batch) {
      std::vector<Trace> traces(batch.size());
      ctx.pool().run(batch.size(), [&](std::size_t i, std::size_t worker) {
        traces[i].doc = std::move(batch[i]);
        run_doc_stages(ctx, traces[i], index, index + 1, worker, false);
      });
      for (const Trace& t : traces) {
        account(t, std::span<StageStats>(&stats, 1), 0);
        if (t.survived) sink.write(t.doc);
      }
    });
  }
  sink.close();
  return stats;
}

}  // namespace twc
