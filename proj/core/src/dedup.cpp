#include "twc/dedup.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "twc/error.hpp"
#include "twc/hashing.hpp"
#include "twc/utf8.hpp"

namespace twc {
namespace {

std::u32string normalize_whitespace(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  bool in_space = false;
  utf8::Cursor cur(text);
  char32_t cp;
  while (cur.next(cp)) {
    if (utf8::is_space(cp)) {
      if (!in_space) out.push_back(U' ');
      in_space = true;
    } else {
      out.push_back(cp);
      in_space = false;
    }
  }
  return out;
}

template <typename F>
void for_each_shingle(std::string_view text, std::size_t n, F&& f) {
  if (n == 0) n = 1;
  const std::u32string cps = normalize_whitespace(text);
  if (cps.empty()) return;
  if (cps.size() <= n) {
    f(utf8::encode(cps));
    return;
  }
  std::string buf;
  for (std::size_t i = 0; i + n <= cps.size(); ++i) {
    buf.clear();
    for (std::size_t k = 0; k < n; ++k) utf8::append(buf, cps[i + k]);
    f(buf);
  }
}

std::vector<std::uint64_t> permutation_offsets(const MinhashParams& params) {
  std::vector<std::uint64_t> offsets(params.num_permutations);
  std::uint64_t state = params.hash_seed;
  for (auto& a : offsets) {
    state += 0x9E3779B97F4A7C15ULL;
    a = mix64(state);
  }
  return offsets;
}

}  // namespace

void MinhashParams::validate() const {
  if (shingle_size < 1) throw ConfigInvalid("shingle_size must be >= 1");
  if (num_permutations == 0 || num_bands == 0 || rows_per_band == 0) {
    throw ConfigInvalid("minhash dimensions must be positive");
  }
  if (static_cast<std::uint64_t>(num_bands) * rows_per_band != num_permutations) {
    throw ConfigInvalid("num_bands * rows_per_band must equal num_permutations");
  }
}

std::vector<std::string> shingles(std::string_view text, std::size_t n) {
  std::vector<std::string> out;
  for_each_shingle(text, n, [&](const std::string& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint64_t> shingle_hashes(std::string_view text, std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  for_each_shingle(text, n, [&](const std::string& s) { out.push_back(hash_bytes(s, seed)); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinhashSignature minhash_from_hashes(std::span<const std::uint64_t> base_hashes, const MinhashParams& params) {
  MinhashSignature sig;
  if (base_hashes.empty()) return sig;
  const std::vector<std::uint64_t> offsets = permutation_offsets(params);
  sig.values.assign(params.num_permutations, std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t base : base_hashes) {
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      sig.values[i] = std::min(sig.values[i], mix64(base + offsets[i]));
    }
  }
  return sig;
}

MinhashSignature minhash_signature(std::span<const std::string> shingle_set, const MinhashParams& params) {
  std::vector<std::uint64_t> base;
  base.reserve(shingle_set.size());
  for (const std::string& s : shingle_set) base.push_back(hash_bytes(s, params.hash_seed));
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return minhash_from_hashes(base, params);
}

double signature_agreement(const MinhashSignature& a, const MinhashSignature& b) {
  if (a.values.empty() || a.values.size() != b.values.size()) return 0.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) same += (a.values[i] == b.values[i]);
  return static_cast<double>(same) / static_cast<double>(a.values.size());
}

std::vector<std::uint64_t> lsh_bucket_keys(const MinhashSignature& sig, const MinhashParams& params) {
  std::vector<std::uint64_t> keys;
  if (sig.values.empty()) return keys;
  if (sig.values.size() != params.num_permutations) throw Error("signature length does not match params");
  keys.reserve(params.num_bands);
  for (std::uint32_t b = 0; b < params.num_bands; ++b) {
    std::uint64_t h = mix64(0xB5AD4ECEDA1CE2A9ULL ^ b);
    for (std::uint32_t r = 0; r < params.rows_per_band; ++r) {
      h = hash_combine(h, sig.values[static_cast<std::size_t>(b) * params.rows_per_band + r]);
    }
    keys.push_back(h);
  }
  return keys;
}

std::vector<std::string> cluster_and_select(std::span<const DedupCandidate> candidates) {
  std::vector<std::size_t> parent(candidates.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::unordered_map<std::uint64_t, std::size_t> first_with_key;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::uint64_t key : candidates[i].band_keys) {
      auto [it, inserted] = first_with_key.emplace(key, i);
      if (!inserted) {
        const std::size_t a = find(i), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  // Smallest id per cluster root.
  std::unordered_map<std::size_t, std::size_t> keeper;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto [it, inserted] = keeper.emplace(find(i), i);
    if (!inserted && candidates[i].doc_id < candidates[it->second].doc_id) it->second = i;
  }
  std::vector<std::string> removed;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keeper.at(find(i)) != i) removed.push_back(candidates[i].doc_id);
  }
  std::sort(removed.begin(), removed.end());
  return removed;
}

void LineFrequencyTable::add_document(std::string_view text) {
  for (std::string_view raw : utf8::split_lines(text)) {
    const std::string_view line = utf8::trim(raw);
    if (!line.empty()) ++counts_[std::string(line)];
  }
}

void LineFrequencyTable::add_line(std::string_view normalized_line, std::uint64_t count) {
  if (normalized_line.empty() || count == 0) return;
  counts_[std::string(normalized_line)] += count;
}

void LineFrequencyTable::merge(const LineFrequencyTable& other) {
  for (const auto& [line, n] : other.counts_) counts_[line] += n;
}

std::uint64_t LineFrequencyTable::count(std::string_view line) const {
  auto it = counts_.find(std::string(utf8::trim(line)));
  return it == counts_.end() ? 0 : it->second;
}

Document trim_frequent_lines(const Document& doc, const LineFrequencyTable& table, std::uint64_t threshold) {
  const std::vector<std::string_view> lines = utf8::split_lines(doc.text);
  std::size_t begin = 0, end = lines.size();
  while (begin < end && table.count(lines[begin]) > threshold) ++begin;
  while (end > begin && table.count(lines[end - 1]) > threshold) --end;
  if (begin == 0 && end == lines.size()) return doc;
  Document out = doc;
  out.text.clear();
  for (std::size_t i = begin; i < end; ++i) {
    if (i != begin) out.text.push_back('\n');
    out.text.append(lines[i]);
  }
  return out;
}

}  // namespace twc
