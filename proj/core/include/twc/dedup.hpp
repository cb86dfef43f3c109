#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twc/document.hpp"

namespace twc {

struct MinhashParams {
  std::uint32_t shingle_size = 5;  // codepoints per shingle
  std::uint32_t num_permutations = 112;
  std::uint32_t num_bands = 14;
  std::uint32_t rows_per_band = 8;
  std::uint64_t hash_seed = 1;

  // Throws ConfigInvalid unless bands * rows == permutations and shingle_size >= 1.
  void validate() const;
  bool operator==(const MinhashParams&) const = default;
};

struct MinhashSignature {
  std::vector<std::uint64_t> values;
  bool operator==(const MinhashSignature&) const = default;
};

// Distinct length-n codepoint substrings after collapsing whitespace runs to
// one space, sorted. Text shorter than n yields itself; empty text yields
// nothing.
std::vector<std::string> shingles(std::string_view text, std::size_t n);

// Seeded base hashes of the shingles of `text`, one per distinct shingle.
// Equivalent to hashing the output of shingles() but allocation-light.
std::vector<std::uint64_t> shingle_hashes(std::string_view text, std::size_t n, std::uint64_t seed);

// values[i] = min over shingles of h_i(s), h_i(s) = mix64(base(s) + a_i)
// where base is a seeded 64-bit string hash and a_i are drawn from a
// splitmix64 sequence seeded by params.hash_seed. Empty input yields an
// empty signature, which never matches anything.
MinhashSignature minhash_signature(std::span<const std::string> shingle_set, const MinhashParams& params);
MinhashSignature minhash_from_hashes(std::span<const std::uint64_t> base_hashes, const MinhashParams& params);

// Fraction of equal coordinates.
double signature_agreement(const MinhashSignature& a, const MinhashSignature& b);

// One key per band: hash of the band index and that band's rows. Empty for
// an empty signature.
std::vector<std::uint64_t> lsh_bucket_keys(const MinhashSignature& sig, const MinhashParams& params);

struct DedupCandidate {
  std::string doc_id;
  std::vector<std::uint64_t> band_keys;
};

// Union-find over shared band keys. In every cluster the lexicographically
// smallest id survives; the ids of all other members are returned, sorted.
// The result does not depend on input order.
std::vector<std::string> cluster_and_select(std::span<const DedupCandidate> candidates);

// Occurrence counts of whitespace-trimmed, non-empty lines over one dump.
class LineFrequencyTable {
 public:
  void add_document(std::string_view text);
  void add_line(std::string_view normalized_line, std::uint64_t count = 1);
  void merge(const LineFrequencyTable& other);

  std::uint64_t count(std::string_view line) const;  // line is trimmed first
  std::size_t size() const { return counts_.size(); }
  const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }

  bool operator==(const LineFrequencyTable&) const = default;

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

template <typename Range>
LineFrequencyTable build_line_frequency(const Range& docs) {
  LineFrequencyTable table;
  for (const Document& d : docs) table.add_document(d.text);
  return table;
}

// Strips leading lines while their count exceeds `threshold`, then trailing
// lines likewise. Interior lines are never touched.
Document trim_frequent_lines(const Document& doc, const LineFrequencyTable& table, std::uint64_t threshold = 100);

}  // namespace twc
