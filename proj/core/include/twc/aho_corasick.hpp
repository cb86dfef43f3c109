#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace twc {

// Byte-level Aho-Corasick automaton. Matching UTF-8 patterns against UTF-8
// text byte-wise finds exactly the codepoint-level substring occurrences.
//
// Transitions are dense per node only for the root; other nodes keep sorted
// child lists and fall back along failure links, so a scan costs
// O(len(text) + matches) amortized.
class AhoCorasick {
 public:
  struct Match {
    std::size_t pattern;  // index into the constructor's pattern list
    std::size_t end;      // byte offset one past the match
    bool operator==(const Match&) const = default;
  };

  AhoCorasick() : AhoCorasick(std::span<const std::string>{}) {}
  // Empty patterns are ignored.
  explicit AhoCorasick(std::span<const std::string> patterns);

  bool empty() const { return pattern_count_ == 0; }
  std::size_t pattern_count() const { return pattern_count_; }

  // True as soon as any pattern occurs; stops at the first hit.
  bool contains_any(std::string_view text) const;
  // All occurrences in order of end offset (ties by pattern index).
  std::vector<Match> find_all(std::string_view text) const;

 private:
  struct Node {
    std::vector<std::pair<unsigned char, std::int32_t>> children;  // sorted by byte
    std::int32_t fail = 0;
    std::int32_t output_link = -1;  // nearest node on the fail chain with outputs
    std::vector<std::int32_t> outputs;
  };

  std::int32_t child(std::int32_t node, unsigned char c) const;
  std::int32_t step(std::int32_t state, unsigned char c) const;

  std::vector<Node> nodes_;
  std::vector<std::int32_t> root_next_;  // 256 entries
  std::size_t pattern_count_ = 0;
};

}  // namespace twc
