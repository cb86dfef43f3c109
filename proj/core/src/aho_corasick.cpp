#include "twc/aho_corasick.hpp"

#include <algorithm>
#include <queue>

namespace twc {

AhoCorasick::AhoCorasick(std::span<const std::string> patterns) : nodes_(1), root_next_(256, 0) {
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const std::string& pat = patterns[p];
    if (pat.empty()) continue;
    ++pattern_count_;
    std::int32_t cur = 0;
    for (unsigned char c : pat) {
      std::int32_t next = child(cur, c);
      if (next < 0) {
        next = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        auto& kids = nodes_[cur].children;
        kids.insert(std::lower_bound(kids.begin(), kids.end(), std::make_pair(c, std::int32_t{0})),
                    {c, next});
      }
      cur = next;
    }
    nodes_[cur].outputs.push_back(static_cast<std::int32_t>(p));
  }

  for (const auto& [c, n] : nodes_[0].children) root_next_[c] = n;

  // Breadth-first failure links.
  std::queue<std::int32_t> queue;
  for (const auto& [c, n] : nodes_[0].children) {
    nodes_[n].fail = 0;
    queue.push(n);
  }
  while (!queue.empty()) {
    const std::int32_t u = queue.front();
    queue.pop();
    for (const auto& [c, v] : nodes_[u].children) {
      std::int32_t f = nodes_[u].fail;
      while (f != 0 && child(f, c) < 0) f = nodes_[f].fail;
      const std::int32_t target = (u == 0) ? 0 : (f == 0 ? root_next_[c] : child(f, c));
      nodes_[v].fail = (target == v) ? 0 : target;
      const Node& fn = nodes_[nodes_[v].fail];
      nodes_[v].output_link = fn.outputs.empty() ? fn.output_link : nodes_[v].fail;
      queue.push(v);
    }
  }
}

std::int32_t AhoCorasick::child(std::int32_t node, unsigned char c) const {
  const auto& kids = nodes_[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), c,
                             [](const auto& kv, unsigned char b) { return kv.first < b; });
  return (it != kids.end() && it->first == c) ? it->second : -1;
}

std::int32_t AhoCorasick::step(std::int32_t state, unsigned char c) const {
  while (state != 0) {
    const std::int32_t next = child(state, c);
    if (next >= 0) return next;
    state = nodes_[state].fail;
  }
  return root_next_[c];
}

bool AhoCorasick::contains_any(std::string_view text) const {
  if (pattern_count_ == 0) return false;
  std::int32_t state = 0;
  for (unsigned char c : text) {
    state = step(state, c);
    if (!nodes_[state].outputs.empty() || nodes_[state].output_link >= 0) return true;
  }
  return false;
}

std::vector<AhoCorasick::Match> AhoCorasick::find_all(std::string_view text) const {
  std::vector<Match> out;
  if (pattern_count_ == 0) return out;
  std::int32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = step(state, static_cast<unsigned char>(text[i]));
    const std::size_t first = out.size();
    for (std::int32_t n = state; n >= 0; n = nodes_[n].output_link) {
      for (std::int32_t p : nodes_[n].outputs) out.push_back({static_cast<std::size_t>(p), i + 1});
      if (n == 0) break;
    }
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
              [](const Match& a, const Match& b) { return a.pattern < b.pattern; });
  }
  return out;
}

}  // namespace twc
