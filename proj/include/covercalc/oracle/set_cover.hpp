#pragma once

/**
 * @file set_cover.hpp
 * @brief Exact minimum set cover by branch and bound.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "covercalc/oracle/element_set.hpp"

namespace covercalc::oracle {

struct SetCoverResult {
  /// nullopt when the sets do not cover the universe at all.
  std::optional<std::size_t> size;
  std::vector<std::size_t> chosen;
  std::uint64_t nodes = 0;
};

namespace detail {

class SetCoverSearch {
 public:
  SetCoverSearch(const ElementSet& universe, const std::vector<ElementSet>& sets) : sets_(sets) {
    containing_.resize(universe.universe());
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (auto x : sets[s].members()) {
        if (universe.test(x)) containing_[x].push_back(s);
      }
      max_size_ = std::max(max_size_, sets[s].count_and(universe));
    }
  }

  SetCoverResult run(const ElementSet& universe) {
    ElementSet reach(universe.universe());
    for (const auto& s : sets_) reach |= s;
    if (!universe.subset_of(reach)) return {};
    greedy(universe);
    std::vector<std::size_t> chosen;
    dfs(universe, chosen);
    return {best_.size(), best_, nodes_};
  }

 private:
  void greedy(ElementSet uncovered) {
    best_.clear();
    while (!uncovered.empty()) {
      std::size_t pick = 0;
      std::size_t gain = 0;
      for (std::size_t s = 0; s < sets_.size(); ++s) {
        const std::size_t g = sets_[s].count_and(uncovered);
        if (g > gain) {
          gain = g;
          pick = s;
        }
      }
      best_.push_back(pick);
      uncovered.subtract(sets_[pick]);
    }
  }

  void dfs(const ElementSet& uncovered, std::vector<std::size_t>& chosen) {
    ++nodes_;
    const std::size_t left = uncovered.count();
    if (left == 0) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    const std::size_t lower = chosen.size() + (left + max_size_ - 1) / max_size_;
    if (lower >= best_.size()) return;

    // the uncovered element with the fewest candidate sets
    std::size_t pivot = 0;
    std::size_t fewest = static_cast<std::size_t>(-1);
    for (auto x : uncovered.members()) {
      if (containing_[x].size() < fewest) {
        fewest = containing_[x].size();
        pivot = x;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (auto s : containing_[pivot]) order.emplace_back(sets_[s].count_and(uncovered), s);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, s] : order) {
      (void)gain;
      ElementSet rest = uncovered;
      rest.subtract(sets_[s]);
      chosen.push_back(s);
      dfs(rest, chosen);
      chosen.pop_back();
      if (chosen.size() + 1 >= best_.size()) return;
    }
  }

  const std::vector<ElementSet>& sets_;
  std::vector<std::vector<std::size_t>> containing_;
  std::size_t max_size_ = 1;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Fewest of the given sets whose union contains the universe.
inline SetCoverResult exact_set_cover(const ElementSet& universe, const std::vector<ElementSet>& sets) {
  if (universe.empty()) return {0, {}, 0};
  detail::SetCoverSearch search(universe, sets);
  return search.run(universe);
}

}  // namespace covercalc::oracle
