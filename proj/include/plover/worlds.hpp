#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "plover/formula.hpp"
#include "plover/ground.hpp"

namespace plover::worlds {

using WorldIndex = std::uint64_t;

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Packed bit set over the worlds of one space.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::uint64_t world_count, bool filled = false);

  std::uint64_t size() const { return size_; }
  bool test(WorldIndex w) const { return (bits_[w >> 6] >> (w & 63)) & 1; }
  void set(WorldIndex w) { bits_[w >> 6] |= std::uint64_t{1} << (w & 63); }
  std::uint64_t count() const;
  bool empty() const { return count() == 0; }

  WorldSet complement() const;
  WorldSet intersect(const WorldSet& other) const;
  WorldSet unite(const WorldSet& other) const;

  std::vector<WorldIndex> indices() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t blk = 0; blk < bits_.size(); ++blk) {
      std::uint64_t word = bits_[blk];
      while (word) {
        const int bit = __builtin_ctzll(word);
        fn(static_cast<WorldIndex>((blk << 6) + bit));
        word &= word - 1;
      }
    }
  }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

 private:
  void mask_tail();

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

// All 2^|base| subsets of the Herbrand base, addressed by index: world w
// contains atom j iff bit j of w is set.
class WorldSpace {
 public:
  static WorldSpace enumerate(HerbrandBase base, std::size_t atom_cap);

  std::uint64_t world_count() const { return count_; }
  const HerbrandBase& base() const { return base_; }
  bool world_contains(WorldIndex w, std::size_t atom_pos) const { return (w >> atom_pos) & 1; }

  // Inductive truth of a ground formula in world w; throws on unknown atoms.
  bool satisfies(WorldIndex w, const FormulaPtr& f) const;

  // Exactly the worlds where satisfies holds, built by set algebra.
  WorldSet satisfying_set(const FormulaPtr& f) const;

  std::string render_world(WorldIndex w) const;  // "{b(tweety), p(tweety)}"

 private:
  HerbrandBase base_;
  std::uint64_t count_ = 0;
};

// Memoizes satisfying sets per rendered formula. One cache per engine run;
// not synchronized -- use one instance per concurrently running query.
class SatCache {
 public:
  const WorldSet& sats(const WorldSpace& space, const FormulaPtr& f);

 private:
  std::map<std::string, WorldSet> memo_;
};

}  // namespace plover::worlds
