#include "plover/worlds.hpp"

#include <bit>

namespace plover::worlds {

WorldSet::WorldSet(std::uint64_t world_count, bool filled)
    : size_(world_count), bits_((world_count + 63) / 64, filled ? ~std::uint64_t{0} : 0) {
  if (filled) mask_tail();
}

void WorldSet::mask_tail() {
  if (bits_.empty()) return;
  const unsigned rem = size_ & 63;
  if (rem) bits_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::uint64_t WorldSet::count() const {
  std::uint64_t n = 0;
  for (auto w : bits_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

WorldSet WorldSet::complement() const {
  WorldSet out(size_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = ~bits_[i];
  out.mask_tail();
  return out;
}

WorldSet WorldSet::intersect(const WorldSet& other) const {
  WorldSet out(size_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

WorldSet WorldSet::unite(const WorldSet& other) const {
  WorldSet out(size_);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

std::vector<WorldIndex> WorldSet::indices() const {
  std::vector<WorldIndex> out;
  out.reserve(count());
  for_each([&](WorldIndex w) { out.push_back(w); });
  return out;
}

WorldSpace WorldSpace::enumerate(HerbrandBase base, std::size_t atom_cap) {
  if (base.size() == 0) throw CapError("cannot enumerate worlds over an empty Herbrand base");
  if (base.size() > atom_cap)
    throw CapError("Herbrand base has " + std::to_string(base.size()) +
                   " atoms, exceeding the cap of " + std::to_string(atom_cap) +
                   "; 2^" + std::to_string(base.size()) +
                   " worlds would be enumerated (raise --max-atoms to override)");
  WorldSpace ws;
  ws.base_ = std::move(base);
  ws.count_ = std::uint64_t{1} << ws.base_.size();
  return ws;
}

bool WorldSpace::satisfies(WorldIndex w, const FormulaPtr& f) const {
  switch (f->kind()) {
    case FormulaKind::Bottom:
      return false;
    case FormulaKind::Top:
      return true;
    case FormulaKind::Atom: {
      GroundAtom a;
      a.predicate = f->predicate();
      for (const auto& t : f->args()) {
        if (t.kind == TermKind::Variable)
          throw GroundError("cannot evaluate non-ground formula " + render(f));
        a.args.push_back(t.name);
      }
      return world_contains(w, base_.position(a));
    }
    case FormulaKind::Not:
      return !satisfies(w, f->child());
    case FormulaKind::And:
      return satisfies(w, f->lhs()) && satisfies(w, f->rhs());
  }
  return false;
}

namespace {

// Bit j of a world index holds atom j, so the satisfying set of atom j is
// the periodic pattern with runs of 2^j set bits.
WorldSet atom_pattern(std::uint64_t world_count, std::size_t pos) {
  WorldSet out(world_count);
  const std::uint64_t period = std::uint64_t{1} << (pos + 1);
  const std::uint64_t half = std::uint64_t{1} << pos;
  for (std::uint64_t start = half; start < world_count; start += period)
    for (std::uint64_t w = start; w < start + half && w < world_count; ++w) out.set(w);
  return out;
}

}  // namespace

WorldSet WorldSpace::satisfying_set(const FormulaPtr& f) const {
  switch (f->kind()) {
    case FormulaKind::Bottom:
      return WorldSet(count_, false);
    case FormulaKind::Top:
      return WorldSet(count_, true);
    case FormulaKind::Atom: {
      GroundAtom a;
      a.predicate = f->predicate();
      for (const auto& t : f->args()) {
        if (t.kind == TermKind::Variable)
          throw GroundError("cannot evaluate non-ground formula " + render(f));
        a.args.push_back(t.name);
      }
      return atom_pattern(count_, base_.position(a));
    }
    case FormulaKind::Not:
      return satisfying_set(f->child()).complement();
    case FormulaKind::And:
      return satisfying_set(f->lhs()).intersect(satisfying_set(f->rhs()));
  }
  return WorldSet(count_, false);
}

std::string WorldSpace::render_world(WorldIndex w) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t j = 0; j < base_.size(); ++j) {
    if (!world_contains(w, j)) continue;
    if (!first) out += ", ";
    out += render(base_.atoms[j]);
    first = false;
  }
  out += "}";
  return out;
}

const WorldSet& SatCache::sats(const WorldSpace& space, const FormulaPtr& f) {
  const std::string key = render(f);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, space.satisfying_set(f)).first->second;
}

}  // namespace plover::worlds
