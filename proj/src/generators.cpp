#include "versal/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace versal {

int GeneratorSet::add(const std::string& name, int hdeg, int weight,
                      int level) {
  if (weight <= 0)
    throw std::invalid_argument("generator '" + name +
                                "' must have positive weight");
  if (byName_.count(name))
    throw std::invalid_argument("duplicate generator name '" + name + "'");
  int id = static_cast<int>(gens_.size());
  gens_.push_back(Generator{id, name, hdeg, weight, level});
  byName_[name] = id;
  return id;
}

int GeneratorSet::find(const std::string& name) const {
  auto it = byName_.find(name);
  return it == byName_.end() ? -1 : it->second;
}

int GeneratorSet::maxWeight() const {
  int w = 0;
  for (const Generator& g : gens_) w = std::max(w, g.weight);
  return w;
}

int GeneratorSet::maxLevel() const {
  int l = 0;
  for (const Generator& g : gens_) l = std::max(l, g.level);
  return l;
}

std::vector<int> GeneratorSet::idsAtLevel(int level) const {
  std::vector<int> ids;
  for (const Generator& g : gens_)
    if (g.level == level) ids.push_back(g.id);
  return ids;
}

std::vector<int> GeneratorSet::idsUpToLevel(int level) const {
  std::vector<int> ids;
  for (const Generator& g : gens_)
    if (g.level <= level) ids.push_back(g.id);
  return ids;
}

std::vector<int> GeneratorSet::allIds() const {
  std::vector<int> ids(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) ids[i] = static_cast<int>(i);
  return ids;
}

}  // namespace versal
