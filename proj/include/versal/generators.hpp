#ifndef VERSAL_GENERATORS_HPP
#define VERSAL_GENERATORS_HPP

#include <map>
#include <string>
#include <vector>

namespace versal {

/**
 * One free generator of the underlying graded-commutative algebra.
 *
 * Homological degree hdeg is always -level: 0 for the coordinate variables,
 * -1 for the generators killing the ideal, and so on down.  The weight is a
 * positive integer; parity (odd/even) is the parity of hdeg.
 */
struct Generator {
  int id;
  std::string name;
  int hdeg;
  int weight;
  int level;
};

inline bool isOddDegree(int hdeg) { return hdeg % 2 != 0; }

/**
 * Append-only table of generators.  Ids are dense, assigned in creation
 * order, and creation order refines the level: every level-l generator has a
 * smaller id than every level-(l+1) generator.
 */
class GeneratorSet {
 public:
  /** Adds a generator and returns its id.  Weight must be positive. */
  int add(const std::string& name, int hdeg, int weight, int level);

  const Generator& operator[](int id) const { return gens_.at(id); }
  int size() const { return static_cast<int>(gens_.size()); }
  bool isOdd(int id) const { return isOddDegree(gens_.at(id).hdeg); }

  /** Id of the named generator, or -1 when absent. */
  int find(const std::string& name) const;

  /** Largest weight over all generators (0 when empty). */
  int maxWeight() const;

  /** Largest level over all generators (0 when empty). */
  int maxLevel() const;

  /** Ids of all generators at the given level, in id order. */
  std::vector<int> idsAtLevel(int level) const;

  /** Ids of all generators with level <= the bound, in id order. */
  std::vector<int> idsUpToLevel(int level) const;

  /** Ids of every generator, in id order. */
  std::vector<int> allIds() const;

  const std::vector<Generator>& all() const { return gens_; }

 private:
  std::vector<Generator> gens_;
  std::map<std::string, int> byName_;
};

}  // namespace versal

#endif  // VERSAL_GENERATORS_HPP
