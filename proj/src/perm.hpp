#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ht {

using BigInt = boost::multiprecision::cpp_int;
using Point = std::uint32_t;
using Word = std::vector<int>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Right action: x^(pq) = (x^p)^q.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);  // identity
  explicit Perm(std::vector<Point> images);
  // Skips the bijection check; for internal products of valid permutations.
  struct Trusted {};
  Perm(std::vector<Point> images, Trusted) : img_(std::move(images)) {}

  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  Point operator[](Point x) const { return img_[x]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  // Smallest moved point, or nullopt for the identity.
  std::optional<Point> first_moved() const;

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

// compose(p, q) maps x to q(p(x)).
Perm compose(const Perm& p, const Perm& q);
BigInt element_order(const Perm& p);

// Base and strong generating set, one level per base point.
// Transversals are stored as Schreier vectors over the level generators.
struct ChainLevel {
  Point base = 0;
  std::vector<Perm> gens;
  std::vector<Perm> inv_gens;
  std::vector<Point> orbit;         // BFS order, orbit[0] == base
  std::vector<std::int32_t> sv;     // -1 not in orbit, -2 base, else index into gens
};

class StabilizerChain {
 public:
  StabilizerChain() = default;
  StabilizerChain(std::size_t degree, const std::vector<Perm>& gens,
                  const std::vector<Point>& base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  std::vector<Point> base() const;
  BigInt order() const;

  bool in_orbit(std::size_t level, Point p) const;
  // u with base^u == p
  Perm transversal(std::size_t level, Point p) const;
  // Replaces g by g * u_p^{-1} where p = base^g.
  void strip_level(std::size_t level, std::vector<Point>& g, std::vector<Point>& tmp) const;
  // Sifts g from the given level; returns the level where it stopped (size() if it went through).
  std::size_t sift(std::vector<Point>& g, std::size_t from = 0) const;
  bool contains(const Perm& p) const;

  // Chain of the pointwise stabilizer of the first k base points.
  StabilizerChain tail(std::size_t k) const;

 private:
  void build(const std::vector<Perm>& gens, const std::vector<Point>& base_prefix);
  void extend_orbit(ChainLevel& lv, std::size_t new_gen) const;

  std::size_t degree_ = 0;
  std::vector<ChainLevel> levels_;
};

class Group {
 public:
  Group() = default;
  Group(std::size_t degree, std::vector<Perm> gens, std::vector<std::string> labels = {});
  Group(std::size_t degree, std::vector<Perm> gens, StabilizerChain chain);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const StabilizerChain& chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Perm& p) const;
  std::vector<Point> orbit(Point x) const;
  // Orbit index per point; orbits numbered by smallest member.
  std::vector<std::uint32_t> orbit_ids() const;
  Group point_stabilizer(Point x) const;
  Perm evaluate_word(const Word& w) const;
  bool is_trivial() const;

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<std::string> labels_;
  struct Lazy;
  std::shared_ptr<Lazy> lazy_;
};

enum class Outcome { Done, BudgetExhausted };

struct IntersectionResult {
  Outcome outcome = Outcome::Done;
  Group group;                 // valid when outcome == Done
  BigInt order;                // exact when Done
  std::uint64_t nodes = 0;
};

IntersectionResult subgroup_intersection(const Group& a, const Group& b,
                                         std::uint64_t node_budget = 10'000'000);

struct TransversalEntry {
  Perm rep;
  Word word;
};

// Right-coset representatives of h in g (cosets h*r), breadth-first over
// generator words; throws CapExceeded when the index exceeds cap.
struct CapExceeded : Error {
  CapExceeded(const std::string& what, std::uint64_t partial) : Error(what), partial_count(partial) {}
  std::uint64_t partial_count;
};
std::vector<TransversalEntry> coset_transversal_words(const Group& g, const Group& h,
                                                      std::uint64_t cap = 1'000'000);
std::vector<Perm> coset_transversal(const Group& g, const Group& h, std::uint64_t cap = 1'000'000);

// Canonical element of the right coset h*x, constant on each coset.
Perm canonical_right_coset(const StabilizerChain& h, const Perm& x);

// Calls f on every element of g; stops early when f returns false.
// Returns false if stopped early.
template <class F>
bool for_each_element(const Group& g, F&& f);

// Implementation detail for for_each_element.
bool for_each_element_impl(const StabilizerChain& c, const std::function<bool(const Perm&)>& f);

template <class F>
bool for_each_element(const Group& g, F&& f) {
  return for_each_element_impl(g.chain(), std::function<bool(const Perm&)>(std::forward<F>(f)));
}

}  // namespace ht
