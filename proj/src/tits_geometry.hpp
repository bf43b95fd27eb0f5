#pragma once

#include "cgroup_verify.hpp"

#include <string>
#include <vector>

namespace ht {

// Typed elements 0..count[i]-1 per type i; element 0 of each type belongs to the base chamber.
class IncidenceSystem {
 public:
  IncidenceSystem() = default;
  explicit IncidenceSystem(std::vector<std::size_t> counts);

  int rank() const { return static_cast<int>(count_.size()); }
  std::size_t count(int type) const { return count_[static_cast<std::size_t>(type)]; }
  const std::vector<std::size_t>& counts() const { return count_; }

  // Symmetric; call finalize() before queries.
  void add_incidence(int i, std::uint32_t a, int j, std::uint32_t b);
  void finalize();
  bool incident(int i, std::uint32_t a, int j, std::uint32_t b) const;
  // Elements of type j incident to element a of type i, ascending.
  const std::vector<std::uint32_t>& neighbours(int i, std::uint32_t a, int j) const;
  std::size_t incidence_pairs() const;

 private:
  std::vector<std::size_t> count_;
  // inc_[i][j][a]
  std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> inc_;
};

// A flag as one element per type, or -1 where the type is absent.
using Flag = std::vector<std::int64_t>;

struct GeometryCapExceeded : Error {
  GeometryCapExceeded(const std::string& w, std::vector<BigInt> idx) : Error(w), indices(std::move(idx)) {}
  std::vector<BigInt> indices;
};

// Indices |G|/|G_i| from orders alone.
std::vector<BigInt> geometry_indices(const TypedGroup& g);
// Elements are right cosets G_i g; G_i g1 and G_j g2 are incident iff they intersect.
IncidenceSystem build_geometry(const TypedGroup& g, std::uint64_t cap = 1'000'000);

struct ChamberResult {
  std::uint64_t count = 0;
  bool complete = true;        // false when the cap stopped enumeration
  std::vector<Flag> chambers;  // stored only up to store_limit
};
ChamberResult enumerate_chambers(const IncidenceSystem& s, std::uint64_t cap = 10'000'000,
                                 std::size_t store_limit = 0);

struct AuditReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;  // first few offending flags
};
// Every corank-1 flag lies in exactly two chambers.
AuditReport check_thin(const IncidenceSystem& s);
// Every flag of corank >= 2 has a connected residue (including the empty flag).
AuditReport check_residually_connected(const IncidenceSystem& s);

std::string flag_string(const Flag& f);
nlohmann::json to_json(const IncidenceSystem& s);
std::string to_dot(const IncidenceSystem& s, const std::string& name = "Gamma");

}  // namespace ht
