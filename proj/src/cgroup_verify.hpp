#pragma once

#include "coset_enum.hpp"
#include "cpr_graph.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace ht {

// Bit i set means generator i belongs to the subset.
using TypeMask = std::uint32_t;

inline TypeMask full_mask(int rank) { return rank >= 32 ? ~TypeMask{0} : (TypeMask{1} << rank) - 1; }
std::vector<int> mask_members(TypeMask m);
std::string mask_string(TypeMask m);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);
// Pass < Inconclusive < Fail
Verdict combine(Verdict a, Verdict b);

// Group with distinguished involutions rho_0..rho_{n-1} and memoized parabolics.
class TypedGroup {
 public:
  TypedGroup() = default;
  explicit TypedGroup(Group g);

  int rank() const { return static_cast<int>(group_.generators().size()); }
  std::size_t degree() const { return group_.degree(); }
  const Group& group() const { return group_; }
  const Perm& generator(int i) const { return group_.generators()[static_cast<std::size_t>(i)]; }

  // G_J generated by the rho_j with j in J (generators in index order).
  Group parabolic(TypeMask J) const;
  BigInt parabolic_order(TypeMask J) const { return parabolic(J).order(); }
  // Orbit index per point under G_J.
  std::shared_ptr<const std::vector<std::uint32_t>> orbit_ids(TypeMask J) const;

 private:
  Group group_;
  struct Memo {
    std::mutex mu;
    std::map<TypeMask, Group> groups;
    std::map<TypeMask, std::shared_ptr<const std::vector<std::uint32_t>>> orbits;
  };
  std::shared_ptr<Memo> memo_;
};

struct PairOrder {
  int i = 0, j = 0;
  int expected = 0;
  BigInt actual;
};

struct RelationsReport {
  bool ok = true;
  std::vector<PairOrder> pairs;       // i < j
  std::vector<std::string> failures;  // human readable
};

RelationsReport check_relations(const TypedGroup& g, const CoxeterMatrix& m);

enum class IPMethod { None, GcdCertificate, CountingCertificate, ExactIntersection };
std::string to_string(IPMethod m);

// One pair {i,j} inside the residue of type J: A = G_{J-i}, B = G_{J-j}.
struct IPPairResult {
  TypeMask J = 0;
  int i = 0, j = 0;
  Verdict verdict = Verdict::Inconclusive;
  IPMethod method = IPMethod::None;
  std::optional<Point> witness;
  BigInt orbit_intersection;  // |xA cap xB|
  BigInt s_i, s_j;            // |stab_A(x)|, |stab_B(x)|
  BigInt stab_intersection;   // gcd or exact, as used by the method
  BigInt parabolic_order;     // |G_{J-i-j}|
  BigInt intersection_order;  // exact |A cap B| when computed
  std::uint64_t nodes = 0;
};

struct IPReport {
  Verdict overall = Verdict::Pass;
  std::vector<IPPairResult> pairs;  // all residues of rank >= 2, largest first
};

struct IPOptions {
  std::uint64_t node_budget = 10'000'000;
  bool try_certificates = true;
  // Stop scanning counting certificates after this many vertices.
  std::size_t counting_scan_limit = 256;
};

// Values of the two certificates at a given vertex.
struct IPVertexData {
  BigInt orbit_intersection, s_i, s_j, gcd;
  bool gcd_ok = false;
};
IPVertexData ip_vertex_data(const TypedGroup& g, TypeMask J, int i, int j, Point x);

// Certificate scan only; Inconclusive when no vertex works.
IPPairResult ip_pair_certificate(const TypedGroup& g, TypeMask J, int i, int j, const IPOptions& o = {});
// Certificates then the exact intersection.
IPPairResult ip_pair(const TypedGroup& g, TypeMask J, int i, int j, const IPOptions& o = {});

IPReport verify_intersection_property(const TypedGroup& g, const IPOptions& o = {});

nlohmann::json to_json(const RelationsReport& r);
nlohmann::json to_json(const IPPairResult& r);
nlohmann::json to_json(const IPReport& r);

}  // namespace ht
