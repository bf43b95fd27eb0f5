#pragma once

#include "cgroup_verify.hpp"

#include <array>

namespace ht {

enum class FTMethod { None, Trivial, VertexCertificate, CosetRepAnalysis };
std::string to_string(FTMethod m);

enum class EvidenceStatus { Empty, NonEmpty, Unresolved };
std::string to_string(EvidenceStatus s);

// Status of G_i cap alpha*G_k for one left coset representative alpha of G_jk in G_j.
struct TripleEvidence {
  Word alpha;    // global generator indices, left to right
  Word reduced;  // alpha with its longest prefix lying in G_i removed
  EvidenceStatus status = EvidenceStatus::Unresolved;
  std::optional<Point> x;        // Empty: xG_i and (x alpha)G_k are disjoint
  std::optional<Point> x_alpha;
  bool by_exhaustion = false;    // Empty because a complete search found no element
  std::optional<Perm> witness;   // NonEmpty: an element of G_i cap alpha*G_k
};

struct FTTripleResult {
  TypeMask J = 0;
  int i = 0, j = 0, k = 0;  // ordering that decided the verdict
  Verdict verdict = Verdict::Inconclusive;
  FTMethod method = FTMethod::None;
  std::optional<Point> witness;
  BigInt o, s_i;                   // |xG_i cap xG_jG_k|, |stab_{G_i}(x)|
  BigInt g_ij, g_ik, g_ijk, bound;  // bound = |G_ij||G_ik|/|G_ijk|
  std::vector<TripleEvidence> evidence;
  std::size_t nonempty = 0;
  std::vector<std::array<int, 3>> tried;
  std::string note;
};

struct FTReport {
  Verdict overall = Verdict::Pass;
  std::vector<FTTripleResult> triples;  // residues of rank >= 3, smaller first
};

struct FTOptions {
  std::uint64_t enumeration_cap = 100'000;
  std::uint64_t witness_trials = 1'000'000;
  std::uint64_t seed = 0x5EED;
  std::uint64_t transversal_cap = 1'000'000;
  bool try_certificates = true;
  bool try_cosetrep = true;
};

struct FTVertexData {
  BigInt o, s_i, bound;
  bool ok = false;
};
FTVertexData ft_vertex_data(const TypedGroup& g, TypeMask J, int i, int j, int k, Point x);

// Scans vertices for the one ordering given.
FTTripleResult ft_triple_certificate(const TypedGroup& g, TypeMask J, int i, int j, int k, const FTOptions& o = {});
// Coset-representative analysis for the one ordering given.
FTTripleResult ft_triple_cosetrep(const TypedGroup& g, TypeMask J, int i, int j, int k, const FTOptions& o = {});
// All orderings of {a,b,c}: certificates first, then coset representatives.
FTTripleResult ft_subset(const TypedGroup& g, TypeMask J, std::array<int, 3> abc, const FTOptions& o = {});

FTReport verify_flag_transitive(const TypedGroup& g, const FTOptions& o = {});

nlohmann::json to_json(const FTTripleResult& r);
nlohmann::json to_json(const FTReport& r);

}  // namespace ht
