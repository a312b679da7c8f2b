#pragma once

#include <string>
#include <vector>

#include "evenlat/isom.hpp"
#include "evenlat/modp.hpp"

namespace evenlat {

struct StabilityReport {
  std::string label;
  Signature signature;
  std::size_t length = 0;
  std::size_t rank = 0;
  bool stable = false;       // signature (2, n ≥ 1) and ℓ ≤ rank - 2
  bool very_stable = false;  // additionally n ≥ 2 and ℓ ≤ rank - 3
};

StabilityReport stability(const IntegralLattice& s);

struct ComponentConstants {
  bool bounded = false;
  std::size_t max_components = 0;  // connected components of the Shimura variety
  std::size_t s_to_m_degree = 0;   // degree (upper bound unless exact) of S -> M
  bool degree_exact = false;
  std::string note;
};

ComponentConstants component_constants(const StabilityReport& r);

enum class Target { S, M };
std::string to_string(Target t);

// 4 when ℓ(A_S) ≤ rank(S) - 5, which forces every corank-one T to be very
// stable, else 16; doubled for the M-quotient.
int covering_constant(const StabilityReport& r, Target target);

struct CertifiedSublattice {
  std::size_t id = 0;
  IndexPSublattice sub;
  PPart tag = PPart::Elementary;
  std::size_t length = 0;
  bool very_stable = false;
};

struct CoveringCertificate {
  StabilityReport stability;
  ComponentConstants components;
  Int n;
  Target target = Target::S;
  long p = 0;
  LineClassCount counts;
  Int bound;
  int constant = 0;
  std::string constant_reason;
  std::vector<CertifiedSublattice> sublattices;
  std::vector<std::string> assumptions;
};

// Refusal unless S is very stable of rank ≥ 5.
CoveringCertificate plan_covering(const IntegralLattice& s, const Int& n, Target target);

struct EdgeBound {
  Int bound;
  std::string source;  // "computed" or "cited"
  std::string detail;
};

struct TriangleDatum {
  long p = 0;
  IndexPSublattice s_prime;
  IntMatrix f;        // T -> S, rows in S coordinates
  IntMatrix f_prime;  // T -> S', rows in S' coordinates
  IntMatrix pi;       // S' -> S, rows in S coordinates
  bool commutes = false;
  Int saturation_index;  // of T in S'
  std::size_t admissible = 0;
  EdgeBound f_bound, f_prime_bound, pi_bound;
};

// T primitive of corank one in S; picks the lexicographically smallest
// index-p S' containing T.
TriangleDatum build_triangle(const Embedding& t_in_s, long p, std::size_t budget);

// x ∈ S' <=> alpha·x ≡ 0 mod p, recovered from a Smith form of the basis.
std::vector<long> functional_from_sublattice(const IntMatrix& basis, long p);

struct BrauerPair {
  IndexPSublattice sub;
  std::vector<long> alpha;      // the line in Hom(S, Z/p)
  std::vector<long> recovered;  // functional_from_sublattice(sub.basis)
};

std::vector<BrauerPair> sublattice_brauer_bijection(const IntegralLattice& s, long p);

}  // namespace evenlat
