#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thhkit/algebra.hpp"
#include "thhkit/basis.hpp"
#include "thhkit/dga.hpp"
#include "thhkit/table.hpp"

namespace thhkit {

enum class VerdictStatus { Unsolvable, SolvableWitness, Incomplete };
std::string to_string(VerdictStatus s);

enum class ObstructionProblem { SquareP2, SquareP2Control, BocksteinQ1, BocksteinQ1Control };
std::string to_string(ObstructionProblem p);

/// One element of the finite search space and what it evaluates to.
struct Candidate {
  std::vector<long> coords;  // coefficients on the degree-1 basis of the ambient ring
  std::string element;
  std::string image;         // z^2 or βQ^1 z
  bool solves = false;
  std::string refutation;    // empty when solves
};

struct Verdict {
  ObstructionProblem problem = ObstructionProblem::SquareP2;
  VerdictStatus status = VerdictStatus::Incomplete;
  unsigned long p = 2;
  int cap = 0;
  std::string equation;      // e.g. "z^2 = xi1sq⊗1"
  std::string search_space;  // degrees, dimensions, enumeration count
  std::vector<std::string> basis;  // degree-1 basis the coordinates refer to
  std::vector<Candidate> candidates;
  std::optional<std::string> witness;
  std::string symbolic_certificate;
  std::vector<std::string> assumptions;
};

/// Largest search space enumerated before a verdict becomes Incomplete.
inline constexpr unsigned long kMaxCandidates = 1UL << 20;

/// Is there z of degree 1 in HF_2_*HZ ⊗ B with z^2 = xi1sq ⊗ 1? B is an
/// F_2 table known through degree >= 2. Throws MathError("CapTooSmall").
Verdict square_obstruction_p2(const RingTable& b, int cap);
/// The same equation in A_* ⊗ B (xi presentation), where z = xi1 ⊗ 1 works.
Verdict square_obstruction_p2_control(const RingTable& b, int cap);

/// Is there z of degree 1 in HF_p_*HZ ⊗ B with βQ^1 z = xi1 ⊗ 1 (odd p)?
/// Only the degree-1 part of B enters; its operations stay symbolic.
/// Throws MathError("CapTooSmall") when cap < 2p - 2.
Verdict bockstein_q1_obstruction(unsigned long p, const RingTable& b, int cap);
/// The same equation in A_* ⊗ B (zeta presentation), where z = tau0 ⊗ 1 works.
Verdict bockstein_q1_obstruction_control(unsigned long p, const RingTable& b, int cap);

/// Re-evaluates every recorded candidate against B and compares with the
/// stored images and refutations. False on any mismatch.
bool replay(const Verdict& v, const RingTable& b);

/// A choice of image 1⊗x + Σ c a⊗h for each designated generator x.
struct UnitMapCandidate {
  std::vector<std::pair<std::string, std::string>> assignment;  // generator -> rendered image
};

struct ForcedMapResult {
  unsigned long p = 2;
  int cap = 0;
  std::vector<std::string> designated;
  unsigned long enumerated = 0;
  bool complete = true;
  std::vector<std::string> relations;            // checked, rendered "lhs = rhs"
  std::vector<std::string> unchecked_relations;  // above the cap
  std::vector<UnitMapCandidate> survivors;
};

/// Relations implied by generator kinds (x^h = 0, x^2 = 0) plus the
/// presentation's own rewrite rules.
std::vector<Relation> presentation_relations(const Presentation& p);

/// Enumerates images i(x) = 1⊗x + Σ c a⊗h in A_* ⊗ H (xi presentation,
/// |a| > 0, c in F_p) for each designated generator, other generators
/// mapping to 1⊗g, and keeps the assignments under which every relation
/// holds after multiplying out.
ForcedMapResult forced_unit_map(const std::shared_ptr<const Algebra>& h, const std::vector<std::string>& designated,
                                const std::vector<Relation>& relations, int cap,
                                unsigned long budget = kMaxCandidates);

enum class ExtensionVerdict { CertifiedExtension, CertifiedNonExtension, Unknown };
std::string to_string(ExtensionVerdict v);

struct GroundVerdict {
  Ring ground = Ring::integers();
  ExtensionVerdict verdict = ExtensionVerdict::Unknown;
  std::string reason;
  std::optional<MonoidBasis> basis;
  std::optional<Verdict> obstruction;
};

struct ExtensionOptions {
  bool formal = false;       // caller asserts X is formal
  bool e_infinity = false;   // caller asserts X is an E-infinity F_p-DGA (odd p route)
  unsigned long budget = 1000000;
};

/// Positive route over the DGA's own ring (monoid basis of the homology of a
/// formal X); negative route over Z for DGAs defined over F_p.
std::vector<GroundVerdict> extension_status(const DGA& x, int cap, const ExtensionOptions& opts);

}  // namespace thhkit
