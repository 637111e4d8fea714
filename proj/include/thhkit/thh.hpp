#pragma once

#include <string>
#include <vector>

#include "thhkit/dga.hpp"
#include "thhkit/hochschild.hpp"
#include "thhkit/table.hpp"

namespace thhkit {

enum class Provenance { ExternalLiterature, User };
std::string to_string(Provenance p);  // "external-literature" / "user"

/// Coefficients THH_*(HR) through a cap, with the source of the numbers.
struct THHTable {
  Ring ring = Ring::integers();
  int cap = 0;
  std::vector<GradedValue> values;  // index = degree 0..cap
  Provenance provenance = Provenance::User;
  std::string note;

  /// Degree 0 must be R itself; throws MathError("InvalidTable").
  void validate() const;
  bool operator==(const THHTable&) const = default;
};

/// Standard values (Bökstedt): THH_*(HZ) is Z in degree 0 and Z/k in
/// degree 2k-1; THH_*(HF_p) is F_p in every even degree.
THHTable thh_hz_table(int cap);
THHTable thh_hfp_table(unsigned long p, int cap);

enum class KunnethFlag { SplitDetermined, ExtensionAmbiguous };
std::string to_string(KunnethFlag f);

struct KunnethDegree {
  int degree = 0;
  GradedValue tensor_part;
  FgAbelianGroup tor_part;
  KunnethFlag flag = KunnethFlag::SplitDetermined;
};

struct KunnethResult {
  Ring ring = Ring::integers();
  int degree_cap = 0;
  Exactness hh_exactness = Exactness::Exact;
  std::string certification;  // how the extension hypothesis was met
  std::vector<KunnethDegree> degrees;
};

/// Künneth combination of THH_*(HR) with HH^R through degree_cap.
/// `certification` must be non-empty (a certificate or an explicit
/// override); otherwise MathError("NotCertified").
KunnethResult thh_groups(const GradedModuleResult& hh, const Ring& hh_ring, const THHTable& t, int degree_cap,
                         const std::string& certification);

/// Convenience: certifies the table through a monoid basis search (or the
/// override), computes HH and combines.
KunnethResult thh_of_table(const RingTable& x, const THHTable& t, int degree_cap, bool override_certification);

/// Same for a DGA. The positive route needs formality asserted by the caller.
KunnethResult thh_of_dga(const DGA& x, const THHTable& t, int degree_cap, bool formal, bool override_certification);

}  // namespace thhkit
