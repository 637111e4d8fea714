#include "thhkit/thh.hpp"

#include "thhkit/basis.hpp"
#include "thhkit/errors.hpp"
#include "thhkit/parallel.hpp"

namespace thhkit {

std::string to_string(Provenance p) { return p == Provenance::ExternalLiterature ? "external-literature" : "user"; }

std::string to_string(KunnethFlag f) {
  return f == KunnethFlag::SplitDetermined ? "split-determined" : "extension-ambiguous";
}

void THHTable::validate() const {
  if (cap < 0) throw MathError("InvalidTable", "THH table cap must be >= 0");
  if (values.size() != static_cast<std::size_t>(cap) + 1)
    throw MathError("InvalidTable", "THH table must list every degree 0.." + std::to_string(cap));
  const bool field = ring.is_field();
  for (const auto& v : values)
    if (v.over_field != field) throw MathError("InvalidTable", "THH table values do not match the ground ring");
  const GradedValue r0 = field ? GradedValue::of_dimension(1) : GradedValue::of_group(FgAbelianGroup::free(1));
  if (ring.is_integers() || field) {
    if (values[0] != r0) throw MathError("InvalidTable", "THH table must be " + ring.name() + " in degree 0");
  }
}

THHTable thh_hz_table(int cap) {
  THHTable t;
  t.ring = Ring::integers();
  t.cap = cap;
  t.provenance = Provenance::ExternalLiterature;
  t.note = "Bokstedt: THH_*(HZ) = Z in degree 0, Z/k in degree 2k-1, zero otherwise";
  for (int d = 0; d <= cap; ++d) {
    if (d == 0)
      t.values.push_back(GradedValue::of_group(FgAbelianGroup::free(1)));
    else if (d % 2 == 1)
      t.values.push_back(GradedValue::of_group(FgAbelianGroup::from_cyclic({mpz_class((d + 1) / 2)})));
    else
      t.values.push_back(GradedValue::of_group({}));
  }
  return t;
}

THHTable thh_hfp_table(unsigned long p, int cap) {
  THHTable t;
  t.ring = Ring::fp(p);
  t.cap = cap;
  t.provenance = Provenance::ExternalLiterature;
  t.note = "Bokstedt: THH_*(HF_p) = F_p[u] with |u| = 2";
  for (int d = 0; d <= cap; ++d) t.values.push_back(GradedValue::of_dimension(d % 2 == 0 ? 1 : 0));
  return t;
}

KunnethResult thh_groups(const GradedModuleResult& hh, const Ring& hh_ring, const THHTable& t, int degree_cap,
                         const std::string& certification) {
  if (certification.empty())
    throw MathError("NotCertified", "the extension hypothesis is neither certified by a monoid basis nor overridden");
  if (t.ring != hh_ring) throw MathError("RingMismatch", "THH table is over " + t.ring.name() + ", input over " + hh_ring.name());
  if (!hh_ring.is_field() && !hh_ring.is_integers())
    throw MathError("NotSupported", "Kunneth over " + hh_ring.name() + " is not supported");
  if (t.cap < degree_cap || hh.degree_cap < degree_cap)
    throw MathError("CapTooSmall", "inputs are only known through degree " + std::to_string(std::min(t.cap, hh.degree_cap)));
  t.validate();
  KunnethResult r;
  r.ring = hh_ring;
  r.degree_cap = degree_cap;
  r.hh_exactness = hh.exactness;
  r.certification = certification;
  // free_through[n]: every piece in degrees 0..n is free.
  std::vector<bool> t_free(static_cast<std::size_t>(degree_cap) + 1), hh_free(t_free.size());
  for (std::size_t d = 0; d < t_free.size(); ++d) {
    t_free[d] = (d == 0 || t_free[d - 1]) && t.values[d].group.is_free();
    hh_free[d] = (d == 0 || hh_free[d - 1]) && hh.values[d].group.is_free();
  }
  r.degrees.resize(static_cast<std::size_t>(degree_cap) + 1);
  parallel_for(r.degrees.size(), [&](std::size_t un) {
    const int n = static_cast<int>(un);
    KunnethDegree& k = r.degrees[un];
    k.degree = n;
    if (hh_ring.is_field()) {
      std::size_t dim = 0;
      for (int i = 0; i <= n; ++i)
        dim += t.values[static_cast<std::size_t>(i)].dimension * hh.values[static_cast<std::size_t>(n - i)].dimension;
      k.tensor_part = GradedValue::of_dimension(dim);
      return;
    }
    FgAbelianGroup tensor_part, tor_part;
    for (int i = 0; i <= n; ++i)
      tensor_part = tensor_part + tensor_fg(t.values[static_cast<std::size_t>(i)].group,
                                            hh.values[static_cast<std::size_t>(n - i)].group);
    for (int i = 0; i <= n - 1; ++i)
      tor_part = tor_part + tor_fg(t.values[static_cast<std::size_t>(i)].group,
                                   hh.values[static_cast<std::size_t>(n - 1 - i)].group);
    k.tensor_part = GradedValue::of_group(tensor_part);
    k.tor_part = tor_part;
    k.flag = (t_free[un] || hh_free[un]) ? KunnethFlag::SplitDetermined : KunnethFlag::ExtensionAmbiguous;
  });
  return r;
}

namespace {

std::string describe_basis(const MonoidBasis& b) {
  std::string s = "monoid basis {";
  for (std::size_t i = 0; i < b.elements.size(); ++i) s += (i ? ", " : "") + b.elements[i].name;
  return s + "}";
}

}  // namespace

KunnethResult thh_of_table(const RingTable& x, const THHTable& t, int degree_cap, bool override_certification) {
  std::string cert;
  auto found = search_monoid_basis(x);
  if (found.basis)
    cert = describe_basis(*found.basis);
  else if (override_certification)
    cert = "extension hypothesis assumed by override";
  return thh_groups(hh(x, degree_cap), x.ring(), t, degree_cap, cert);
}

KunnethResult thh_of_dga(const DGA& x, const THHTable& t, int degree_cap, bool formal, bool override_certification) {
  std::string cert;
  if (formal) {
    auto found = search_monoid_basis(homology_ring(x));
    if (found.basis) cert = "formal, homology has " + describe_basis(*found.basis);
  }
  if (cert.empty() && override_certification) cert = "extension hypothesis assumed by override";
  return thh_groups(hh_dga(x, degree_cap), x.ring(), t, degree_cap, cert);
}

}  // namespace thhkit
