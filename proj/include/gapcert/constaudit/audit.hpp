#pragma once

#include <string>
#include <vector>

#include "gapcert/constaudit/const_expr.hpp"
#include "gapcert/exactnum/dyadic.hpp"
#include "gapcert/exactnum/magnitude.hpp"

namespace gapcert {

enum class Verdict { Verified, Falsified, Inconclusive };
enum class AuditMethod { ExactNormalForm, MagnitudeCompare };
std::string to_string(Verdict v);
std::string to_string(AuditMethod m);

struct AuditResult {
  std::string claim;
  Verdict verdict = Verdict::Inconclusive;
  AuditMethod method = AuditMethod::ExactNormalForm;
  std::string evidence;
  Verdict expected = Verdict::Verified;  // negative controls expect Falsified

  bool as_expected() const { return verdict == expected; }
};

/// Equality of two expressions through their prime-exponent normal forms.
AuditResult verify_normal_form_identity(const std::string& claim, const std::string& lhs,
                                        const std::string& rhs);

/// 2*84^(256*42^5+338) = 8*(42*84^(128*42^5+168))^2, plus the coefficient
/// identity 2*84^2 = 8*42^2 and a perturbed negative control.
std::vector<AuditResult> verify_identity_I0();
AuditResult verify_identity_I0_main();

/// 84^(384*42^5+507) = I0 * I1, plus a perturbed negative control.
std::vector<AuditResult> verify_volume_decomposition();

struct LcmRow {
  unsigned long q = 1;
  BigInt ng_bound;  // max{6, q (q(q+1))!}
  BigInt lcm;
};
std::vector<LcmRow> lcm_table();

/// The ordering chain of complement bounds and the lcm table maximum.
std::vector<AuditResult> verify_orderings(Precision prec = {});

/// Enclosure of log10(log10 x) for x > 10.
Interval log10_log10(const Magnitude& x, Precision prec = {});

/// log10 log10 V0 in (11.40, 11.42) with width < 0.01; the second entry is
/// the negative control on the non-exceptional complement bound.
std::vector<AuditResult> verify_V0_approximation(Precision prec = {});

/// (2/eps)^floor(128/eps^5) for 3 eps^2 < 1.
ConstExprPtr surface_index_bound(const Rational& eps);

std::vector<AuditResult> verify_threefold_delta_chain(Precision prec = {});

/// Every constant audit above, in a fixed order.
std::vector<AuditResult> audit_constants(Precision prec = {});

}  // namespace gapcert
