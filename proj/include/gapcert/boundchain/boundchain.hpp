#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapcert/exactnum/magnitude.hpp"
#include "gapcert/exactnum/rational.hpp"
#include "gapcert/gapsearch/gapsearch.hpp"

namespace gapcert {

struct LowerTag {};
struct UpperTag {};

/// A magnitude known to bound a quantity from one side. The direction lives
/// in the type, so feeding an upper bound where a lower bound is required
/// does not compile.
template <class Direction>
struct Certified {
  Magnitude value;
  std::vector<std::string> trace;
};

using Lower = Certified<LowerTag>;
using Upper = Certified<UpperTag>;

/// M_eps = floor(2/eps)^floor(128/eps^5) * (floor(2/eps) + 2), eps in (0, 2].
struct MValue {
  std::optional<BigInt> exact;
  Magnitude enclosure;
};
MValue m_of_epsilon(const Rational& eps, Precision prec = {});

/// Upper bound on M_eps valid for every eps >= the given lower bound:
/// (2T)^(128 T^5) (2T + 2) with T = 1/eps_lower.
Upper m_upper(const Lower& eps_lower, Precision prec = {});

constexpr unsigned long kAlphaExactBudget = 3;

enum class Direction { LowerBound, UpperBound, Exact };
std::string to_string(Direction d);

struct BoundCheck {
  std::string claim;
  CompareOutcome expected = CompareOutcome::GT;
  CompareOutcome outcome = CompareOutcome::Inconclusive;
  bool certified() const { return outcome == expected; }
};

struct BoundReport {
  std::string quantity;
  unsigned long p = 0;
  Direction direction = Direction::LowerBound;
  std::optional<Rational> exact_value;
  Magnitude value;
  std::vector<std::string> trace;
  std::vector<BoundCheck> checks;

  bool all_certified() const;
  bool any_inconclusive() const;
};

/// alpha(p, 2) = epsilon_2(p, 3), exact by search for p <= budget; otherwise
/// the Sylvester lower bound 1/S_{(3p+1)p+2}.
BoundReport alpha_exact_first(unsigned long p, unsigned long budget = kAlphaExactBudget,
                              Precision prec = {});

/// Lower bound on alpha(p, eps) for every eps >= eps_lower, p >= 2.
Lower alpha_lower(unsigned long p, const Lower& eps_lower, Precision prec = {});

/// l(p) = ceil(p/beta) <= p/beta_lower + 1.
Upper l_upper_from(unsigned long p, const Lower& beta, Precision prec = {});

/// upsilon = 1/(l (2l)^(128 l^5 + 4 l)) is decreasing in l.
Lower upsilon_lower_from(const Upper& l, Precision prec = {});

/// ceil(p / beta) for an exact beta.
BigInt l_of_exact_beta(unsigned long p, const Rational& beta);

BoundReport beta_lower(unsigned long p, Precision prec = {});
BoundReport l_upper(unsigned long p, Precision prec = {});
BoundReport upsilon_lower(unsigned long p, Precision prec = {});

/// The three tower-form comparisons for one p, computed from a single chain.
struct BetaSuite {
  BoundReport beta;
  BoundReport l;
  BoundReport upsilon;
};
BetaSuite beta_suite(unsigned long p, Precision prec = {});

enum class InstanceStatus { Checked, Skipped };

struct EstimationInstance {
  InstanceStatus status = InstanceStatus::Skipped;
  CompareOutcome m_vs_power = CompareOutcome::Inconclusive;  // expect LT
  CompareOutcome alpha_vs_tower = CompareOutcome::Inconclusive;  // expect GT
  bool passed() const;
};

/// For each q >= 2^(2^(12 p^2)): M_{1/q} < q^(q^6) and the alpha lower bound
/// at eps = 1/q exceeds 1/((2 up)^4 q).
std::vector<EstimationInstance> estimation_lemma_audit(unsigned long p,
                                                       const std::vector<Magnitude>& qs,
                                                       Precision prec = {});

}  // namespace gapcert
