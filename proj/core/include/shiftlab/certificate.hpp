#pragma once

#include <string>
#include <vector>

#include "shiftlab/budget.hpp"
#include "shiftlab/subshift.hpp"
#include "shiftlab/tmp.hpp"

namespace shiftlab {

/// Self-contained JSON-line certificates.  Each line embeds the normalized
/// spec, its hash, the admissibility level, a typed payload, and an
/// integrity digest over all of it; `verify_certificate_line` recomputes the
/// digest and re-checks the payload semantically against the spec.
std::string tmp_counterexample_line(const Subshift& shift, const Level& level,
                                    const FiniteSubset& a,
                                    const FiniteSubset& b,
                                    const FiniteSubset& window,
                                    const TmpCounterexample& ce);

std::string pair_witness_line(const Subshift& shift, const PairWitness& w);

std::string homoclinic_witness_line(const Subshift& shift, Symbol background,
                                    int radius, int margin,
                                    const Pattern& witness);

std::string independence_set_line(const Subshift& shift, const Level& level,
                                  const std::vector<Pattern>& cylinders,
                                  const FiniteSubset& f,
                                  const FiniteSubset& best);

struct VerifyResult {
  bool ok = false;
  std::string detail;
};

VerifyResult verify_certificate_line(const std::string& line,
                                     const BudgetConfig& budget = {});

}  // namespace shiftlab
