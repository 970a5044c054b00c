#pragma once

#include "hfsplit/schemes_fwd.hpp"

#include <vector>

namespace hfsplit {

// Catalog: lie_trotter, lie_trotter_adjoint, strang_aba, strang_bab,
// srkn6_4, ni4_82, ni5_84.  Throws ValidationError on unknown names.
SplittingScheme builtin_scheme(const std::string& name);

std::vector<std::string> builtin_scheme_names();

// BA composition obtained by reversing the coefficient list.
SplittingScheme adjoint_of(const SplittingScheme& s);

// Structural report: consistency sums, palindromicity, FSAL eligibility.
struct SchemeReport {
    double sum_a = 0.0;
    double sum_b = 0.0;
    bool consistent = false; // |sum-1| <= 1e-14 for both
    bool palindromic = false;
    bool fsal_eligible = false; // leading or trailing coefficient is zero
    bool all_coefficients_positive = false;
    double max_abs_a = 0.0;
    std::vector<std::string> findings; // empty when everything checks out
};

SchemeReport validate(const SplittingScheme& s);

// The coefficient printed for the 4-stage (8,2) method's central kick
// weight is ambiguous across sources; both candidates are exposed so the
// order harness can discriminate.  builtin_scheme ships the value that
// passes positivity and the (8,2) error-scaling test.
SplittingScheme ni4_82_with_b2(double b2);
inline constexpr double ni4_b2_candidate_large = 49.0 / 18.0;
inline constexpr double ni4_b2_candidate_small = 49.0 / 180.0;

} // namespace hfsplit
