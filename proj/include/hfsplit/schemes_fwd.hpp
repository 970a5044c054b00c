#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hfsplit {

// Composition coefficients in BAB layout: kicks b[0..m], drifts a[0..m-1],
// executed kick(b1 h), drift(a1 h), ..., drift(am h), kick(b_{m+1} h).
// ABA-layout methods are expressed with zero end kicks.
struct SplittingScheme {
    std::string name;
    std::vector<double> b; // size m+1
    std::vector<double> a; // size m
    int declared_order = 1;
    std::optional<std::pair<int, int>> effective_order; // (r,p)
    bool is_palindromic = false;
    double max_abs_a = 0.0;

    std::size_t stages() const { return a.size(); }
};

} // namespace hfsplit
