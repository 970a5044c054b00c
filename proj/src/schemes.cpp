#include "hfsplit/schemes.hpp"

#include "hfsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hfsplit {

namespace {

// Interleaved coefficient list b1,a1,b2,...,am,b_{m+1}.
std::vector<double> interleaved(const SplittingScheme& s) {
    std::vector<double> c;
    c.reserve(s.a.size() + s.b.size());
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        c.push_back(s.b[i]);
        c.push_back(s.a[i]);
    }
    c.push_back(s.b.back());
    return c;
}

SplittingScheme finish(SplittingScheme s) {
    const auto c = interleaved(s);
    auto r = c;
    std::reverse(r.begin(), r.end());
    s.is_palindromic = (c == r);
    s.max_abs_a = 0.0;
    for (double ai : s.a)
        s.max_abs_a = std::max(s.max_abs_a, std::abs(ai));
    return s;
}

} // namespace

SplittingScheme ni4_82_with_b2(double b2) {
    SplittingScheme s;
    s.name = "ni4_82";
    const double b1 = 1.0 / 20.0;
    const double b3 = 1.0 - 2.0 * (b1 + b2);
    const double a1 = 0.5 - std::sqrt(3.0 / 28.0);
    const double a2 = 0.5 - a1;
    s.b = {b1, b2, b3, b2, b1};
    s.a = {a1, a2, a2, a1};
    s.declared_order = 2;
    s.effective_order = std::pair<int, int>{8, 2};
    return finish(std::move(s));
}

SplittingScheme builtin_scheme(const std::string& name) {
    if (name == "lie_trotter") {
        SplittingScheme s;
        s.name = name;
        s.b = {1.0, 0.0};
        s.a = {1.0};
        s.declared_order = 1;
        return finish(std::move(s));
    }
    if (name == "lie_trotter_adjoint") {
        SplittingScheme s;
        s.name = name;
        s.b = {0.0, 1.0};
        s.a = {1.0};
        s.declared_order = 1;
        return finish(std::move(s));
    }
    if (name == "strang_bab") {
        SplittingScheme s;
        s.name = name;
        s.b = {0.5, 0.5};
        s.a = {1.0};
        s.declared_order = 2;
        return finish(std::move(s));
    }
    if (name == "strang_aba") {
        SplittingScheme s;
        s.name = name;
        s.b = {0.0, 1.0, 0.0};
        s.a = {0.5, 0.5};
        s.declared_order = 2;
        return finish(std::move(s));
    }
    if (name == "srkn6_4") {
        SplittingScheme s;
        s.name = name;
        const double b1 = 0.0829844064174052;
        const double b2 = 0.396309801498368;
        const double b3 = -0.0390563049223486;
        const double b4 = 1.0 - 2.0 * (b1 + b2 + b3);
        const double a1 = 0.245298957184271;
        const double a2 = 0.604872665711080;
        const double a3 = 0.5 - (a1 + a2);
        s.b = {b1, b2, b3, b4, b3, b2, b1};
        s.a = {a1, a2, a3, a3, a2, a1};
        s.declared_order = 4;
        return finish(std::move(s));
    }
    if (name == "ni4_82") {
        // Central kick weight 49/180: the 49/18 variant fails positivity
        // and the (8,2) scaling test (see the order harness).
        return ni4_82_with_b2(ni4_b2_candidate_small);
    }
    if (name == "ni5_84") {
        SplittingScheme s;
        s.name = name;
        const double b1 = 0.811862738544516;
        const double b2 = -0.677480399532169;
        const double b3 = 0.5 - (b1 + b2);
        const double a1 = -0.00758691311877447;
        const double a2 = 0.317218277973169;
        const double a3 = 1.0 - 2.0 * (a1 + a2);
        s.b = {b1, b2, b3, b3, b2, b1};
        s.a = {a1, a2, a3, a2, a1};
        s.declared_order = 4;
        s.effective_order = std::pair<int, int>{8, 4};
        return finish(std::move(s));
    }
    throw ValidationError("builtin_scheme: unknown scheme '" + name + "'");
}

std::vector<std::string> builtin_scheme_names() {
    return {"lie_trotter", "lie_trotter_adjoint", "strang_aba", "strang_bab",
            "srkn6_4",     "ni4_82",              "ni5_84"};
}

SplittingScheme adjoint_of(const SplittingScheme& s) {
    SplittingScheme r = s;
    r.name = s.name + "_adjoint";
    std::reverse(r.b.begin(), r.b.end());
    std::reverse(r.a.begin(), r.a.end());
    return finish(std::move(r));
}

SchemeReport validate(const SplittingScheme& s) {
    SchemeReport rep;
    rep.sum_a = std::accumulate(s.a.begin(), s.a.end(), 0.0);
    rep.sum_b = std::accumulate(s.b.begin(), s.b.end(), 0.0);
    rep.consistent = std::abs(rep.sum_a - 1.0) <= 1e-14 &&
                     std::abs(rep.sum_b - 1.0) <= 1e-14;
    if (!rep.consistent)
        rep.findings.push_back("consistency: sum(a)=" +
                               std::to_string(rep.sum_a) +
                               ", sum(b)=" + std::to_string(rep.sum_b));

    if (s.b.size() != s.a.size() + 1)
        rep.findings.push_back("layout: expected one more kick than drifts");

    const auto probe = [&] {
        std::vector<double> c;
        for (std::size_t i = 0; i < s.a.size(); ++i) {
            c.push_back(s.b[i]);
            c.push_back(s.a[i]);
        }
        c.push_back(s.b.back());
        auto r = c;
        std::reverse(r.begin(), r.end());
        return c == r;
    };
    rep.palindromic = probe();
    if (rep.palindromic != s.is_palindromic)
        rep.findings.push_back("palindromicity flag disagrees with coefficients");

    rep.fsal_eligible = s.b.front() == 0.0 || s.b.back() == 0.0 ||
                        s.a.front() == 0.0 || s.a.back() == 0.0;

    rep.all_coefficients_positive =
        std::all_of(s.a.begin(), s.a.end(), [](double v) { return v > 0.0; }) &&
        std::all_of(s.b.begin(), s.b.end(), [](double v) { return v > 0.0; });

    rep.max_abs_a = 0.0;
    for (double ai : s.a)
        rep.max_abs_a = std::max(rep.max_abs_a, std::abs(ai));
    if (rep.max_abs_a != s.max_abs_a)
        rep.findings.push_back("max_abs_a metadata disagrees with coefficients");

    return rep;
}

} // namespace hfsplit
