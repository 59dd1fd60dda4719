#include "pflab/state.hpp"

#include <cmath>
#include <cstdio>

namespace pflab {

bool PhaseState::is_gradient_advection() const {
    if (rho.has_value()) return true;
    for (const auto& c : v.comps)
        for (double x : c.values)
            if (x != 0.0) return false;
    return true;
}

void PhaseState::validate() const {
    grid.validate();
    require(epsilon > 0.0 && std::isfinite(epsilon), "phase state: epsilon must be positive");
    require(u.grid.same_layout(grid), "phase state: u grid mismatch");
    require(v.grid.same_layout(grid), "phase state: v grid mismatch");
    for (int a = 0; a < grid.dim; ++a) {
        if (grid.spacing[a] > epsilon / 4.0 + 1e-14) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "phase state: axis %d spacing %.6g exceeds epsilon/4 = %.6g "
                          "(interface unresolved)",
                          a, grid.spacing[a], epsilon / 4.0);
            throw Error(buf);
        }
    }
    require(u.all_finite(), "phase state: u has non-finite values");
    require(v.all_finite(), "phase state: v has non-finite values");
    double m = sup_norm(u);
    require(m <= 1.5, "phase state: |u| reaches " + std::to_string(m) + " > 1.5 overshoot guard");
}

} // namespace pflab
