#include "pflab/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pflab {

bool ball_inside(const GridSpec& g, std::array<double, 3> center, double r) {
    for (int a = 0; a < g.dim; ++a) {
        if (center[a] - r < g.lo(a) - 1e-12) return false;
        if (center[a] + r > g.hi(a) + 1e-12) return false;
    }
    return true;
}

double ball_integral(const ScalarField& f, std::array<double, 3> center, double r) {
    const GridSpec& g = f.grid;
    require(r > 0.0, "ball_integral: radius must be positive");
    for (int a = 0; a < g.dim; ++a) {
        double under = g.lo(a) - (center[a] - r);
        double over = (center[a] + r) - g.hi(a);
        if (under > 1e-12 || over > 1e-12) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "ball_integral: B_%g(center) leaves Omega on axis %d by %g", r, a,
                          std::max(under, over));
            throw Error(buf);
        }
    }

    // Cell range overlapping the bounding box of the ball.
    std::array<int, 3> clo{0, 0, 0}, chi{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
        clo[a] = std::max(0, static_cast<int>(std::floor((center[a] - r - g.origin[a]) / g.spacing[a])));
        chi[a] = std::min(g.extents[a] - 1,
                          static_cast<int>(std::floor((center[a] + r - g.origin[a]) / g.spacing[a])));
    }
    double cellvol = 1.0;
    for (int a = 0; a < g.dim; ++a) cellvol *= g.spacing[a];
    const double r2 = r * r;
    const int dim = g.dim;
    const int corners = 1 << dim;
    const int nsub = dim == 1 ? 4 : (dim == 2 ? 16 : 64);

    const int n0 = chi[0] - clo[0] + 1;
    if (n0 <= 0) return 0.0;
    std::size_t rows = static_cast<std::size_t>(n0);
    std::vector<double> partials(rows, 0.0);

    parallel_for(rows, [&](std::size_t lo_, std::size_t hi_) {
        for (std::size_t row = lo_; row < hi_; ++row) {
            const int cx = clo[0] + static_cast<int>(row);
            std::vector<double> terms;
            const int n1 = dim > 1 ? chi[1] - clo[1] + 1 : 1;
            const int n2 = dim > 2 ? chi[2] - clo[2] + 1 : 1;
            terms.reserve(static_cast<std::size_t>(n1) * n2);
            for (int j = 0; j < n1; ++j) {
                for (int k = 0; k < n2; ++k) {
                    std::array<int, 3> c{cx, dim > 1 ? clo[1] + j : 0, dim > 2 ? clo[2] + k : 0};
                    // per-axis distances from center to the cell box
                    double dmin2 = 0.0, dmax2 = 0.0;
                    for (int a = 0; a < dim; ++a) {
                        double lo = g.origin[a] + c[a] * g.spacing[a];
                        double hi = lo + g.spacing[a];
                        double dlo = std::abs(center[a] - lo), dhi = std::abs(center[a] - hi);
                        double dmx = std::max(dlo, dhi);
                        double dmn = (center[a] >= lo && center[a] <= hi) ? 0.0 : std::min(dlo, dhi);
                        dmin2 += dmn * dmn;
                        dmax2 += dmx * dmx;
                    }
                    if (dmin2 >= r2) continue;
                    double frac = 1.0;
                    if (dmax2 > r2) {
                        // boundary cell: fixed 4-per-axis subsample
                        int cnt = 0;
                        std::array<double, 4> off{};
                        for (int s = 0; s < 4; ++s) off[s] = (s + 0.5) * 0.25;
                        if (dim == 1) {
                            double lo = g.origin[0] + c[0] * g.spacing[0];
                            for (int s = 0; s < 4; ++s) {
                                double dx = lo + off[s] * g.spacing[0] - center[0];
                                if (dx * dx < r2) ++cnt;
                            }
                        } else if (dim == 2) {
                            double lox = g.origin[0] + c[0] * g.spacing[0];
                            double loy = g.origin[1] + c[1] * g.spacing[1];
                            for (int s = 0; s < 4; ++s)
                                for (int t = 0; t < 4; ++t) {
                                    double dx = lox + off[s] * g.spacing[0] - center[0];
                                    double dy = loy + off[t] * g.spacing[1] - center[1];
                                    if (dx * dx + dy * dy < r2) ++cnt;
                                }
                        } else {
                            double lox = g.origin[0] + c[0] * g.spacing[0];
                            double loy = g.origin[1] + c[1] * g.spacing[1];
                            double loz = g.origin[2] + c[2] * g.spacing[2];
                            for (int s = 0; s < 4; ++s)
                                for (int t = 0; t < 4; ++t)
                                    for (int q = 0; q < 4; ++q) {
                                        double dx = lox + off[s] * g.spacing[0] - center[0];
                                        double dy = loy + off[t] * g.spacing[1] - center[1];
                                        double dz = loz + off[q] * g.spacing[2] - center[2];
                                        if (dx * dx + dy * dy + dz * dz < r2) ++cnt;
                                    }
                        }
                        if (cnt == 0) continue;
                        frac = static_cast<double>(cnt) / nsub;
                    }
                    // cell average over the 2^dim corner nodes
                    double avg = 0.0;
                    for (int m = 0; m < corners; ++m) {
                        std::array<int, 3> idx{0, 0, 0};
                        for (int a = 0; a < dim; ++a) {
                            int ia = c[a] + ((m >> a) & 1);
                            if (g.bc[a].kind == BcKind::Periodic && ia == g.nodes(a)) ia = 0;
                            idx[a] = ia;
                        }
                        avg += f[g.index(idx)];
                    }
                    avg /= corners;
                    terms.push_back(avg * frac * cellvol);
                }
            }
            partials[row] = pairwise_sum(terms);
        }
    });
    return pairwise_sum(partials);
}

} // namespace pflab
