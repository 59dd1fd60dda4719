#include "pflab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pflab {

DoubleWell canonical_quartic() {
    DoubleWell w;
    w.W = [](double u) { double q = 1.0 - u * u; return q * q; };
    w.Wp = [](double u) { return -4.0 * u * (1.0 - u * u); };
    w.Wpp = [](double u) { return 12.0 * u * u - 4.0; };
    w.gamma = 0.0;
    w.alpha = 0.7;
    w.kappa = 1.88;
    return w;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                double fm, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = f(0.5 * (a + m)), rm = f(0.5 * (m + b));
    double left = simpson(a, fa, m, fm, lm);
    double right = simpson(m, fm, b, fb, rm);
    double delta = left + right - whole;
    if (depth <= 0) throw Error("sigma_constant: adaptive quadrature did not converge");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive(f, a, fa, m, fm, lm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, fm, b, fb, rm, right, 0.5 * tol, depth - 1);
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol,
                         int depth = 48) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive(f, a, fa, b, fb, fm, whole, tol, depth);
}

} // namespace

WellConstants sigma_constant(const DoubleWell& w) {
    auto integrand = [&](double s) {
        double v = w.W(s);
        require(std::isfinite(v), "sigma_constant: W not finite at s=" + std::to_string(s));
        return std::sqrt(std::max(2.0 * v, 0.0));
    };
    // crude scale for the relative tolerance
    double scale = 0.0;
    for (int i = 0; i <= 16; ++i) scale = std::max(scale, integrand(-1.0 + 2.0 * i / 16.0));
    scale = std::max(scale * 2.0, 1e-30);
    double sigma = adaptive_integral(integrand, -1.0, 1.0, 1e-8 * scale);
    require(sigma > 0.0, "sigma_constant: sigma must be positive (degenerate well?)");
    WellConstants c;
    c.sigma = sigma;
    c.phi_at_one = 0.5 * sigma;
    return c;
}

HypothesisReport validate_hypotheses(const DoubleWell& w, int samples) {
    require(samples >= 1000, "validate_hypotheses: need at least 1e3 samples");
    HypothesisReport rep;
    rep.tabulated_smoothness_flag = w.from_table;
    const double lo = std::max(-2.0, w.smin), hi = std::min(2.0, w.smax);
    const double tol = w.hypothesis_tol;

    // (a) W >= 0 on the sample grid and W(+-1) = W'(+-1) = 0
    double worst_a = 0.0;
    for (int i = 0; i <= samples; ++i) {
        double s = lo + (hi - lo) * i / samples;
        worst_a = std::min(worst_a, w.W(s));
    }
    double end_defect = std::max(std::max(std::abs(w.W(1.0)), std::abs(w.W(-1.0))),
                                 std::max(std::abs(w.Wp(1.0)), std::abs(w.Wp(-1.0))));
    rep.a_margin = std::min(worst_a, -end_defect);
    rep.a_ok = worst_a >= -tol && end_defect <= tol;

    // (b) W' > 0 on (-1, gamma), W' < 0 on (gamma, 1)
    double worst_b = 1e300;
    const double edge = 1e-4;
    for (int i = 0; i <= samples; ++i) {
        double s = -1.0 + 2.0 * i / samples;
        if (s < -1.0 + edge || s > 1.0 - edge) continue;
        if (std::abs(s - w.gamma) < edge) continue;
        double slope = w.Wp(s);
        double signed_margin = s < w.gamma ? slope : -slope;
        worst_b = std::min(worst_b, signed_margin);
    }
    rep.b_margin = worst_b;
    rep.b_ok = worst_b > 0.0;

    // (c) W'' >= kappa for |s| >= alpha
    double worst_c = 1e300;
    for (int i = 0; i <= samples; ++i) {
        double s = lo + (hi - lo) * i / samples;
        if (std::abs(s) < w.alpha) continue;
        worst_c = std::min(worst_c, w.Wpp(s) - w.kappa);
    }
    rep.c_margin = worst_c;
    rep.c_ok = worst_c >= -tol;

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "(a) %s margin=%.3g; (b) %s margin=%.3g; (c) %s margin=%.3g%s",
                  rep.a_ok ? "ok" : "FAIL", rep.a_margin, rep.b_ok ? "ok" : "FAIL", rep.b_margin,
                  rep.c_ok ? "ok" : "FAIL", rep.c_margin,
                  rep.tabulated_smoothness_flag
                      ? "; note: W is a table, C^3 holds for the cubic interpolant only"
                      : "");
    rep.detail = buf;
    return rep;
}

PhiTable::PhiTable(const DoubleWell& w, int intervals) {
    require(intervals >= 16, "PhiTable: too few intervals");
    lo_ = -1.0;
    dx_ = 2.0 / intervals;
    val_.resize(intervals + 1);
    der_.resize(intervals + 1);
    auto integrand = [&](double s) { return std::sqrt(std::max(w.W(s), 0.0) / 2.0); };
    val_[0] = 0.0;
    der_[0] = integrand(-1.0);
    double acc = 0.0;
    for (int k = 1; k <= intervals; ++k) {
        double a = lo_ + (k - 1) * dx_, b = lo_ + k * dx_;
        acc += adaptive_integral(integrand, a, b, 1e-12);
        val_[k] = acc;
        der_[k] = integrand(b);
    }
    phi1_ = acc;
    slope_lo_ = der_.front();
    slope_hi_ = der_.back();
}

double PhiTable::operator()(double s) const {
    require(s >= -1.5 && s <= 1.5,
            "phi_transform: value " + std::to_string(s) + " far outside [-1.5, 1.5] (diverged solve?)");
    if (s <= -1.0) return slope_lo_ * (s + 1.0);          // endpoint tangent
    if (s >= 1.0) return phi1_ + slope_hi_ * (s - 1.0);   // endpoint tangent
    double t = (s - lo_) / dx_;
    int k = std::min(static_cast<int>(t), static_cast<int>(val_.size()) - 2);
    double x = t - k;
    // cubic Hermite with exact derivatives Phi' = sqrt(W/2)
    double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    double h10 = x * (1 - x) * (1 - x);
    double h01 = x * x * (3 - 2 * x);
    double h11 = x * x * (x - 1);
    return h00 * val_[k] + h10 * dx_ * der_[k] + h01 * val_[k + 1] + h11 * dx_ * der_[k + 1];
}

ScalarField phi_transform(const ScalarField& u, const PhiTable& table) {
    double m = sup_norm(u);
    require(m <= 1.5, "phi_transform: |u| reaches " + std::to_string(m) +
                          ", far outside [-1.5, 1.5] (diverged solve?)");
    return map(u, [&](double s) { return table(s); });
}

ScalarField phi_transform(const ScalarField& u, const DoubleWell& w) {
    PhiTable table(w);
    return phi_transform(u, table);
}

namespace {

struct Table {
    double s0 = 0.0, ds = 0.0;
    std::vector<double> y;

    double value(double s, int deriv) const {
        const int n = static_cast<int>(y.size());
        double t = (s - s0) / ds;
        int k = std::clamp(static_cast<int>(std::floor(t)), 1, n - 3);
        double x = t - k;
        // 4-point (Catmull-Rom style) local cubic through y[k-1..k+2]
        double a = y[k - 1], b = y[k], c = y[k + 1], d = y[k + 2];
        double c0 = b;
        double c1 = 0.5 * (c - a);
        double c2 = a - 2.5 * b + 2.0 * c - 0.5 * d;
        double c3 = 0.5 * (d - a) + 1.5 * (b - c);
        switch (deriv) {
        case 0: return ((c3 * x + c2) * x + c1) * x + c0;
        case 1: return ((3 * c3 * x + 2 * c2) * x + c1) / ds;
        default: return (6 * c3 * x + 2 * c2) / (ds * ds);
        }
    }
};

} // namespace

DoubleWell tabulated_well_from(const std::vector<double>& s, const std::vector<double>& Wv,
                               double alpha) {
    require(s.size() == Wv.size() && s.size() >= 8, "tabulated well: need at least 8 rows");
    const double ds = s[1] - s[0];
    require(ds > 0, "tabulated well: s must be increasing");
    for (std::size_t i = 1; i < s.size(); ++i)
        require(std::abs((s[i] - s[i - 1]) - ds) <= 1e-9 * std::abs(ds),
                "tabulated well: s grid must be uniform");
    require(s.front() <= -1.5 + 1e-12 && s.back() >= 1.5 - 1e-12,
            "tabulated well: table must cover [-1.5, 1.5]");

    auto table = std::make_shared<Table>();
    table->s0 = s.front();
    table->ds = ds;
    table->y = Wv;

    DoubleWell w;
    w.from_table = true;
    w.smin = s.front() + ds; // local cubic needs one spare row each side
    w.smax = s.back() - 2 * ds;
    w.hypothesis_tol = std::max(1e-8, 8.0 * ds * ds); // interpolant accuracy at +-1
    w.W = [table](double x) { return table->value(x, 0); };
    w.Wp = [table](double x) { return table->value(x, 1); };
    w.Wpp = [table](double x) { return table->value(x, 2); };

    // locate gamma: sign change of W' in (-1, 1)
    double gamma = 0.0;
    bool found = false;
    const int scan = 4000;
    double prev = w.Wp(-1.0 + 1e-6);
    for (int i = 1; i <= scan; ++i) {
        double x = -1.0 + 1e-6 + (2.0 - 2e-6) * i / scan;
        double cur = w.Wp(x);
        if (prev > 0 && cur <= 0) {
            double a = x - (2.0 - 2e-6) / scan, b = x;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b);
                (w.Wp(m) > 0 ? a : b) = m;
            }
            gamma = 0.5 * (a + b);
            found = true;
            break;
        }
        prev = cur;
    }
    require(found, "tabulated well: no interior critical point of W found in (-1,1)");
    w.gamma = gamma;
    w.alpha = alpha;
    double kmin = 1e300;
    for (int i = 0; i <= 2000; ++i) {
        double x = w.smin + (w.smax - w.smin) * i / 2000.0;
        if (std::abs(x) < alpha || std::abs(x) > 2.0) continue;
        kmin = std::min(kmin, w.Wpp(x));
    }
    w.kappa = kmin > 0 ? 0.95 * kmin : kmin;
    return w;
}

DoubleWell tabulated_well(const std::string& path, double alpha) {
    std::ifstream is(path);
    require(is.good(), "tabulated well: cannot open " + path);
    std::vector<double> s, Wv;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double a, b;
        if (ls >> a >> b) {
            s.push_back(a);
            Wv.push_back(b);
        }
    }
    return tabulated_well_from(s, Wv, alpha);
}

} // namespace pflab
