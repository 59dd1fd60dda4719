#include <doctest.h>

#include <cmath>
#include <fstream>

#include "pflab/ops.hpp"
#include "pflab/potential.hpp"

using namespace pflab;

namespace {
const double kSigmaQuartic = 4.0 * std::sqrt(2.0) / 3.0; // integral of sqrt(2)(1-s^2)

// independent oracle: high-resolution trapezoid quadrature of sqrt(2 W)
double sigma_trapezoid(const DoubleWell& w, long points) {
    double acc = 0.0;
    const double h = 2.0 / points;
    for (long i = 0; i <= points; ++i) {
        double s = -1.0 + i * h;
        double v = std::sqrt(std::max(2.0 * w.W(s), 0.0));
        acc += (i == 0 || i == points) ? 0.5 * v : v;
    }
    return acc * h;
}
} // namespace

TEST_CASE("canonical quartic values") {
    DoubleWell w = canonical_quartic();
    CHECK(w.W(0.0) == 1.0);
    CHECK(w.W(1.0) == 0.0);
    CHECK(w.W(-1.0) == 0.0);
    CHECK(w.Wpp(0.7) == doctest::Approx(1.88).epsilon(1e-14)); // 12*0.49 - 4 = kappa
    CHECK(w.Wp(w.gamma) == 0.0);
    CHECK(w.kappa == doctest::Approx(1.88));
}

TEST_CASE("sigma of the quartic and scaling homogeneity") {
    DoubleWell w = canonical_quartic();
    WellConstants c = sigma_constant(w);
    CHECK(c.sigma == doctest::Approx(kSigmaQuartic).epsilon(1e-9));
    CHECK(c.phi_at_one == doctest::Approx(0.5 * kSigmaQuartic).epsilon(1e-9));

    // sigma(4 W) = 2 sigma(W)
    DoubleWell w4 = w;
    w4.W = [base = w.W](double s) { return 4.0 * base(s); };
    w4.Wp = [base = w.Wp](double s) { return 4.0 * base(s); };
    w4.Wpp = [base = w.Wpp](double s) { return 4.0 * base(s); };
    CHECK(sigma_constant(w4).sigma == doctest::Approx(2.0 * c.sigma).epsilon(1e-9));

    // matches the 1e7-point trapezoid oracle to 1e-7 relative
    CHECK(std::abs(c.sigma - sigma_trapezoid(w, 10000000)) <= 1e-7 * c.sigma);
}

TEST_CASE("phi transform endpoints and monotonicity") {
    DoubleWell w = canonical_quartic();
    PhiTable table(w);
    CHECK(table(-1.0) == 0.0);
    CHECK(table(1.0) == doctest::Approx(0.5 * kSigmaQuartic).epsilon(1e-9));
    // tangent extension: slope sqrt(W(1)/2) = 0
    CHECK(table(1.3) == doctest::Approx(table(1.0)));
    CHECK(table(-1.2) == doctest::Approx(0.0));
    // strictly increasing inside (-1, 1)
    double prev = table(-1.0);
    for (int i = 1; i <= 200; ++i) {
        double s = -1.0 + 2.0 * i / 200.0;
        double cur = table(s);
        if (s < 1.0) CHECK(cur > prev);
        prev = cur;
    }
    // table accuracy 1e-8 against adaptive integrals at off-node points
    WellConstants c = sigma_constant(w);
    auto exact = [&](double s) {
        // closed form for the quartic: int sqrt(W/2) = (s - s^3/3 + 2/3)/sqrt(2)
        return (s - s * s * s / 3.0 + 2.0 / 3.0) / std::sqrt(2.0);
    };
    for (double s : {-0.9371, -0.311, 0.0004441, 0.5558, 0.97123})
        CHECK(std::abs(table(s) - exact(s)) < 1e-8);
    CHECK(c.phi_at_one == doctest::Approx(exact(1.0)).epsilon(1e-9));

    GridSpec g = GridSpec::line(16, 0.0, 1.0);
    ScalarField um(g, -1.0), up(g, 1.0);
    CHECK(sup_norm(phi_transform(um, table)) == 0.0);
    CHECK(sup_norm(phi_transform(up, table)) ==
          doctest::Approx(0.5 * kSigmaQuartic).epsilon(1e-8));
    ScalarField diverged(g, 1.6);
    CHECK_THROWS_AS((void)phi_transform(diverged, table), Error);

    // pointwise monotone: u1 <= u2 implies Phi(u1) <= Phi(u2)
    ScalarField u1 = sample(g, [](std::array<double, 3> x) { return std::sin(9 * x[0]); });
    ScalarField u2 = map(u1, [](double v) { return v + 0.13; });
    ScalarField w1 = phi_transform(u1, table), w2 = phi_transform(u2, table);
    for (std::size_t i = 0; i < w1.size(); ++i) CHECK(w1[i] <= w2[i]);
}

TEST_CASE("hypothesis validation: quartic passes, broken wells fail") {
    DoubleWell w = canonical_quartic();
    HypothesisReport ok = validate_hypotheses(w, 2001);
    CHECK(ok.passed());

    // tilted well violates (a): W(1) != 0
    DoubleWell tilted = w;
    tilted.W = [](double u) { double q = 1 - u * u; return q * q + 0.1 * u; };
    tilted.Wp = [](double u) { return -4 * u * (1 - u * u) + 0.1; };
    tilted.Wpp = w.Wpp;
    HypothesisReport ra = validate_hypotheses(tilted, 2001);
    CHECK_FALSE(ra.a_ok);

    // overstated kappa violates (c): W''(0.7) = 1.88 < 10
    DoubleWell brag = w;
    brag.kappa = 10.0;
    HypothesisReport rc = validate_hypotheses(brag, 2001);
    CHECK_FALSE(rc.c_ok);
    CHECK(rc.c_margin == doctest::Approx(1.88 - 10.0).epsilon(0.005)); // sample grid misses 0.7

    CHECK_THROWS_AS((void)validate_hypotheses(w, 100), Error); // needs >= 1e3 samples
}

TEST_CASE("numeric consistency of W' with centered differences of W") {
    DoubleWell w = canonical_quartic();
    const double h = 1e-5;
    for (double s = -1.4; s <= 1.4; s += 0.05) {
        double fd = (w.W(s + h) - w.W(s - h)) / (2 * h);
        CHECK(fd == doctest::Approx(w.Wp(s)).epsilon(1e-7).scale(1.0));
    }
}

TEST_CASE("tabulated well: quartic samples reproduce the quartic") {
    std::vector<double> s, Wv;
    for (int i = 0; i <= 360; ++i) {
        double x = -1.8 + 3.6 * i / 360.0;
        s.push_back(x);
        Wv.push_back((1 - x * x) * (1 - x * x));
    }
    DoubleWell w = tabulated_well_from(s, Wv, 0.7);
    CHECK(w.from_table);
    CHECK(w.gamma == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
    CHECK(w.W(0.33) == doctest::Approx((1 - 0.33 * 0.33) * (1 - 0.33 * 0.33)).epsilon(1e-6));
    CHECK(w.Wp(0.5) == doctest::Approx(-4 * 0.5 * 0.75).epsilon(1e-4));
    HypothesisReport rep = validate_hypotheses(w, 2001);
    CHECK(rep.passed());
    CHECK(rep.tabulated_smoothness_flag); // C^3 only via the interpolant
    CHECK(sigma_constant(w).sigma == doctest::Approx(kSigmaQuartic).epsilon(1e-5));
}

TEST_CASE("tabulated well file parsing and range requirement") {
    {
        std::ofstream os("/tmp/pflab_well_ok.txt");
        os << "# s W\n";
        for (int i = 0; i <= 200; ++i) {
            double x = -1.6 + 3.2 * i / 200.0;
            os << x << " " << (1 - x * x) * (1 - x * x) << "\n";
        }
    }
    DoubleWell w = tabulated_well("/tmp/pflab_well_ok.txt");
    CHECK(validate_hypotheses(w, 1000).passed());

    {
        std::ofstream os("/tmp/pflab_well_short.txt");
        for (int i = 0; i <= 100; ++i) {
            double x = -1.0 + 2.0 * i / 100.0; // does not cover [-1.5, 1.5]
            os << x << " " << (1 - x * x) * (1 - x * x) << "\n";
        }
    }
    CHECK_THROWS_AS((void)tabulated_well("/tmp/pflab_well_short.txt"), Error);
}
