// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs standalone (no test framework) so the output stays readable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "noisylabels/datagen.hpp"
#include "noisylabels/errors.hpp"
#include "noisylabels/harness.hpp"
#include "noisylabels/identifiability.hpp"
#include "noisylabels/learners.hpp"
#include "noisylabels/noise_channel.hpp"
#include "noisylabels/rng.hpp"
#include "noisylabels/simplex.hpp"

using namespace noisylabels;

namespace {

int g_failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s — %s\n", ok ? "PASS" : "FAIL", number, name,
                detail.c_str());
    if (!ok) ++g_failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct RandomDataset {
    LabeledDataset ds;
    LinearModel model;
};

RandomDataset random_point(Rng& rng, std::size_t n, std::size_t dim) {
    RandomDataset r;
    r.ds.n = n;
    r.ds.dim = dim;
    r.ds.features.resize(n * dim);
    r.ds.noisy_labels.resize(n);
    for (auto& v : r.ds.features) v = rng.normal();
    for (auto& y : r.ds.noisy_labels) y = rng.uniform() < 0.5 ? 0 : 1;
    r.ds.clean_labels = r.ds.noisy_labels;
    r.model.weights.resize(dim);
    for (auto& w : r.model.weights) w = rng.normal();
    r.model.bias = rng.normal();
    return r;
}

double summary_mean(const ExperimentResult& res, TrainRule rule) {
    for (const auto& s : res.summary)
        if (s.rule == rule) return s.mean;
    return std::nan("");
}

// product-form discrete joint q(x,y,y') = P(X=x|Y=y) P(Y=y) E[y'][y]
DiscreteJoint product_joint(const Vec& py, const std::vector<Vec>& px_given_y,
                            const Matrix& channel) {
    const std::size_t k = py.size();
    const std::size_t nx = px_given_y[0].size();
    Vec table(nx * k * k);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t y = 0; y < k; ++y)
            for (std::size_t yp = 0; yp < k; ++yp)
                table[(x * k + y) * k + yp] = px_given_y[y][x] * py[y] * channel(yp, y);
    return DiscreteJoint(nx, k, std::move(table));
}

Vec random_simplex(Rng& rng, std::size_t k, double floor) {
    Vec v(k);
    double s = 0.0;
    for (auto& e : v) {
        e = floor - std::log(1.0 - rng.uniform());
        s += e;
    }
    for (auto& e : v) e /= s;
    return v;
}

}  // namespace

// --- criteria 1-3: the synthetic experiment ---------------------------------

static void criteria_experiment() {
    ExperimentConfig balanced;
    balanced.p1 = 0.5;
    balanced.eps0 = 0.3;
    balanced.sample_sizes = {2500};
    balanced.n_trials = 100;
    balanced.n_test = 10000;
    balanced.rules = {TrainRule::Oracle, TrainRule::WeightedERM};

    ExperimentConfig imbalanced = balanced;
    imbalanced.p1 = 0.35;
    imbalanced.eps0 = 0.5;

    auto bal = run_experiment(balanced);
    auto imb = run_experiment(imbalanced);

    double bal_oracle = summary_mean(bal, TrainRule::Oracle);
    double bal_werm = summary_mean(bal, TrainRule::WeightedERM);
    double imb_oracle = summary_mean(imb, TrainRule::Oracle);
    double imb_werm = summary_mean(imb, TrainRule::WeightedERM);

    double bal_gap = std::abs(bal_oracle - bal_werm);
    report(1, "balanced weighted ERM matches the oracle", bal_gap <= 0.02,
           "oracle " + std::to_string(bal_oracle) + ", weighted " + std::to_string(bal_werm) +
               ", |gap| " + std::to_string(bal_gap) + " <= 0.02");

    double imb_gap = imb_oracle - imb_werm;
    report(2, "imbalanced weighted ERM trails the oracle",
           imb_gap > 0.01 && imb_gap > bal_gap,
           "gap " + std::to_string(imb_gap) + " > 0.01 and > balanced gap " +
               std::to_string(bal_gap));

    report(3, "oracle accuracy near the analytic optimum", std::abs(bal_oracle - 0.760) <= 0.02,
           "oracle " + std::to_string(bal_oracle) + " within 0.02 of 0.760");
}

// --- criterion 4: raw and simplified peer risks agree -----------------------

static void criterion_peer_identity() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(101);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 49);
        auto pt = random_point(rng, n, 2);
        LossKind loss = rng.uniform() < 0.5 ? LossKind::Logistic : LossKind::ZeroOne;
        double diff = std::abs(peer_risk_raw(pt.model, pt.ds, loss) -
                               peer_risk_simplified(pt.model, pt.ds, loss));
        if (diff > worst) worst = diff;
    }
    double secs = elapsed_s(start);
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst |raw - simplified| %.3g over 1000 triples in %.1fs",
                  worst, secs);
    report(4, "peer risk double sum equals its simplified form", worst < 1e-12 && secs < 10.0,
           buf);
}

// --- criterion 5: peer-loss divergence --------------------------------------

static void criterion_peer_divergence() {
    LabeledDataset ds;
    ds.n = 3;
    ds.dim = 2;
    ds.features = {1, 0, 0, 1, 1, 1};
    ds.noisy_labels = {1, 1, 0};
    ds.clean_labels = ds.noisy_labels;

    auto v = peer_divergence_direction(ds);
    bool hand = v && std::abs((*v)[0] + 1.0 / 6.0) < 1e-12 && std::abs((*v)[1] + 1.0 / 6.0) < 1e-12;

    bool decreasing = false;
    if (v) {
        double prev = std::numeric_limits<double>::infinity();
        decreasing = true;
        for (double t : {1.0, 10.0, 100.0}) {
            LinearModel m;
            m.weights = {(*v)[0] * t, (*v)[1] * t};
            double risk = peer_risk_simplified(m, ds, LossKind::Logistic);
            if (!(risk < prev)) decreasing = false;
            prev = risk;
        }
    }
    report(5, "peer risk is unbounded along its divergence direction", hand && decreasing,
           "v = (-1/6, -1/6) exact, risk strictly decreasing at t = 1, 10, 100");
}

// --- criterion 6: noise-matrix construction ---------------------------------

static void criterion_construction() {
    Rng rng(103);
    double worst_residual = 0.0, worst_colsum = 0.0, min_det = 1.0, min_entry = 0.0;
    bool ok = true;
    for (std::size_t k = 2; k <= 6 && ok; ++k) {
        for (int t = 0; t < 1000; ++t) {
            auto p = validate_simplex(random_simplex(rng, k, 0.02));
            auto pp = validate_simplex(random_simplex(rng, k, 0.02));
            NoiseMatrix e = construct_noise_matrix(p, pp);
            Vec image = e.matrix().apply(p.probs());
            for (std::size_t i = 0; i < k; ++i) {
                worst_residual = std::max(worst_residual, std::abs(image[i] - pp[i]));
                double colsum = 0.0;
                for (std::size_t r = 0; r < k; ++r) {
                    colsum += e(r, i);
                    min_entry = std::min(min_entry, e(r, i));
                }
                worst_colsum = std::max(worst_colsum, std::abs(colsum - 1.0));
            }
            min_det = std::min(min_det, e.det());
        }
    }
    ok = worst_residual < 1e-12 && worst_colsum < 1e-12 && min_entry >= 0.0 && min_det > 0.0;

    NoiseMatrix hand = construct_noise_matrix(validate_simplex({0.3, 0.7}),
                                              validate_simplex({0.5, 0.5}));
    double hd = std::max({std::abs(hand(0, 0) - 1.0), std::abs(hand(0, 1) - 2.0 / 7.0),
                          std::abs(hand(1, 0)), std::abs(hand(1, 1) - 5.0 / 7.0)});
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "residual %.2g, colsum dev %.2g, min det %.2g, hand case dev %.2g",
                  worst_residual, worst_colsum, min_det, hd);
    report(6, "constructed channels map p to p' exactly", ok && hd < 1e-12, buf);
}

// --- criterion 7: counterexample witnesses ----------------------------------

static void criterion_witnesses() {
    bool ok = true;
    std::string detail;

    auto check_pair = [&](const CounterexamplePair& pair, const char* tag) {
        Vec im1 = pair.e1.matrix().apply(pair.p.probs());
        Vec im2 = pair.e2.matrix().apply(pair.p.probs());
        for (std::size_t i = 0; i < im1.size(); ++i)
            if (std::abs(im1[i] - pair.p_prime[i]) > 1e-10 ||
                std::abs(im2[i] - pair.p_prime[i]) > 1e-10) {
                ok = false;
                detail += std::string(tag) + ": action mismatch; ";
            }
        Vec a1 = solve_linear(pair.e1.stochastic(), pair.witness_scores);
        Vec a2 = solve_linear(pair.e2.stochastic(), pair.witness_scores);
        if (argmax_lowest(a1) != pair.argmax_under_e1 ||
            argmax_lowest(a2) != pair.argmax_under_e2 ||
            pair.argmax_under_e1 == pair.argmax_under_e2) {
            ok = false;
            detail += std::string(tag) + ": witness does not flip; ";
        }
    };

    auto balanced = balanced_counterexample(3);
    check_pair(balanced, "balanced");

    double delta = 0.1;
    auto p = validate_simplex({0.35, 0.65});
    // reference noisy marginal 0.8 p + 0.2 uniform
    auto pp = validate_simplex({0.8 * 0.35 + 0.1, 0.8 * 0.65 + 0.1});
    auto shrink = shrinkage_counterexample(p, pp, delta);
    check_pair(shrink, "shrinkage");

    // rank-one closed form against the direct solve
    Vec alpha = solve_linear(shrink.e1.stochastic(), shrink.witness_scores);
    Vec direct = solve_linear(shrink.e2.stochastic(), shrink.witness_scores);
    for (std::size_t i = 0; i < 2; ++i) {
        double closed = (alpha[i] - delta * p[i]) / (1.0 - delta);
        if (std::abs(closed - direct[i]) > 1e-10) {
            ok = false;
            detail += "closed form mismatch; ";
        }
    }
    double expected_det = (1.0 - delta) * shrink.e1.det();  // (1-delta)^{K-1}, K = 2
    if (std::abs(shrink.e2.det() - expected_det) > 1e-10) {
        ok = false;
        detail += "determinant identity violated; ";
    }
    if (detail.empty())
        detail = "balanced K=3 and shrinkage (0.35, 0.65), delta = 0.1: actions equal, "
                 "argmax flips, rank-one identities hold";
    report(7, "both witness constructions disagree at their witness", ok, detail);
}

// --- criterion 8: decision-threshold dichotomy ------------------------------

static void criterion_threshold() {
    Interval iv = feasible_eps12_range(0.5, 0.4);
    double ref = binary_boundary_threshold(0.5, 0.4, iv.lo);
    double variation = 0.0;
    for (int i = 0; i < 100; ++i) {
        double eps = iv.lo + (iv.hi - iv.lo) * (static_cast<double>(i) + 0.5) / 101.0;
        variation = std::max(variation,
                             std::abs(binary_boundary_threshold(0.5, 0.4, eps) - ref));
    }

    bool feasible = true;
    double t1 = 0.0, t2 = 0.0;
    try {
        (void)epsilon_from_marginals(0.35, 0.4, 0.1);
        (void)epsilon_from_marginals(0.35, 0.4, 0.3);
        t1 = binary_boundary_threshold(0.35, 0.4, 0.1);
        t2 = binary_boundary_threshold(0.35, 0.4, 0.3);
    } catch (const InfeasibleRates&) {
        feasible = false;
    }
    bool ok = variation < 1e-12 && feasible && std::abs(t1 - 0.37 / 0.35) < 1e-12 &&
              std::abs(t2 - 0.31 / 0.35) < 1e-12 && std::abs(t1 - t2) > 1e-6;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "balanced variation %.2g; imbalanced tau(0.1) = %.5f, tau(0.3) = %.5f",
                  variation, t1, t2);
    report(8, "threshold constant iff the prior is balanced", ok, buf);
}

// --- criterion 9: posterior inversion round trip ----------------------------

static void criterion_inversion() {
    Rng rng(107);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        double e01 = rng.uniform() * 0.9;
        double e10 = rng.uniform() * (0.98 - e01);
        double a1 = 0.01 + 0.98 * rng.uniform();
        std::pair<double, double> alpha{a1, 1.0 - a1};
        // forward through the channel, columns indexed by the true class
        std::pair<double, double> a{(1.0 - e10) * alpha.first + e01 * alpha.second,
                                    e10 * alpha.first + (1.0 - e01) * alpha.second};
        auto back = invert_binary_posterior(a, e01, e10);
        worst = std::max({worst, std::abs(back.first - alpha.first),
                          std::abs(back.second - alpha.second)});
    }
    auto hand = invert_binary_posterior({0.5, 0.5}, 0.2, 0.3);
    bool hand_ok = std::abs(hand.first - 0.6) < 1e-12 && std::abs(hand.second - 0.4) < 1e-12;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "worst round-trip error %.2g; (0.5, 0.5) -> (%.3f, %.3f)", worst,
                  hand.first, hand.second);
    report(9, "posterior inversion undoes the channel", worst < 1e-10 && hand_ok, buf);
}

// --- criterion 10: balanced-noisy reweighting -------------------------------

static void criterion_reweighting() {
    Rng rng(109);
    double worst = 0.0;
    bool ci_ok = true;
    for (int t = 0; t < 200; ++t) {
        std::size_t k = 2 + static_cast<std::size_t>(rng.uniform() * 3);
        std::size_t nx = 2 + static_cast<std::size_t>(rng.uniform() * 8);
        Vec py = random_simplex(rng, k, 0.02);
        std::vector<Vec> pxy;
        for (std::size_t y = 0; y < k; ++y) pxy.push_back(random_simplex(rng, nx, 0.0));
        Matrix channel(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            Vec col = random_simplex(rng, k, 0.0);
            for (std::size_t i = 0; i < k; ++i)
                channel(i, j) = 0.7 * (i == j ? 1.0 : 0.0) + 0.3 * col[i];
        }
        auto r = reweight_to_balanced_noisy(product_joint(py, pxy, channel));
        Vec pyp = r.marginal_yprime();
        for (std::size_t yp = 0; yp < k; ++yp)
            worst = std::max(worst, std::abs(pyp[yp] - 1.0 / static_cast<double>(k)));
        if (!check_conditional_independence(r)) ci_ok = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "worst marginal deviation %.2g over 200 joints; independence preserved: %s",
                  worst, ci_ok ? "yes" : "no");
    report(10, "reweighting balances the noisy marginal", worst < 1e-9 && ci_ok, buf);
}

// --- criterion 11: exhaustive discrete minimizer ----------------------------

static void criterion_discrete_oracle() {
    auto start = std::chrono::steady_clock::now();
    Rng rng(113);
    bool ok = true;
    int instances = 0;
    for (int t = 0; t < 40 && ok; ++t) {
        std::size_t nx = 4 + static_cast<std::size_t>(rng.uniform() * 9);  // up to 12
        double e0 = rng.uniform() * 0.45;
        double e1 = rng.uniform() * (0.95 - e0);
        Matrix channel(2, 2);
        channel(0, 0) = 1.0 - e0;
        channel(0, 1) = e1;
        channel(1, 0) = e0;
        channel(1, 1) = 1.0 - e1;
        std::vector<Vec> pxy = {random_simplex(rng, nx, 0.0), random_simplex(rng, nx, 0.0)};
        auto joint = product_joint({0.5, 0.5}, pxy, channel);
        Vec pyp = joint.marginal_yprime();
        ++instances;

        std::vector<int> bayes(nx);
        for (std::size_t x = 0; x < nx; ++x)
            bayes[x] = joint.mass_xy(x, 1) >= joint.mass_xy(x, 0) ? 1 : 0;

        double best_risk = std::numeric_limits<double>::infinity();
        std::uint64_t best_mask = 0;
        for (std::uint64_t mask = 0; mask < (1ULL << nx); ++mask) {
            double risk = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                int f = static_cast<int>((mask >> x) & 1);
                // weighted 0-1 risk under the noisy labels
                for (int yp = 0; yp < 2; ++yp)
                    if (f != yp) risk += pyp[1 - yp] * joint.mass_x_yprime(x, yp);
            }
            if (risk < best_risk - 1e-15) {
                best_risk = risk;
                best_mask = mask;
            }
        }
        for (std::size_t x = 0; x < nx; ++x)
            if (static_cast<int>((best_mask >> x) & 1) != bayes[x]) ok = false;
    }
    double secs = elapsed_s(start);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d exhaustive instances agree with clean Bayes in %.1fs",
                  instances, secs);
    report(11, "weighted 0-1 minimizer is the clean Bayes labeling", ok && secs < 30.0, buf);
}

// --- criterion 12: gradient correctness -------------------------------------

static void criterion_gradient() {
    Rng rng(127);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        auto pt = random_point(rng, 25, 3);
        auto [p0, p1] = empirical_class_weights(pt.ds.noisy_labels);
        Vec grad(4, 0.0);
        for (std::size_t i = 0; i < pt.ds.n; ++i) {
            double f = pt.model.logit(pt.ds.row(i));
            double sigma = 1.0 / (1.0 + std::exp(-f));
            int y = pt.ds.noisy_labels[i];
            double g = (y == 0 ? p1 : p0) * (sigma - y);
            for (std::size_t j = 0; j < 3; ++j) grad[j] += g * pt.ds.row(i)[j];
            grad[3] += g;
        }
        for (auto& g : grad) g /= static_cast<double>(pt.ds.n);

        const double h = 1e-5;
        for (std::size_t j = 0; j < 4; ++j) {
            LinearModel up = pt.model, dn = pt.model;
            (j < 3 ? up.weights[j] : up.bias) += h;
            (j < 3 ? dn.weights[j] : dn.bias) -= h;
            double fd = (weighted_erm_risk(up, pt.ds, LossKind::Logistic) -
                         weighted_erm_risk(dn, pt.ds, LossKind::Logistic)) /
                        (2.0 * h);
            double rel = std::abs(grad[j] - fd) / std::max(std::abs(fd), 1e-8);
            worst = std::max(worst, rel);
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst relative error %.2g over 20 points", worst);
    report(12, "analytic gradient matches central differences", worst < 1e-5, buf);
}

int main() {
    criteria_experiment();
    criterion_peer_identity();
    criterion_peer_divergence();
    criterion_construction();
    criterion_witnesses();
    criterion_threshold();
    criterion_inversion();
    criterion_reweighting();
    criterion_discrete_oracle();
    criterion_gradient();

    if (g_failures == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
