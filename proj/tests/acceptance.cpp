// Acceptance suite: exercises every headline requirement end to end and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lqes/runner.hpp"
#include "oracles.hpp"

using namespace lqes;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// Reference constants transcribed from the published two- and five-bucket
// experiment tables. Layout: per model {c_base, c_agg, ratio} rows, columns
// (alpha, rho) = (.95,0) (.95,.5) (.975,0) (.975,.5) (.99,0) (.99,.5).
// Model order matches the default config: gauss, t, vg, nig, hyp.
const double kTable2[5][3][6] = {
    {{2.063, 2.063, 2.338, 2.338, 2.665, 2.665},
     {2.063, 2.063, 2.338, 2.338, 2.665, 2.665},
     {1.000, 1.000, 1.000, 1.000, 1.000, 1.000}},
    {{2.223, 2.223, 2.906, 2.906, 4.065, 4.065},
     {2.212, 2.169, 2.831, 2.671, 3.868, 3.486},
     {0.995, 0.975, 0.974, 0.919, 0.952, 0.858}},
    {{2.345, 2.345, 2.841, 2.841, 3.509, 3.509},
     {2.247, 2.132, 2.670, 2.468, 3.225, 2.891},
     {0.958, 0.909, 0.940, 0.869, 0.919, 0.824}},
    {{2.374, 2.374, 2.976, 2.976, 3.832, 3.832},
     {2.296, 2.167, 2.801, 2.544, 3.502, 3.042},
     {0.967, 0.913, 0.941, 0.855, 0.914, 0.794}},
    {{2.330, 2.330, 2.816, 2.816, 3.459, 3.459},
     {2.237, 2.128, 2.653, 2.459, 3.194, 2.877},
     {0.960, 0.913, 0.942, 0.873, 0.923, 0.832}}};

const double kTable3[5][3][6] = {
    {{2.063, 2.063, 2.338, 2.338, 2.665, 2.665},
     {2.063, 2.063, 2.338, 2.338, 2.665, 2.665},
     {1.000, 1.000, 1.000, 1.000, 1.000, 1.000}},
    {{2.223, 2.223, 2.906, 2.906, 4.065, 4.065},
     {2.160, 2.169, 2.637, 2.671, 3.402, 3.486},
     {0.972, 0.975, 0.908, 0.919, 0.837, 0.858}},
    {{2.345, 2.345, 2.841, 2.841, 3.509, 3.509},
     {2.112, 2.132, 2.429, 2.468, 2.824, 2.891},
     {0.901, 0.909, 0.855, 0.869, 0.805, 0.824}},
    {{2.374, 2.374, 2.976, 2.976, 3.832, 3.832},
     {2.142, 2.167, 2.492, 2.544, 2.942, 3.042},
     {0.902, 0.913, 0.837, 0.855, 0.768, 0.794}},
    {{2.330, 2.330, 2.816, 2.816, 3.459, 3.459},
     {2.108, 2.128, 2.423, 2.459, 2.814, 2.877},
     {0.905, 0.913, 0.860, 0.873, 0.813, 0.832}}};

const char* kModelNames[5] = {"gauss", "t", "vg", "nig", "hyp"};
const double kAlphas[3] = {0.95, 0.975, 0.99};
const double kRhos[2] = {0.0, 0.5};

int g_failures = 0;

void report(int id, const char* title, bool pass, const std::vector<std::string>& notes = {}) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, title);
    for (const auto& n : notes) std::printf("       %s\n", n.c_str());
    if (!pass) ++g_failures;
}

const CellResult* find_cell(const TableReport& rep, std::size_t grid, std::size_t model,
                            double alpha, double rho) {
    for (const auto& c : rep.cells)
        if (c.grid_index == grid && c.model_index == model && c.alpha == alpha &&
            c.rho == rho)
            return &c;
    return nullptr;
}

bool check_table(const TableReport& rep, std::size_t grid, const double table[5][3][6],
                 double tol, int* n_total, int* n_ok, std::vector<std::string>* notes) {
    bool pass = true;
    for (std::size_t mi = 0; mi < 5; ++mi)
        for (int ai = 0; ai < 3; ++ai)
            for (int ri = 0; ri < 2; ++ri) {
                const CellResult* cell = find_cell(rep, grid, mi, kAlphas[ai], kRhos[ri]);
                int col = ai * 2 + ri;
                double got[3], want[3];
                if (cell == nullptr || !cell->ok) {
                    pass = false;
                    notes->push_back(std::string(kModelNames[mi]) + " cell failed: " +
                                     (cell ? cell->error : "missing"));
                    *n_total += 3;
                    continue;
                }
                got[0] = cell->report.c_base;
                got[1] = cell->report.c_agg;
                got[2] = cell->report.ratio;
                for (int q = 0; q < 3; ++q) want[q] = table[mi][q][col];
                for (int q = 0; q < 3; ++q) {
                    ++*n_total;
                    double diff = std::fabs(got[q] - want[q]);
                    if (diff <= tol + 1e-9) {
                        ++*n_ok;
                    } else {
                        pass = false;
                        char buf[160];
                        const char* qn[3] = {"c_base", "c_agg", "ratio"};
                        std::snprintf(buf, sizeof buf,
                                      "%s %s alpha=%.3f rho=%.1f: computed %.4f vs reference "
                                      "%.3f (|diff| %.4f > %.3f)",
                                      kModelNames[mi], qn[q], kAlphas[ai], kRhos[ri], got[q],
                                      want[q], diff, tol);
                        notes->push_back(buf);
                    }
                }
            }
    return pass;
}

}  // namespace

int main() {
    now_seconds();
    std::printf("running the benchmark grid (2-bucket and 5-bucket, 5 models, 3 alphas, "
                "2 correlations)...\n");
    ExperimentConfig config = default_experiment_config();
    TableReport rep = run_tables(config);
    double t_tables = now_seconds();
    std::printf("grid computed in %.1f s\n\n", t_tables);

    // 1. two-bucket table reproduction
    {
        std::vector<std::string> notes;
        int total = 0, ok = 0;
        bool pass = check_table(rep, 0, kTable2, 0.005, &total, &ok, &notes);
        char head[128];
        std::snprintf(head, sizeof head, "%d/%d values within +/-0.005", ok, total);
        notes.insert(notes.begin(), head);
        if (!pass)
            notes.push_back(
                "note: the rho=0.5 reference columns of the two-bucket table duplicate the "
                "five-bucket table's rho=0.5 columns and contradict the stated correlation "
                "monotonicity; the engine's two-bucket rho=0.5 cells are cross-validated "
                "against simulation in the unit suite instead");
        report(1, "two-bucket table reproduction to +/-0.005", pass, notes);
    }

    // 2. five-bucket table reproduction
    {
        std::vector<std::string> notes;
        int total = 0, ok = 0;
        bool pass = check_table(rep, 1, kTable3, 0.005, &total, &ok, &notes);
        char head[128];
        std::snprintf(head, sizeof head, "%d/%d values within +/-0.005", ok, total);
        notes.insert(notes.begin(), head);
        const CellResult* c1 = find_cell(rep, 1, 1, 0.99, 0.0);
        const CellResult* c2 = find_cell(rep, 1, 3, 0.99, 0.0);
        if (c1 && c2) {
            char buf[120];
            std::snprintf(buf, sizeof buf,
                          "highlighted ratios: t/rho=0/0.99 -> %.3f (ref 0.837), "
                          "nig/rho=0/0.99 -> %.3f (ref 0.768)",
                          c1->report.ratio, c2->report.ratio);
            notes.push_back(buf);
        }
        report(2, "five-bucket table reproduction to +/-0.005", pass, notes);
    }

    // 3. gaussian exactness
    {
        bool pass = true;
        std::vector<std::string> notes;
        for (std::size_t gi = 0; gi < 2; ++gi)
            for (double alpha : kAlphas)
                for (double rho : kRhos) {
                    const CellResult* cell = find_cell(rep, gi, 0, alpha, rho);
                    if (!cell || !cell->ok || std::fabs(cell->report.ratio - 1.0) > 1e-6) {
                        pass = false;
                        notes.push_back("gaussian ratio deviates from 1");
                    }
                }
        for (double alpha : kAlphas) {
            const CellResult* cell = find_cell(rep, 0, 0, alpha, 0.0);
            double want = oracles::normal_es(alpha);
            if (!cell || std::fabs(cell->report.c_base - want) > 1e-8) {
                pass = false;
                char buf[120];
                std::snprintf(buf, sizeof buf, "c_base(%.3f) = %.10f vs phi(q)/(1-a) = %.10f",
                              alpha, cell ? cell->report.c_base : 0.0, want);
                notes.push_back(buf);
            }
        }
        notes.push_back("reference constants: 2.0627, 2.3378, 2.6652");
        report(3, "gaussian ratios equal 1 within 1e-6 and c_base matches the closed form "
                  "within 1e-8", pass, notes);
    }

    // 4. closed-form t shortfall oracle
    {
        bool pass = true;
        std::vector<std::string> notes;
        for (double nu : {2.92, 5.0, 10.0}) {
            auto g = make_generator(GHParams::student_t(nu));
            for (double alpha : kAlphas) {
                double es = expected_shortfall(g, alpha, config.inversion);
                double want = oracles::t_es(nu, alpha);
                double rel = std::fabs(es - want) / want;
                if (rel > 1e-5) {
                    pass = false;
                    char buf[120];
                    std::snprintf(buf, sizeof buf, "t(nu=%.2f, alpha=%.3f): rel err %.2e",
                                  nu, alpha, rel);
                    notes.push_back(buf);
                }
            }
        }
        report(4, "Fourier shortfall matches the analytic t formula to 1e-5 relative", pass,
               notes);
    }

    // 5. distribution function against the error-function form
    {
        bool pass = true;
        std::vector<std::string> notes;
        auto g = make_generator(GHParams::gauss());
        for (double y : {0.0, 0.5, 1.0, 2.0, 3.0}) {
            for (double sign : {1.0, -1.0}) {
                double got = cdf(g, sign * y, config.inversion);
                double want = oracles::normal_cdf(sign * y);
                if (std::fabs(got - want) > 1e-8) {
                    pass = false;
                    char buf[100];
                    std::snprintf(buf, sizeof buf, "y=%+.1f: |diff| = %.2e", sign * y,
                                  std::fabs(got - want));
                    notes.push_back(buf);
                }
            }
        }
        report(5, "Gil-Pelaez distribution function matches the normal cdf within 1e-8",
               pass, notes);
    }

    // 6. Monte Carlo cross-validation
    {
        bool pass = true;
        std::vector<std::string> notes;
        double t0 = now_seconds();
        auto spec = make_single_factor_spec({1, 2, 4, 6, 12}, 0.5);
        for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
            auto gen = make_generator(config.models[mi]);
            McCheckRow row = mc_check_cell(gen, config.models[mi], spec, 0.975, 1'000'000,
                                           918273 + mi, config.inversion);
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "%-6s fourier %.5f  mc %.5f  se %.5f  z %+0.2f  (%zu tail)",
                          kModelNames[mi], row.fourier_es, row.mc_es, row.std_error, row.z,
                          row.n_tail);
            notes.push_back(buf);
            if (row.flagged) pass = false;
        }
        char buf[80];
        std::snprintf(buf, sizeof buf, "elapsed %.1f s (budget 300 s)", now_seconds() - t0);
        notes.push_back(buf);
        if (now_seconds() - t0 > 300.0) pass = false;
        report(6, "simulation agrees with the engine within 3 standard errors at 1e6 paths",
               pass, notes);
    }

    // 7. property suite
    {
        bool pass = true;
        std::vector<std::string> notes;
        // characteristic-function invariants
        for (const auto& p : config.models) {
            auto g = make_generator(p);
            if (g.eval(0.0) != 1.0) pass = false;
            for (double s = 1e-4; s <= 1e4; s *= 10.0)
                if (!(g.eval(s) <= 1.0 && g.eval(s) >= 0.0)) pass = false;
        }
        if (!pass) notes.push_back("characteristic-function bounds violated");
        // truncated-mean additivity and antisymmetry
        auto t = make_generator(GHParams::student_t(2.92));
        double ab = truncated_mean(t, 0.5, 1.5, config.inversion);
        double bc = truncated_mean(t, 1.5, 4.0, config.inversion);
        double ac = truncated_mean(t, 0.5, 4.0, config.inversion);
        bool add_ok = std::fabs(ab + bc - ac) <= 1e-9 &&
                      std::fabs(truncated_mean(t, -4.0, -0.5, config.inversion) + ac) <= 1e-9;
        if (!add_ok) {
            pass = false;
            notes.push_back("truncated-mean additivity/antisymmetry failed");
        }
        // beta telescoping
        auto spec = make_single_factor_spec({1, 2, 4, 6, 12}, 0.5);
        auto loads = build_loads(spec);
        for (std::size_t k = 0; k + 1 < spec.buckets(); ++k)
            for (std::size_t i = 0; i < spec.factors(); ++i)
                if (loads.betas[k][i] - loads.betas[k + 1][i] != spec.weights[k][i])
                    pass = false;
        // published weight vectors
        auto w0 = build_loads(make_single_factor_spec({1, 2, 4, 6, 12}, 0.0)).quadforms;
        auto w5 = loads.quadforms;
        if (w0 != std::vector<double>{5, 4, 3, 2, 1} ||
            w5 != std::vector<double>{15, 10, 6, 3, 1}) {
            pass = false;
            notes.push_back("equicorrelation weight vectors do not match (5,4,3,2,1)/(15,10,6,3,1)");
        }
        // seed determinism
        auto a = estimate_loss_es(spec, GHParams::vg(0.95), 0.975, 20'000, 12345);
        auto b = estimate_loss_es(spec, GHParams::vg(0.95), 0.975, 20'000, 12345);
        if (a.es != b.es || a.std_error != b.std_error) {
            pass = false;
            notes.push_back("equal seeds did not reproduce bit-identical estimates");
        }
        report(7, "property suite (cf bounds, truncated-mean identities, telescoping, "
                  "weights, determinism)", pass, notes);
    }

    // 8. overstatement headline
    {
        const CellResult* cell = find_cell(rep, 1, 3, 0.975, 0.0);  // nig, 5-bucket, rho=0
        bool pass = cell != nullptr && cell->ok;
        std::vector<std::string> notes;
        if (pass) {
            double ratio = cell->report.ratio;
            double over = (1.0 / ratio - 1.0) * 100.0;
            char buf[120];
            std::snprintf(buf, sizeof buf, "ratio %.4f (ref 0.837 +/- 0.005), overstatement "
                          "%.2f%% (ref 19.4 +/- 0.8)", ratio, over);
            notes.push_back(buf);
            pass = std::fabs(ratio - 0.837) <= 0.005 && std::fabs(over - 19.4) <= 0.8;
        }
        report(8, "nig five-bucket rho=0 headline: ratio 0.837 and ~19.4% overstatement",
               pass, notes);
    }

    std::printf("\n%d/8 criteria passed, total %.1f s\n", 8 - g_failures, now_seconds());
    return g_failures;
}
