#include "lqes/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace lqes {

namespace {

using nlohmann::json;

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, count == 0 ? 1 : static_cast<unsigned>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

// half-even to 3 decimals for the text tables (nearbyint honors the default
// to-nearest-even rounding mode)
double round3(double x) { return std::nearbyint(x * 1000.0) / 1000.0; }

std::string fixed3(double x) {
    double r = round3(x);
    if (r == 0.0) r = 0.0;  // avoid "-0.000"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", r);
    return buf;
}

std::string full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

GHParams model_from_json(const json& j) {
    std::string family = j.at("family").get<std::string>();
    if (family == "gauss") return GHParams::gauss();
    if (family == "t") {
        if (j.contains("nu")) return GHParams::student_t(j.at("nu").get<double>());
        return GHParams::student_t(-2.0 * j.at("lambda").get<double>());
    }
    if (family == "vg") return GHParams::vg(j.at("lambda").get<double>());
    if (family == "nig") return GHParams::nig(j.at("theta").get<double>());
    if (family == "hyp") return GHParams::hyp(j.at("theta").get<double>());
    if (family == "gig")
        return GHParams::gig(j.at("lambda").get<double>(), j.at("chi").get<double>(),
                             j.at("kappa").get<double>());
    throw std::invalid_argument("config: unknown family '" + family + "'");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (models.empty()) throw std::invalid_argument("config: no models");
    if (alphas.empty()) throw std::invalid_argument("config: no alphas");
    if (grids.empty()) throw std::invalid_argument("config: no bucket grids");
    for (double a : alphas)
        if (!(a > 0.5 && a < 1.0))
            throw std::invalid_argument("config: alphas must lie in (0.5, 1)");
    for (const auto& m : models) m.validate();
    for (const auto& g : grids) {
        if (g.horizons.empty() || g.rhos.empty())
            throw std::invalid_argument("config: grid '" + g.name + "' is empty");
        for (double rho : g.rhos) make_single_factor_spec(g.horizons, rho);
    }
    inversion.validate();
}

ExperimentConfig default_experiment_config() {
    ExperimentConfig cfg;
    cfg.models = {GHParams::gauss(), GHParams::student_t(2.92), GHParams::vg(0.95),
                  GHParams::nig(0.49), GHParams::hyp(0.11)};
    cfg.alphas = {0.95, 0.975, 0.99};
    cfg.grids = {{"2-bucket", {1, 2}, {0.0, 0.5}},
                 {"5-bucket", {1, 2, 4, 6, 12}, {0.0, 0.5}}};
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error in " + path + ": " + e.what());
    }
    ExperimentConfig cfg = default_experiment_config();
    if (j.contains("models")) {
        cfg.models.clear();
        for (const auto& m : j.at("models")) cfg.models.push_back(model_from_json(m));
    }
    if (j.contains("alphas")) cfg.alphas = j.at("alphas").get<std::vector<double>>();
    if (j.contains("grids")) {
        cfg.grids.clear();
        for (const auto& g : j.at("grids")) {
            BucketGrid grid;
            grid.name = g.value("name", "grid-" + std::to_string(cfg.grids.size() + 1));
            grid.horizons = g.at("horizons").get<std::vector<int>>();
            grid.rhos = g.value("rhos", std::vector<double>{0.0});
            cfg.grids.push_back(std::move(grid));
        }
    }
    if (j.contains("inversion")) {
        const auto& s = j.at("inversion");
        cfg.inversion.trunc_eps = s.value("trunc_eps", cfg.inversion.trunc_eps);
        cfg.inversion.quad_rel_tol = s.value("quad_rel_tol", cfg.inversion.quad_rel_tol);
        cfg.inversion.quad_abs_tol = s.value("quad_abs_tol", cfg.inversion.quad_abs_tol);
        cfg.inversion.b_growth = s.value("b_growth", cfg.inversion.b_growth);
        cfg.inversion.b_initial = s.value("b_initial", cfg.inversion.b_initial);
        cfg.inversion.b_stop_tol = s.value("b_stop_tol", cfg.inversion.b_stop_tol);
        cfg.inversion.root_tol = s.value("root_tol", cfg.inversion.root_tol);
        cfg.inversion.max_iter = s.value("max_iter", cfg.inversion.max_iter);
    }
    if (j.contains("format")) {
        std::string f = j.at("format").get<std::string>();
        if (f == "text")
            cfg.format = OutputFormat::Text;
        else if (f == "csv")
            cfg.format = OutputFormat::Csv;
        else if (f == "json")
            cfg.format = OutputFormat::Json;
        else
            throw std::invalid_argument("config: unknown format '" + f + "'");
    }
    cfg.threads = j.value("threads", cfg.threads);
    cfg.validate();
    return cfg;
}

bool TableReport::all_ok() const {
    for (const auto& c : cells)
        if (!c.ok) return false;
    return true;
}

TableReport run_tables(const ExperimentConfig& config) {
    config.validate();
    TableReport report;
    report.config = config;

    // enumerate cells in deterministic grid order
    for (std::size_t gi = 0; gi < config.grids.size(); ++gi)
        for (std::size_t mi = 0; mi < config.models.size(); ++mi)
            for (double alpha : config.alphas)
                for (double rho : config.grids[gi].rhos) {
                    CellResult cell;
                    cell.grid_index = gi;
                    cell.model_index = mi;
                    cell.alpha = alpha;
                    cell.rho = rho;
                    report.cells.push_back(std::move(cell));
                }

    std::vector<CharacteristicGenerator> gens;
    gens.reserve(config.models.size());
    for (const auto& m : config.models) gens.push_back(make_generator(m));

    // base-law shortfalls shared across correlation columns and grids:
    // one per (model, alpha, h1)
    struct BaseKey {
        std::size_t model;
        double alpha;
        int h1;
        bool operator<(const BaseKey& o) const {
            return std::tie(model, alpha, h1) < std::tie(o.model, o.alpha, o.h1);
        }
    };
    struct BaseVal {
        double es = 0.0;
        std::string error;
    };
    std::map<BaseKey, BaseVal> bases;
    for (const auto& cell : report.cells)
        bases.emplace(
            BaseKey{cell.model_index, cell.alpha, config.grids[cell.grid_index].horizons[0]},
            BaseVal{});
    std::vector<std::pair<const BaseKey*, BaseVal*>> base_tasks;
    base_tasks.reserve(bases.size());
    for (auto& kv : bases) base_tasks.emplace_back(&kv.first, &kv.second);

    parallel_for(base_tasks.size(), config.threads, [&](std::size_t i) {
        const BaseKey& key = *base_tasks[i].first;
        BaseVal& val = *base_tasks[i].second;
        try {
            val.es = expected_shortfall(power_generator(gens[key.model], key.h1), key.alpha,
                                        config.inversion);
        } catch (const std::exception& e) {
            val.error = e.what();
        }
    });

    parallel_for(report.cells.size(), config.threads, [&](std::size_t i) {
        CellResult& cell = report.cells[i];
        const BucketGrid& grid = config.grids[cell.grid_index];
        const BaseVal& base = bases.at(BaseKey{cell.model_index, cell.alpha, grid.horizons[0]});
        if (!base.error.empty()) {
            cell.error = "base law: " + base.error;
            return;
        }
        try {
            LiquiditySpec spec = make_single_factor_spec(grid.horizons, cell.rho);
            cell.report = scaling_ratio(spec, gens[cell.model_index], cell.alpha, base.es,
                                        config.inversion);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    });
    return report;
}

std::string render_text(const TableReport& report) {
    std::ostringstream out;
    const auto& cfg = report.config;
    for (std::size_t gi = 0; gi < cfg.grids.size(); ++gi) {
        const auto& grid = cfg.grids[gi];
        out << "== " << grid.name << "  h=(";
        for (std::size_t k = 0; k < grid.horizons.size(); ++k)
            out << grid.horizons[k] << (k + 1 < grid.horizons.size() ? "," : ")");
        out << " ==\n";
        out << "(c_base = ES/sd of the base-horizon law, c_agg = ES/sd of the aggregate loss,"
               " ratio = c_agg/c_base)\n";
        // header
        out << "model            quantity ";
        for (double alpha : cfg.alphas)
            for (double rho : grid.rhos) {
                char buf[40];
                std::snprintf(buf, sizeof buf, " a=%.3f/r=%.2f", alpha, rho);
                out << buf;
            }
        out << '\n';
        std::vector<std::string> failures;
        for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
            const char* row_name[3] = {"c_base", "c_agg", "ratio"};
            for (int row = 0; row < 3; ++row) {
                char head[40];
                std::snprintf(head, sizeof head, "%-16s %-8s ",
                              row == 0 ? cfg.models[mi].label().c_str() : "", row_name[row]);
                out << head;
                for (double alpha : cfg.alphas)
                    for (double rho : grid.rhos) {
                        const CellResult* cell = nullptr;
                        for (const auto& c : report.cells)
                            if (c.grid_index == gi && c.model_index == mi &&
                                c.alpha == alpha && c.rho == rho)
                                cell = &c;
                        char buf[40];
                        if (cell == nullptr || !cell->ok) {
                            std::snprintf(buf, sizeof buf, " %14s", "err");
                            if (cell && row == 0)
                                failures.push_back(cfg.models[mi].label() + ": " + cell->error);
                        } else {
                            double v = row == 0   ? cell->report.c_base
                                       : row == 1 ? cell->report.c_agg
                                                  : cell->report.ratio;
                            std::snprintf(buf, sizeof buf, " %14s", fixed3(v).c_str());
                        }
                        out << buf;
                    }
                out << '\n';
            }
        }
        for (const auto& f : failures) out << "  failed: " << f << '\n';
        out << '\n';
    }
    return out.str();
}

std::string render_csv(const TableReport& report) {
    std::ostringstream out;
    out << "grid,model,alpha,rho,c_base,c_agg,ratio,es_basel,es_generalized,error\n";
    for (const auto& c : report.cells) {
        const auto& cfg = report.config;
        out << cfg.grids[c.grid_index].name << ',' << cfg.models[c.model_index].label() << ','
            << full(c.alpha) << ',' << full(c.rho) << ',';
        if (c.ok)
            out << full(c.report.c_base) << ',' << full(c.report.c_agg) << ','
                << full(c.report.ratio) << ',' << full(c.report.es_basel) << ','
                << full(c.report.es_generalized) << ',';
        else
            out << ",,,,,\"" << c.error << '"';
        out << '\n';
    }
    return out.str();
}

std::string render_json(const TableReport& report) {
    json root;
    root["grids"] = json::array();
    const auto& cfg = report.config;
    for (std::size_t gi = 0; gi < cfg.grids.size(); ++gi) {
        json jg;
        jg["name"] = cfg.grids[gi].name;
        jg["horizons"] = cfg.grids[gi].horizons;
        jg["cells"] = json::array();
        for (const auto& c : report.cells) {
            if (c.grid_index != gi) continue;
            json jc;
            jc["model"] = cfg.models[c.model_index].label();
            jc["alpha"] = c.alpha;
            jc["rho"] = c.rho;
            if (c.ok) {
                jc["c_base"] = c.report.c_base;
                jc["c_agg"] = c.report.c_agg;
                jc["ratio"] = c.report.ratio;
                jc["es_basel"] = c.report.es_basel;
                jc["es_generalized"] = c.report.es_generalized;
                jc["component_es"] = c.report.component_es;
            } else {
                jc["error"] = c.error;
            }
            jg["cells"].push_back(std::move(jc));
        }
        root["grids"].push_back(std::move(jg));
    }
    return root.dump(2) + "\n";
}

std::string render_single(const RiskReport& r) {
    std::ostringstream out;
    out << "model:            " << r.model << '\n';
    out << "alpha:            " << full(r.alpha) << '\n';
    out << "dispersion:       " << r.omega_descriptor << '\n';
    out << "c_base:           " << full(r.c_base) << '\n';
    out << "c_agg:            " << full(r.c_agg) << '\n';
    out << "ratio:            " << full(r.ratio) << '\n';
    out << "es_basel:         " << full(r.es_basel) << '\n';
    out << "es_generalized:   " << full(r.es_generalized) << '\n';
    out << "overstatement:    " << fixed3((1.0 / r.ratio - 1.0) * 100.0) << "%\n";
    out << "component_es:    ";
    for (double e : r.component_es) out << ' ' << full(e);
    out << '\n';
    return out.str();
}

McCheckRow mc_check_cell(const CharacteristicGenerator& gen, const GHParams& mc_params,
                         const LiquiditySpec& spec, double alpha, std::size_t paths,
                         std::uint64_t seed, const InversionSettings& cfg) {
    McCheckRow row;
    row.model = gen.label();
    row.alpha = alpha;
    row.grid = spec.descriptor;
    double fourier_es = expected_shortfall(loss_generator(spec, gen), alpha, cfg);
    McEstimate mc = estimate_loss_es(spec, mc_params, alpha, paths, seed);
    row.fourier_es = fourier_es;
    row.mc_es = mc.es;
    row.std_error = mc.std_error;
    row.n_tail = mc.n_tail;
    row.z = (fourier_es - mc.es) / mc.std_error;
    row.flagged = std::fabs(row.z) > 3.0;
    return row;
}

std::vector<McCheckRow> run_mc_check(const ExperimentConfig& config, std::size_t paths,
                                     std::uint64_t seed) {
    config.validate();
    std::vector<McCheckRow> rows;
    std::vector<CharacteristicGenerator> gens;
    for (const auto& m : config.models) gens.push_back(make_generator(m));
    struct Task {
        std::size_t gi, mi;
        double alpha, rho;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < config.grids.size(); ++gi)
        for (std::size_t mi = 0; mi < config.models.size(); ++mi)
            for (double alpha : config.alphas)
                for (double rho : config.grids[gi].rhos) tasks.push_back({gi, mi, alpha, rho});
    rows.resize(tasks.size());
    parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
        const Task& t = tasks[i];
        McCheckRow& row = rows[i];
        try {
            LiquiditySpec spec = make_single_factor_spec(config.grids[t.gi].horizons, t.rho);
            row = mc_check_cell(gens[t.mi], config.models[t.mi], spec, t.alpha, paths, seed,
                                config.inversion);
            row.grid = config.grids[t.gi].name + " " + spec.descriptor;
            row.rho = t.rho;
        } catch (const std::exception& e) {
            row.model = config.models[t.mi].label();
            row.grid = config.grids[t.gi].name;
            row.alpha = t.alpha;
            row.rho = t.rho;
            row.error = e.what();
            row.flagged = true;
        }
    });
    return rows;
}

std::string render_mc(const std::vector<McCheckRow>& rows) {
    std::ostringstream out;
    out << "grid                 model            alpha   fourier_es      mc_es          se     "
           "   z  n_tail  status\n";
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "%-20s %-16s %.3f  error: %s\n", r.grid.c_str(),
                          r.model.c_str(), r.alpha, r.error.c_str());
            out << buf;
            continue;
        }
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "%-20s %-16s %.3f %12.6f %10.6f %11.6f %7.2f %7zu  %s\n", r.grid.c_str(),
                      r.model.c_str(), r.alpha, r.fourier_es, r.mc_es, r.std_error, r.z,
                      r.n_tail, r.flagged ? "FLAG |z|>3" : "ok");
        out << buf;
    }
    return out.str();
}

}  // namespace lqes
