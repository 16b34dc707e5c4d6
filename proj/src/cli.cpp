#include "frackac/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "frackac/csv.hpp"
#include "frackac/errors.hpp"
#include "frackac/parallel.hpp"

namespace frackac::cli {

namespace {

using json = nlohmann::json;


// One object of the configuration file. Tracks which keys were read so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& root, std::string name) : name_(std::move(name)) {
        if (!root.contains(name_)) return;
        const json& j = root.at(name_);
        if (!j.is_object()) throw ConfigError(name_ + ": expected an object");
        obj_ = &j;
    }

    std::string field(std::string_view key) const { return name_ + "." + std::string(key); }

    const json* find(const char* key) {
        seen_.insert(key);
        if (!obj_ || !obj_->contains(key)) return nullptr;
        return &obj_->at(key);
    }

    std::optional<double> number(const char* key) {
        const json* j = find(key);
        if (!j) return std::nullopt;
        if (!j->is_number()) throw ConfigError(field(key) + ": expected a number");
        const double v = j->get<double>();
        if (!std::isfinite(v)) throw ConfigError(field(key) + ": must be finite");
        return v;
    }

    std::optional<std::uint64_t> count(const char* key) {
        const json* j = find(key);
        if (!j) return std::nullopt;
        if (!j->is_number_unsigned()) throw ConfigError(field(key) + ": expected a non-negative integer");
        return j->get<std::uint64_t>();
    }

    std::optional<std::string> text(const char* key) {
        const json* j = find(key);
        if (!j) return std::nullopt;
        if (!j->is_string()) throw ConfigError(field(key) + ": expected a string");
        return j->get<std::string>();
    }

    std::optional<std::vector<double>> numbers(const char* key) {
        const json* j = find(key);
        if (!j) return std::nullopt;
        return as_numbers(*j, field(key));
    }

    void finish() const {
        if (!obj_) return;
        for (const auto& item : obj_->items())
            if (!seen_.count(item.key())) throw ConfigError(field(item.key()) + ": unknown key");
    }

    static std::vector<double> as_numbers(const json& j, const std::string& where) {
        if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
        std::vector<double> v;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected a number");
            v.push_back(j[i].get<double>());
            if (!std::isfinite(v.back())) throw ConfigError(where + "[" + std::to_string(i) + "]: must be finite");
        }
        return v;
    }

private:
    std::string name_;
    const json* obj_ = nullptr;
    std::set<std::string> seen_;
};

std::vector<geometry::PolarStar::Mode> modes(const json& j, const std::string& where);

geometry::Domain parse_domain(const json& j) {
    const std::string where = "problem.domain";
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "hailstone") return geometry::Domain::hailstone();
        if (name == "l_shape") return geometry::Domain::l_shape();
        throw ConfigError(where + ": unknown domain '" + name + "'");
    }
    if (!j.is_object()) throw ConfigError(where + ": expected a string or an object");
    const json root{{"problem.domain", j}};
    Section s(root, where);
    const auto kind = s.text("kind");
    if (!kind) throw ConfigError(where + ".kind: required");
    std::optional<geometry::Domain> domain;
    try {
        if (*kind == "ball") {
            const auto center = s.numbers("center");
            if (!center) throw ConfigError(where + ".center: required");
            domain.emplace(geometry::Ball{*center, s.number("radius").value_or(1.0)});
        } else if (*kind == "hyper_rectangle") {
            const auto lower = s.numbers("lower");
            const auto upper = s.numbers("upper");
            if (!lower || !upper) throw ConfigError(where + ": hyper_rectangle needs lower and upper");
            domain.emplace(geometry::HyperRectangle{*lower, *upper});
        } else if (*kind == "polar_star") {
            geometry::PolarStar star;
            star.base = s.number("base").value_or(1.0);
            if (const json* m = s.find("sine")) star.sine = modes(*m, where + ".sine");
            if (const json* m = s.find("cosine")) star.cosine = modes(*m, where + ".cosine");
            domain.emplace(star);
        } else if (*kind == "l_shape") {
            domain.emplace(geometry::LShape{});
        } else if (*kind == "hailstone") {
            domain.emplace(geometry::Domain::hailstone());
        } else {
            throw ConfigError(where + ".kind: unknown domain '" + *kind + "'");
        }
    } catch (const Error& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0) throw;
        throw ConfigError(where + ": " + msg);
    }
    s.finish();
    return *domain;
}

std::vector<geometry::PolarStar::Mode> modes(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of [k, amplitude] pairs");
    std::vector<geometry::PolarStar::Mode> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& m = j[i];
        if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer() || !m[1].is_number())
            throw ConfigError(where + "[" + std::to_string(i) + "]: expected [k, amplitude]");
        out.push_back({m[0].get<int>(), m[1].get<double>()});
    }
    return out;
}

json domain_json(const geometry::Domain& domain) {
    struct Visitor {
        json operator()(const geometry::Ball& b) const {
            return {{"kind", "ball"}, {"center", b.center}, {"radius", b.radius}};
        }
        json operator()(const geometry::LShape&) const { return {{"kind", "l_shape"}}; }
        json operator()(const geometry::PolarStar& s) const {
            json sine = json::array();
            json cosine = json::array();
            for (const auto& m : s.sine) sine.push_back({m.k, m.amplitude});
            for (const auto& m : s.cosine) cosine.push_back({m.k, m.amplitude});
            return {{"kind", "polar_star"}, {"base", s.base}, {"sine", sine}, {"cosine", cosine}};
        }
        json operator()(const geometry::HyperRectangle& r) const {
            return {{"kind", "hyper_rectangle"}, {"lower", r.lower}, {"upper", r.upper}};
        }
    };
    return std::visit(Visitor{}, domain.shape());
}

template <typename T>
void require(bool ok, const std::string& field, const std::string& message, T value) {
    if (ok) return;
    std::ostringstream os;
    os.precision(17);
    os << field << ": " << message << " (got " << value << ")";
    throw ConfigError(os.str());
}

void parse_line_column(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

double solve_time(const RunConfig& c) { return c.solve_time.value_or(c.horizon); }
double harness_time(const RunConfig& c) { return c.harness_time.value_or(c.horizon); }
std::vector<double> field_times(const RunConfig& c) {
    return c.times.empty() ? std::vector<double>{c.horizon} : c.times;
}

void check_time(double t, const RunConfig& c, const std::string& field) {
    require(t > 0.0 && t <= c.horizon, field, "must lie in (0, problem.horizon]", t);
}

json config_json(const RunConfig& c, Command command) {
    json j;
    j["command"] = std::string(command_name(command));
    j["problem"] = {{"name", c.problem}, {"alpha", c.alpha}, {"beta", c.beta}, {"dim", c.dim}, {"horizon", c.horizon}};
    if (c.domain) j["problem"]["domain"] = domain_json(*c.domain);
    j["solver"] = {{"dt", c.solver.dt},
                   {"num_paths", c.solver.num_paths},
                   {"seed", c.solver.master_seed},
                   {"max_steps", c.solver.max_steps},
                   {"workers", c.solver.workers}};
    switch (command) {
        case Command::solve:
            j["solve"] = {{"time", solve_time(c)}, {"points", c.points}};
            break;
        case Command::convergence:
            j["harness"] = {{"time", harness_time(c)},
                            {"num_eval_points", c.num_eval_points},
                            {"eval_seed", c.eval_seed},
                            {"axis", std::string(harness::axis_name(c.axis))},
                            {"values", c.values}};
            break;
        case Command::field:
            j["field"] = {{"times", field_times(c)}, {"resolution", c.resolution}};
            if (c.grid_lower) j["field"]["lower"] = *c.grid_lower;
            if (c.grid_upper) j["field"]["upper"] = *c.grid_upper;
            break;
    }
    j["output"] = {{"dir", c.out_dir}};
    j["sources"] = c.sources;
    return j;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("output.dir: cannot write " + path.string());
    return f;
}

void write_metadata(const std::filesystem::path& path, json meta) {
    auto f = open_output(path);
    f << meta.dump(2) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_solve(const RunConfig& c, const problems::Problem& problem, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const double t = solve_time(c);
    const auto estimates = solver::estimate_field(problem, t, c.points, c.solver);
    const std::filesystem::path dir(c.out_dir);
    {
        auto f = open_output(dir / "solve.csv");
        auto header = csv::numbered("x", problem.dim());
        header.insert(header.begin(), "t");
        header.insert(header.end(), {"estimate", "std_error", "num_paths", "num_errors"});
        csv::write_row(f, header);
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            std::vector<std::string> row{csv::format(t)};
            for (double x : c.points[i]) row.push_back(csv::format(x));
            row.push_back(csv::format(estimates[i].mean));
            row.push_back(csv::format(estimates[i].std_error));
            row.push_back(std::to_string(estimates[i].num_paths));
            row.push_back(std::to_string(estimates[i].num_errors));
            csv::write_row(f, row);
        }
    }
    json meta{{"config", config_json(c, Command::solve)}, {"wall_time_seconds", seconds_since(start)}};
    write_metadata(dir / "solve.json", meta);
    out << "wrote " << (dir / "solve.csv").string() << " (" << estimates.size() << " points)\n";
}

void run_convergence(const RunConfig& c, const problems::Problem& problem, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto table =
        harness::sweep(problem, harness_time(c), c.solver, c.axis, c.values, c.num_eval_points, c.eval_seed);
    const std::filesystem::path dir(c.out_dir);
    {
        auto f = open_output(dir / "convergence.csv");
        harness::write_table_csv(f, table);
    }
    std::filesystem::create_directories(dir / "reports");
    json rows = json::array();
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto& row = table.rows[k];
        const auto name = "report_" + std::to_string(k) + ".csv";
        auto f = open_output(dir / "reports" / name);
        harness::write_report_csv(f, row.report);
        rows.push_back({{"axis_value", row.axis_value},
                        {"l2_error", row.l2_error},
                        {"noise_level", row.report.noise_level},
                        {"num_errors", row.report.num_errors},
                        {"report", "reports/" + name}});
    }
    json meta{{"config", config_json(c, Command::convergence)},
              {"axis", std::string(harness::axis_name(table.axis))},
              {"fitted_slope", table.fitted_slope},
              {"slope_stderr", table.slope_stderr},
              {"intercept", table.intercept},
              {"rows", rows},
              {"wall_time_seconds", seconds_since(start)}};
    write_metadata(dir / "convergence.json", meta);
    out << "wrote " << (dir / "convergence.csv").string() << " slope " << csv::format(table.fitted_slope)
        << " +- " << csv::format(table.slope_stderr) << '\n';
}

void run_field(const RunConfig& c, const problems::Problem& problem, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = field_grid(c, problem);
    const std::filesystem::path dir(c.out_dir);
    json files = json::array();
    for (double t : field_times(c)) {
        const auto estimates = solver::estimate_field(problem, t, grid, c.solver);
        const auto name = "field_t" + csv::format(t) + ".csv";
        auto f = open_output(dir / name);
        csv::write_row(f, {"x1", "x2", "estimate"});
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv::write_row(f, {csv::format(grid[i][0]), csv::format(grid[i][1]), csv::format(estimates[i].mean)});
        files.push_back(name);
        out << "wrote " << (dir / name).string() << " (" << grid.size() << " points)\n";
    }
    json meta{{"config", config_json(c, Command::field)},
              {"files", files},
              {"grid_points", grid.size()},
              {"wall_time_seconds", seconds_since(start)}};
    write_metadata(dir / "field.json", meta);
}

int exit_status(std::string_view code) {
    if (code == "usage") return 2;
    if (code == "config") return 3;
    if (code == "domain") return 4;
    if (code == "numeric") return 5;
    if (code == "trajectory") return 6;
    if (code == "analysis") return 7;
    return 1;
}

std::size_t parse_workers(const std::string& text, const std::string& where) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty() || v == 0)
        throw ConfigError(where + ": expected a positive integer (got '" + text + "')");
    return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view command_name(Command command) {
    switch (command) {
        case Command::solve: return "solve";
        case Command::convergence: return "convergence";
        case Command::field: return "field";
    }
    return "solve";
}

RunConfig parse_config(std::string_view text, std::string_view source_name) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 0;
        std::size_t column = 0;
        parse_line_column(text, e.byte, line, column);
        std::string msg = e.what();
        if (const auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
        throw ConfigError(std::string(source_name) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": syntax error: " + msg);
    }
    if (!root.is_object()) throw ConfigError(std::string(source_name) + ": top level must be an object");
    for (const auto& item : root.items()) {
        static const std::set<std::string> known{"problem", "solver", "solve", "harness", "field", "output"};
        if (!known.count(item.key())) throw ConfigError(item.key() + ": unknown section");
    }

    RunConfig c;
    c.solver.workers = available_parallelism();
    c.sources = {{"seed", "default"}, {"workers", "default"}, {"out_dir", "default"}};

    Section problem(root, "problem");
    if (auto v = problem.text("name")) c.problem = *v;
    if (auto v = problem.number("alpha")) c.alpha = *v;
    if (auto v = problem.number("beta")) c.beta = *v;
    if (const json* j = problem.find("dim")) {
        if (!j->is_number_unsigned()) throw ConfigError("problem.dim: expected a positive integer");
        c.dim = j->get<int>();
    }
    if (auto v = problem.number("horizon")) c.horizon = *v;
    if (const json* j = problem.find("domain")) c.domain = parse_domain(*j);
    problem.finish();
    require(c.alpha > 0.0 && c.alpha <= 2.0, "problem.alpha", "must lie in (0, 2]", c.alpha);
    require(c.beta > 0.0 && c.beta <= 1.0, "problem.beta", "must lie in (0, 1]", c.beta);
    require(c.dim >= 2, "problem.dim", "must be at least 2", c.dim);
    require(c.horizon > 0.0, "problem.horizon", "must be positive", c.horizon);

    Section sol(root, "solver");
    if (auto v = sol.number("dt")) c.solver.dt = *v;
    if (auto v = sol.count("num_paths")) c.solver.num_paths = *v;
    if (auto v = sol.count("seed")) {
        c.solver.master_seed = *v;
        c.sources["seed"] = "file";
    }
    if (auto v = sol.count("max_steps")) c.solver.max_steps = *v;
    if (auto v = sol.count("workers")) {
        c.solver.workers = *v;
        c.sources["workers"] = "file";
    }
    sol.finish();
    require(c.solver.dt > 0.0, "solver.dt", "must be positive", c.solver.dt);
    require(c.solver.num_paths >= 1, "solver.num_paths", "must be at least 1", c.solver.num_paths);
    require(c.solver.workers >= 1, "solver.workers", "must be at least 1", c.solver.workers);

    Section solve(root, "solve");
    c.solve_time = solve.number("time");
    if (const json* j = solve.find("points")) {
        if (!j->is_array()) throw ConfigError("solve.points: expected an array of points");
        for (std::size_t i = 0; i < j->size(); ++i)
            c.points.push_back(Section::as_numbers((*j)[i], "solve.points[" + std::to_string(i) + "]"));
    }
    solve.finish();

    Section h(root, "harness");
    c.harness_time = h.number("time");
    if (auto v = h.count("num_eval_points")) c.num_eval_points = *v;
    if (auto v = h.count("eval_seed")) c.eval_seed = *v;
    if (auto v = h.text("axis")) {
        try {
            c.axis = harness::parse_axis(*v);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("harness.axis: ") + e.what());
        }
    }
    if (auto v = h.numbers("values")) c.values = *v;
    h.finish();
    require(c.num_eval_points >= 1, "harness.num_eval_points", "must be at least 1", c.num_eval_points);

    Section f(root, "field");
    if (auto v = f.numbers("times")) c.times = *v;
    if (auto v = f.count("resolution")) {
        require(*v >= 1 && *v <= 100000, "field.resolution", "must lie in [1, 100000]", *v);
        c.resolution = static_cast<int>(*v);
    }
    c.grid_lower = f.numbers("lower");
    c.grid_upper = f.numbers("upper");
    f.finish();

    Section o(root, "output");
    if (auto v = o.text("dir")) {
        c.out_dir = *v;
        c.sources["out_dir"] = "file";
    }
    o.finish();
    return c;
}

problems::Problem make_problem(const RunConfig& c) {
    static const std::set<std::string> planar{"example2", "example3", "example4"};
    if (c.problem != "example1" && !planar.count(c.problem))
        throw ConfigError("problem.name: unknown problem '" + c.problem +
                          "' (expected example1, example2, example3 or example4)");
    if (planar.count(c.problem)) require(c.dim == 2, "problem.dim", c.problem + " is defined in two dimensions", c.dim);
    if (c.domain && c.problem != "example4")
        throw ConfigError("problem.domain: only example4 accepts a custom domain");
    if (c.domain && c.domain->dim() != 2)
        throw ConfigError("problem.domain: example4 needs a two-dimensional domain");
    try {
        if (c.problem == "example1") return problems::example1(c.alpha, c.beta, c.dim, c.horizon);
        if (c.problem == "example2") return problems::example2(c.alpha, c.beta, c.horizon);
        if (c.problem == "example3") return problems::example3(c.alpha, c.beta, c.horizon);
        if (c.domain) return problems::example4(c.alpha, c.beta, c.horizon, *c.domain);
        return problems::example4(c.alpha, c.beta, c.horizon);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
}

std::vector<geometry::Point> field_grid(const RunConfig& c, const problems::Problem& problem) {
    const auto lower = c.grid_lower.value_or(problem.domain.box_lower());
    const auto upper = c.grid_upper.value_or(problem.domain.box_upper());
    if (lower.size() != 2) throw ConfigError("field.lower: expected two coordinates");
    if (upper.size() != 2) throw ConfigError("field.upper: expected two coordinates");
    for (int d = 0; d < 2; ++d)
        require(lower[d] < upper[d], "field.upper", "must exceed field.lower in every coordinate", upper[d]);
    std::vector<geometry::Point> grid;
    const int n = c.resolution;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            geometry::Point x{lower[0] + (upper[0] - lower[0]) * (i + 0.5) / n,
                              lower[1] + (upper[1] - lower[1]) * (j + 0.5) / n};
            if (problem.domain.contains(x)) grid.push_back(std::move(x));
        }
    }
    if (grid.empty()) throw ConfigError("field: no grid point lies inside the " + problem.domain.kind() + " domain");
    return grid;
}

void validate(const RunConfig& c, Command command) {
    const auto problem = make_problem(c);
    switch (command) {
        case Command::solve: {
            check_time(solve_time(c), c, "solve.time");
            if (c.points.empty()) throw ConfigError("solve.points: at least one point is required");
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                const std::string field = "solve.points[" + std::to_string(i) + "]";
                if (c.points[i].size() != static_cast<std::size_t>(c.dim))
                    throw ConfigError(field + ": expected " + std::to_string(c.dim) + " coordinates");
                if (!problem.domain.contains(c.points[i]))
                    throw ConfigError(field + ": not inside the " + problem.domain.kind() + " domain");
            }
            break;
        }
        case Command::convergence: {
            if (!problem.exact) throw ConfigError("problem.name: " + c.problem + " has no exact solution to measure against");
            check_time(harness_time(c), c, "harness.time");
            if (c.values.size() < 3) throw ConfigError("harness.values: a sweep needs at least three values");
            std::set<double> distinct;
            for (std::size_t i = 0; i < c.values.size(); ++i) {
                const double v = c.values[i];
                const std::string field = "harness.values[" + std::to_string(i) + "]";
                require(v > 0.0, field, "must be positive", v);
                if (!distinct.insert(c.axis == harness::SweepAxis::num_paths ? std::max(1.0, std::round(v)) : v).second)
                    throw ConfigError(field + ": duplicate sweep value");
            }
            break;
        }
        case Command::field: {
            if (c.dim != 2) throw ConfigError("problem.dim: field export is two-dimensional only");
            const auto times = field_times(c);
            for (std::size_t i = 0; i < times.size(); ++i)
                check_time(times[i], c, "field.times[" + std::to_string(i) + "]");
            (void)field_grid(c, problem);
            break;
        }
    }
}

std::string describe(const RunConfig& config, Command command) { return config_json(config, command).dump(2); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo solver for space-time fractional diffusion", "frackac"};
    app.require_subcommand(1);

    struct Flags {
        std::string config;
        std::uint64_t seed = 0;
        std::size_t workers = 0;
        std::string out;
        bool dry_run = false;
    } flags;

    std::map<CLI::App*, Command> commands;
    std::vector<std::pair<CLI::App*, std::map<std::string, CLI::Option*>>> registered;
    for (auto [name, command, help] :
         {std::tuple{"solve", Command::solve, "point estimates with standard errors"},
          std::tuple{"convergence", Command::convergence, "L2 error sweep in M or dt with a fitted rate"},
          std::tuple{"field", Command::field, "estimates on a 2-D grid clipped to the domain"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands[sub] = command;
        std::map<std::string, CLI::Option*> opts;
        opts["config"] = sub->add_option("--config", flags.config, "JSON configuration file");
        opts["seed"] = sub->add_option("--seed", flags.seed, "master seed (overrides solver.seed)");
        opts["workers"] = sub->add_option("--workers", flags.workers, "worker threads (overrides FRACKAC_WORKERS)")
                              ->check(CLI::PositiveNumber);
        opts["out"] = sub->add_option("--out", flags.out, "output directory (overrides output.dir)");
        opts["dry_run"] = sub->add_flag("--dry-run", flags.dry_run, "print the resolved configuration and exit");
        registered.emplace_back(sub, std::move(opts));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "frackac: error[usage]: " << e.what() << '\n';
        return 2;
    }

    try {
        CLI::App* sub = nullptr;
        std::map<std::string, CLI::Option*>* opts = nullptr;
        for (auto& [s, o] : registered) {
            if (s->parsed()) {
                sub = s;
                opts = &o;
            }
        }
        const Command command = commands.at(sub);

        std::string text = "{}";
        std::string source = "<defaults>";
        if (!flags.config.empty()) {
            std::ifstream f(flags.config, std::ios::binary);
            if (!f) throw ConfigError("--config: cannot read " + flags.config);
            std::ostringstream ss;
            ss << f.rdbuf();
            text = ss.str();
            source = flags.config;
        }
        RunConfig config = parse_config(text, source);

        if (const char* env = std::getenv("FRACKAC_WORKERS"); env && *env) {
            config.solver.workers = parse_workers(env, "FRACKAC_WORKERS");
            config.sources["workers"] = "env";
        }
        if (opts->at("seed")->count()) {
            config.solver.master_seed = flags.seed;
            config.sources["seed"] = "flag";
        }
        if (opts->at("workers")->count()) {
            config.solver.workers = flags.workers;
            config.sources["workers"] = "flag";
        }
        if (opts->at("out")->count()) {
            config.out_dir = flags.out;
            config.sources["out_dir"] = "flag";
        }

        validate(config, command);
        if (flags.dry_run) {
            out << describe(config, command) << '\n';
            return 0;
        }

        const auto problem = make_problem(config);
        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        if (ec) throw ConfigError("output.dir: cannot create " + config.out_dir + ": " + ec.message());
        switch (command) {
            case Command::solve: run_solve(config, problem, out); break;
            case Command::convergence: run_convergence(config, problem, out); break;
            case Command::field: run_field(config, problem, out); break;
        }
        return 0;
    } catch (const Error& e) {
        err << "frackac: error[" << e.code() << "]: " << e.what() << '\n';
        return exit_status(e.code());
    } catch (const std::exception& e) {
        err << "frackac: error[internal]: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace frackac::cli
