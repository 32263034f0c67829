#include "ldtk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ldtk/numeric.hpp"

namespace ldtk {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
}

const json& require(const json& j, const char* field, const std::string& ctx) {
    if (!j.is_object()) field_error(ctx.empty() ? field : ctx, "expected a JSON object");
    auto it = j.find(field);
    if (it == j.end()) field_error(ctx.empty() ? field : ctx + "." + field, "missing");
    return *it;
}

std::string qualify(const std::string& ctx, const char* field) {
    return ctx.empty() ? field : ctx + "." + field;
}

double as_number(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        field_error(field, "not a number (only \"inf\"/\"-inf\" strings are accepted)");
    }
    field_error(field, "not a number");
}

std::vector<double> as_number_vector(const json& j, const std::string& field) {
    if (!j.is_array()) field_error(field, "expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

MetricSpace space_from_json(const json& j) {
    std::string kind = require(j, "kind", "space").is_string()
                           ? j["kind"].get<std::string>()
                           : (field_error("space.kind", "expected a string"), "");
    if (kind == "interval") {
        const json& b = require(j, "bounds", "space");
        if (!b.is_array() || b.size() != 2)
            field_error("space.bounds", "expected [lo, hi]");
        double lo = as_number(b[0], "space.bounds[0]");
        double hi = as_number(b[1], "space.bounds[1]");
        return MetricSpace::interval(lo, hi);
    }
    if (kind == "finite") {
        const json& m = require(j, "matrix", "space");
        if (!m.is_array() || m.empty()) field_error("space.matrix", "expected a square matrix");
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < m.size(); ++i)
            rows.push_back(as_number_vector(m[i], "space.matrix[" + std::to_string(i) + "]"));
        return MetricSpace::finite_points(std::move(rows));
    }
    if (kind == "cloud") {
        const json& p = require(j, "points", "space");
        if (!p.is_array() || p.empty()) field_error("space.points", "expected a point list");
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < p.size(); ++i)
            pts.push_back(as_number_vector(p[i], "space.points[" + std::to_string(i) + "]"));
        return MetricSpace::cloud(std::move(pts));
    }
    field_error("space.kind", "unknown kind \"" + kind + "\"");
}

namespace {

SourceMeasure measure_from_json_ctx(const json& j, const std::string& ctx) {
    std::string fam = require(j, "family", ctx).is_string()
                          ? j["family"].get<std::string>()
                          : (field_error(qualify(ctx, "family"), "expected a string"), "");
    if (fam == "finite") {
        std::vector<Point> support;
        if (j.contains("indices")) {
            const json& idx = j["indices"];
            if (!idx.is_array()) field_error(qualify(ctx, "indices"), "expected an array");
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (!idx[i].is_number_integer())
                    field_error(qualify(ctx, "indices") + "[" + std::to_string(i) + "]",
                                "expected an integer point id");
                support.push_back(Point::indexed(idx[i].get<int>()));
            }
        } else {
            for (double v : as_number_vector(require(j, "support", ctx), qualify(ctx, "support")))
                support.push_back(Point::coord(v));
        }
        std::vector<double> w =
            as_number_vector(require(j, "weights", ctx), qualify(ctx, "weights"));
        if (w.size() != support.size())
            field_error(qualify(ctx, "weights"), "length differs from the support");
        return SourceMeasure::finite(FiniteMeasure(std::move(support), std::move(w)));
    }
    if (fam == "empirical") {
        if (j.contains("file")) {
            if (!j["file"].is_string()) field_error(qualify(ctx, "file"), "expected a path string");
            return SourceMeasure::empirical_from_file(j["file"].get<std::string>());
        }
        return SourceMeasure::empirical(
            as_number_vector(require(j, "values", ctx), qualify(ctx, "values")));
    }
    if (fam != "uniform" && fam != "gaussian" && fam != "exponential" && fam != "mixture")
        field_error(qualify(ctx, "family"), "unknown family \"" + fam + "\"");
    const json& params = require(j, "params", ctx);
    std::string pctx = qualify(ctx, "params");
    if (fam == "uniform")
        return SourceMeasure::uniform(as_number(require(params, "lo", pctx), pctx + ".lo"),
                                      as_number(require(params, "hi", pctx), pctx + ".hi"));
    if (fam == "gaussian")
        return SourceMeasure::gaussian(as_number(require(params, "mean", pctx), pctx + ".mean"),
                                       as_number(require(params, "sd", pctx), pctx + ".sd"));
    if (fam == "exponential")
        return SourceMeasure::exponential(
            as_number(require(params, "rate", pctx), pctx + ".rate"));
    if (fam == "mixture") {
        const json& comps = require(params, "components", pctx);
        if (!comps.is_array() || comps.empty())
            field_error(pctx + ".components", "expected a nonempty array");
        std::vector<SourceMeasure> components;
        for (std::size_t i = 0; i < comps.size(); ++i)
            components.push_back(measure_from_json_ctx(
                comps[i], pctx + ".components[" + std::to_string(i) + "]"));
        std::vector<double> w =
            as_number_vector(require(params, "weights", pctx), pctx + ".weights");
        return SourceMeasure::mixture(std::move(components), std::move(w));
    }
    field_error(qualify(ctx, "family"), "unknown family \"" + fam + "\"");
}

}  // namespace

SourceMeasure measure_from_json(const json& j) { return measure_from_json_ctx(j, "measure"); }

json partition_to_json(const TaggedPartition& part) {
    json cells = json::array();
    for (int i = 0; i < static_cast<int>(part.size()); ++i) {
        const Cell& c = part.cell(i);
        json jc;
        jc["depth"] = c.depth;
        jc["index"] = c.index;
        if (part.space().is_interval()) {
            jc["lo"] = c.lo;
            jc["hi"] = c.hi;
            jc["closed_hi"] = c.closed_hi;
            jc["tag"] = c.tag.x;
        } else {
            jc["members"] = c.members;
            jc["tag"] = c.tag.id;
        }
        jc["is_good"] = c.is_good;
        cells.push_back(std::move(jc));
    }
    return cells;
}

json measure_to_json(const FiniteMeasure& m) {
    json j;
    j["family"] = "finite";
    if (m.size() > 0 && m.point(0).is_indexed()) {
        json idx = json::array();
        for (const Point& p : m.support()) idx.push_back(p.id);
        j["indices"] = std::move(idx);
    } else {
        json sup = json::array();
        for (const Point& p : m.support()) sup.push_back(p.x);
        j["support"] = std::move(sup);
    }
    j["weights"] = m.weights();
    return j;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string ladder_csv(const EntropyLadder& ladder, const std::vector<double>* s_log_s) {
    std::ostringstream os;
    os << (s_log_s ? "m,H_m,E_S_log_S\n" : "m,H_m\n");
    for (std::size_t i = 0; i < ladder.depths.size(); ++i) {
        os << ladder.depths[i] << ',' << format_number(ladder.values[i]);
        if (s_log_s) os << ',' << format_number((*s_log_s)[i]);
        os << '\n';
    }
    return os.str();
}

std::string rate_csv(const RateReport& report) {
    std::ostringstream os;
    os << "n,hits,reps,p_hat,wilson_lo,wilson_hi,rate,rate_bound,entropy_rate,gap\n";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const RatePoint& p = report.points[i];
        os << p.n << ',' << p.hits << ',' << p.reps << ',' << format_number(p.p_hat) << ','
           << format_number(p.wilson_lo) << ',' << format_number(p.wilson_hi) << ','
           << format_number(p.rate) << ',' << format_number(p.rate_bound) << ','
           << format_number(report.entropy_rate) << ',' << format_number(report.gaps[i]) << '\n';
    }
    return os.str();
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) field_error("config", "expected a JSON object");
    MetricSpace space = space_from_json(require(j, "space", ""));
    SourceMeasure mu = measure_from_json_ctx(require(j, "mu", ""), "mu");
    ExperimentConfig cfg(std::move(space), std::move(mu));
    if (j.contains("nu")) cfg.nu = measure_from_json_ctx(j["nu"], "nu");
    auto get_int = [&](const char* field, int lo) {
        const json& v = j[field];
        if (!v.is_number_integer()) field_error(field, "expected an integer");
        int x = v.get<int>();
        if (x < lo) field_error(field, "must be at least " + std::to_string(lo));
        return x;
    };
    if (j.contains("depth")) cfg.depth = get_int("depth", 1);
    if (j.contains("m0")) cfg.m0 = get_int("m0", 1);
    if (cfg.m0 > cfg.depth) field_error("m0", "depth range is empty (m0 exceeds depth)");
    if (j.contains("n_list")) {
        const json& nl = j["n_list"];
        if (!nl.is_array()) field_error("n_list", "expected an array");
        for (std::size_t i = 0; i < nl.size(); ++i) {
            if (!nl[i].is_number_integer() || nl[i].get<int>() < 1)
                field_error("n_list[" + std::to_string(i) + "]", "expected a positive integer");
            cfg.n_list.push_back(nl[i].get<int>());
        }
    }
    if (j.contains("samples")) cfg.samples = get_int("samples", 1);
    if (j.contains("reps")) {
        if (!j["reps"].is_number_integer()) field_error("reps", "expected an integer");
        cfg.reps = j["reps"].get<long long>();
        if (cfg.reps < 1) field_error("reps", "must be at least 1");
    }
    if (j.contains("eps")) {
        cfg.eps = as_number(j["eps"], "eps");
        if (!(cfg.eps > 0)) field_error("eps", "must be positive");
    }
    if (j.contains("radius")) {
        cfg.radius = as_number(j["radius"], "radius");
        if (!(cfg.radius > 0)) field_error("radius", "must be positive");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() ||
            (!j["seed"].is_number_unsigned() && j["seed"].get<long long>() < 0))
            field_error("seed", "expected a nonnegative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.seed_explicit = true;
    }
    if (j.contains("out")) {
        if (!j["out"].is_string()) field_error("out", "expected a path string");
        cfg.out = j["out"].get<std::string>();
    }
    if (j.contains("format")) {
        if (!j["format"].is_string()) field_error("format", "expected \"csv\" or \"json\"");
        cfg.format = j["format"].get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            field_error("format", "expected \"csv\" or \"json\"");
    }
    return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config " + path + ": " + e.what());
    }
    return config_from_json(j);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace ldtk
