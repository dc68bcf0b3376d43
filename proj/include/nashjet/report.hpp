#pragma once

// JSON report builders and the catalog file loader. All reports use ordered
// JSON objects and canonical polynomial strings, so identical inputs produce
// byte-identical output (the optional timestamp field can be suppressed).

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "verify.hpp"
#include "version.hpp"

namespace nashjet {

using json = nlohmann::ordered_json;

inline json multi_index_json(const MultiIndex& m) {
    json a = json::array();
    for (int i = 0; i < m.size(); ++i) a.push_back(m[i]);
    return a;
}

inline json matrix_report(const JacobianMatrix& jac, const WeightSystem* weights = nullptr) {
    json r;
    r["n"] = jac.order();
    r["s"] = jac.nvars();
    r["variant"] = to_string(jac.variant());
    r["f"] = to_string(jac.f(), weights);
    json rows = json::array(), cols = json::array();
    for (const MultiIndex& b : jac.rows()) rows.push_back(multi_index_json(b));
    for (const MultiIndex& a : jac.cols()) cols.push_back(multi_index_json(a));
    r["rows"] = std::move(rows);
    r["cols"] = std::move(cols);
    json entries = json::array();
    for (std::size_t i = 0; i < jac.row_count(); ++i) {
        for (std::size_t j = 0; j < jac.col_count(); ++j) {
            if (jac.entry(i, j).is_zero()) continue;
            json cell;
            cell["row"] = i;
            cell["col"] = j;
            cell["value"] = to_string(jac.entry(i, j), weights);
            entries.push_back(std::move(cell));
        }
    }
    r["entries"] = std::move(entries);
    return r;
}

inline json minors_report(const JacobianMatrix& jac, const MinorComputation& mc,
                          const WeightSystem* weights = nullptr) {
    json r;
    r["subsets_total"] = mc.subsets_total;
    r["nonzero_minors"] = mc.nonzero_minors;
    r["distinct_generators"] = mc.generators.size();
    if (mc.min_degree) r["min_degree"] = *mc.min_degree;
    if (mc.weights_checked) r["all_graded"] = mc.all_graded;
    json gens = json::array();
    for (const MinorGenerator& g : mc.generators) {
        json item;
        json cols = json::array();
        for (int c : g.source_cols)
            cols.push_back(multi_index_json(jac.cols()[static_cast<std::size_t>(c)]));
        item["cols"] = std::move(cols);
        if (g.degree) item["degree"] = *g.degree;
        item["polynomial"] = to_string(g.poly, weights);
        gens.push_back(std::move(item));
    }
    r["minors"] = std::move(gens);
    return r;
}

inline json quotient_report(const GradedQuotient& q) {
    const WeightSystem& w = q.basis.order.weights;
    json r;
    json gens = json::array();
    for (const Polynomial& g : q.generators) gens.push_back(to_string(g, &w));
    r["generators"] = std::move(gens);
    json basis = json::array();
    for (const Polynomial& g : q.basis.elements) basis.push_back(to_string(g, &w));
    r["reduced_basis"] = std::move(basis);
    r["zero_dimensional"] = q.finite_dimensional;
    if (!q.finite_dimensional) {
        r["standard_monomials"] = json::array();
        r["dims_by_degree"] = json::object();
        r["total_dim"] = nullptr;
        r["infinite_variable"] = q.infinite_variable + 1;
        return r;
    }
    json std_mon = json::array();
    for (const MultiIndex& m : q.standard_monomials) std_mon.push_back(multi_index_json(m));
    r["standard_monomials"] = std::move(std_mon);
    json dims = json::object();
    for (const auto& [deg, count] : q.degree_strata) dims[std::to_string(deg)] = count;
    r["dims_by_degree"] = std::move(dims);
    r["total_dim"] = q.total_dimension;
    if (q.socle_degree) r["socle_degree"] = *q.socle_degree;
    return r;
}

inline json derivation_space_json(const DerivationSpaceReport& report, const WeightSystem& w) {
    json r;
    r["degree"] = report.degree;
    r["dimension"] = report.dimension;
    json basis = json::array();
    for (const GradedDerivation& d : report.basis) {
        json images = json::array();
        for (const Polynomial& p : d.images) images.push_back(to_string(p, &w));
        basis.push_back(std::move(images));
    }
    r["basis"] = std::move(basis);
    return r;
}

inline json verdict_json(const Verdict& v) {
    json r;
    r["check"] = v.check;
    if (v.n > 0) r["n"] = v.n;
    r["outcome"] = to_string(v.outcome);
    if (v.outcome == CheckOutcome::skipped) r["reason"] = to_string(v.reason);
    r["detail"] = v.detail;
    if (!v.witness.empty()) {
        json w = json::object();
        for (const auto& [key, value] : v.witness) w[key] = value;
        r["witness"] = std::move(w);
    }
    return r;
}

inline json instance_report_json(const InstanceReport& inst) {
    json r;
    r["name"] = inst.name;
    r["poly"] = inst.poly_input;
    r["weights"] = inst.weights_input;
    r["weights_sorted"] = inst.weights_sorted;
    r["variable_permutation"] = inst.permutation;
    r["poly_sorted"] = inst.poly_sorted;
    r["n_range"] = inst.n_values;
    json checks = json::array();
    for (const Verdict& v : inst.verdicts) checks.push_back(verdict_json(v));
    r["checks"] = std::move(checks);
    r["all_pass"] = inst.all_pass;
    return r;
}

inline json catalog_report_json(const CatalogReport& report) {
    json r;
    json instances = json::array();
    for (const InstanceReport& inst : report.instances)
        instances.push_back(instance_report_json(inst));
    r["instances"] = std::move(instances);
    json summary;
    summary["pass"] = report.pass;
    summary["fail"] = report.fail;
    summary["skipped"] = report.skipped;
    r["summary"] = std::move(summary);
    r["all_pass"] = report.all_pass;
    return r;
}

// fixed-width text table for --format table
inline std::string catalog_table(const CatalogReport& report) {
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"instance", "n", "check", "outcome", "detail"});
    for (const InstanceReport& inst : report.instances) {
        for (const Verdict& v : inst.verdicts) {
            std::string outcome = to_string(v.outcome);
            if (v.outcome == CheckOutcome::skipped)
                outcome += std::string("(") + to_string(v.reason) + ")";
            rows.push_back({inst.name, v.n > 0 ? std::to_string(v.n) : "-", v.check, outcome,
                            v.detail});
        }
    }
    std::array<std::size_t, 5> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < 5; ++c) {
            os << std::left << std::setw(static_cast<int>(width[c]) + 2) << rows[r][c];
        }
        os << '\n';
        if (r == 0) {
            os << std::string(width[0] + width[1] + width[2] + width[3] + width[4] + 10, '-')
               << '\n';
        }
    }
    os << "summary: " << report.pass << " pass, " << report.fail << " fail, " << report.skipped
       << " skipped\n";
    return os.str();
}

class catalog_error : public std::runtime_error {
public:
    explicit catalog_error(const std::string& message) : std::runtime_error(message) {}
};

// JSON array of {name, poly, weights, n_range}; errors name the entry
inline std::vector<SingularityInstance> load_catalog_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw catalog_error(std::string("catalog is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw catalog_error("catalog must be a JSON array of instances");
    std::vector<SingularityInstance> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& entry = doc[i];
        std::string label = "entry #" + std::to_string(i + 1);
        if (entry.contains("name") && entry["name"].is_string())
            label += " (" + entry["name"].get<std::string>() + ")";
        auto fail = [&](const std::string& what) -> catalog_error {
            return catalog_error("catalog " + label + ": " + what);
        };
        if (!entry.is_object()) throw fail("must be an object");
        for (const char* key : {"name", "poly", "weights", "n_range"})
            if (!entry.contains(key)) throw fail(std::string("missing field '") + key + "'");
        if (!entry["name"].is_string()) throw fail("'name' must be a string");
        if (!entry["poly"].is_string()) throw fail("'poly' must be a string");
        if (!entry["weights"].is_array() || entry["weights"].empty())
            throw fail("'weights' must be a non-empty array of positive integers");
        std::vector<int> weights;
        for (const json& w : entry["weights"]) {
            if (!w.is_number_integer() || w.get<long>() < 1)
                throw fail("'weights' must be positive integers");
            weights.push_back(w.get<int>());
        }
        std::vector<int> n_range;
        if (!entry["n_range"].is_array() || entry["n_range"].empty())
            throw fail("'n_range' must be a non-empty array of orders >= 1");
        for (const json& n : entry["n_range"]) {
            if (!n.is_number_integer() || n.get<long>() < 1)
                throw fail("'n_range' must contain orders >= 1");
            n_range.push_back(n.get<int>());
        }
        Polynomial f;
        try {
            f = parse_polynomial(entry["poly"].get<std::string>(),
                                 static_cast<int>(weights.size()));
        } catch (const parse_error& e) {
            throw fail("invalid polynomial: " + std::string(e.what()) + "\n" +
                       caret_diagnostic(entry["poly"].get<std::string>(), e.position(), e.what()));
        }
        out.push_back(SingularityInstance{entry["name"].get<std::string>(), std::move(f),
                                          WeightSystem(std::move(weights)), std::move(n_range)});
    }
    return out;
}

inline std::vector<SingularityInstance> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catalog_error("cannot open catalog file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_catalog_text(buffer.str());
}

// envelope shared by all CLI reports
inline json report_envelope(const std::string& command, json config, bool with_timestamp) {
    json r;
    r["tool"] = "nashjet";
    r["version"] = version;
    r["command"] = command;
    r["config"] = std::move(config);
    if (with_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        r["generated_at"] = buf;
    }
    return r;
}

}  // namespace nashjet
