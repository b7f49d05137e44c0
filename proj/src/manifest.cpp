#include "curv4/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curv4/errors.hpp"
#include "curv4/numerics.hpp"

namespace curv4 {

using nlohmann::json;

CatalogEntry parse_manifest(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error("manifest " + origin + ": " + e.what());
    }
    if (!doc.is_object()) throw input_error("manifest " + origin + ": not a JSON object");

    CatalogEntry entry;
    entry.compact = false;  // user charts get no spectral machinery by default

    if (!doc.contains("name") || !doc["name"].is_string())
        throw input_error("manifest: missing string field 'name'");
    entry.name = doc["name"].get<std::string>();
    entry.metric.name = entry.name;

    ParseOptions po;
    if (doc.contains("coordinates")) {
        const auto& c = doc["coordinates"];
        if (!c.is_array() || c.size() != 4)
            throw input_error("manifest: 'coordinates' must be an array of 4 names");
        for (int i = 0; i < 4; ++i) {
            if (!c[i].is_string()) throw input_error("manifest: coordinate names must be strings");
            po.coords[i] = c[i].get<std::string>();
        }
    }

    if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 4)
        throw input_error("manifest: 'domain' must be an array of 4 [lo, hi] pairs");
    for (int i = 0; i < 4; ++i) {
        const auto& iv = doc["domain"][i];
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
            throw input_error("manifest: each domain entry must be [lo, hi]");
        entry.metric.domain[i][0] = iv[0].get<double>();
        entry.metric.domain[i][1] = iv[1].get<double>();
        if (!(entry.metric.domain[i][0] < entry.metric.domain[i][1]))
            throw input_error("manifest: empty domain interval on axis " + std::to_string(i));
    }

    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw input_error("manifest: 'params' must be an object");
        for (const auto& [k, v] : doc["params"].items()) {
            if (!v.is_number()) throw input_error("manifest: parameter '" + k + "' must be a number");
            entry.metric.params[k] = v.get<double>();
        }
    }
    std::vector<std::string> param_names;
    for (const auto& [k, v] : entry.metric.params) {
        (void)v;
        param_names.push_back(k);
    }
    po.param_whitelist = param_names;

    if (!doc.contains("metric") || !doc["metric"].is_object())
        throw input_error("manifest: missing object field 'metric'");
    for (const auto& [key, val] : doc["metric"].items()) {
        if (key.size() != 3 || key[0] != 'g' || key[1] < '0' || key[1] > '3' || key[2] < '0' ||
            key[2] > '3')
            throw input_error("manifest: metric keys must look like 'g01'");
        const int i = key[1] - '0', j = key[2] - '0';
        if (i > j) throw input_error("manifest: metric keys must be upper-triangle (i <= j)");
        if (!val.is_string()) throw input_error("manifest: metric entries must be expressions");
        try {
            entry.metric.components[sym4_index(i, j)] = parse(val.get<std::string>(), po);
        } catch (const parse_error& e) {
            throw input_error("manifest: bad expression for " + key + ": " + e.what());
        }
    }
    bool any = false;
    for (const auto& c : entry.metric.components) any = any || (c != nullptr);
    if (!any) throw input_error("manifest: metric has no components");

    if (doc.contains("known")) {
        const auto& k = doc["known"];
        if (!k.is_object()) throw input_error("manifest: 'known' must be an object");
        if (k.contains("scalar")) {
            entry.known.scalar = k["scalar"].get<double>();
            entry.metric.declared.scalar = entry.known.scalar;
        }
        if (k.contains("einstein")) {
            entry.known.einstein = k["einstein"].get<bool>();
            entry.metric.declared.einstein = entry.known.einstein;
        }
        if (k.contains("lambda1")) {
            entry.known.lambda1_exact = k["lambda1"].get<double>();
            entry.metric.declared.lambda1 = entry.known.lambda1_exact;
        }
        if (k.contains("harmonic_weyl")) entry.known.harmonic_weyl = k["harmonic_weyl"].get<bool>();
        if (k.contains("locally_conformally_flat"))
            entry.known.locally_conformally_flat = k["locally_conformally_flat"].get<bool>();
    }

    // SPD spot check on 16 Halton points.
    static constexpr int bases[4] = {2, 3, 5, 7};
    for (int n = 0; n < 16; ++n) {
        Point4 p;
        for (int i = 0; i < 4; ++i) {
            const double t = halton(n + 1, bases[i]);
            p[i] = entry.metric.domain[i][0] +
                   (entry.metric.domain[i][1] - entry.metric.domain[i][0]) * (0.05 + 0.9 * t);
        }
        Mat4 g;
        try {
            g = entry.metric.value(p);
        } catch (const error& e) {
            throw input_error("manifest: metric evaluation failed during the SPD spot check: " +
                              std::string(e.what()));
        }
        if (!is_spd4(g))
            throw input_error("manifest: metric is not positive definite at a spot-check point");
    }
    return entry;
}

CatalogEntry load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open manifest file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str(), path);
}

}  // namespace curv4
