#include "filtcone/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace filtcone::io {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& where)
{
    if (!doc.is_object()) throw ParseError(where + ": expected an object");
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

double number(const Json& v, const std::string& where)
{
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    return v.get<double>();
}

std::map<std::string, std::vector<std::string>> id_map(const Json& v, const std::string& where)
{
    if (!v.is_object()) throw ParseError(where + ": expected an object of id lists");
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [key, list] : v.items()) {
        if (!list.is_array()) throw ParseError(where + "." + key + ": expected a list of ids");
        auto& ids = out[key];
        for (const auto& id : list) {
            if (!id.is_string()) throw ParseError(where + "." + key + ": ids must be strings");
            ids.push_back(id.get<std::string>());
        }
    }
    return out;
}

Json id_lists(const gf2::Matrix& m, const FilteredComplex& source, const FilteredComplex& target)
{
    std::map<std::string, std::vector<std::string>> sorted;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.column(j).none()) continue;
        auto& ids = sorted[source.generator(j).id];
        m.column(j).for_each_set([&](std::size_t i) { ids.push_back(target.generator(i).id); });
        std::sort(ids.begin(), ids.end());
    }
    Json out = Json::object();
    for (auto& [k, v] : sorted) out[k] = v;
    return out;
}

Json json_number(double v)
{
    // Integral grid values print without a fractional part.
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
    return v;
}

}  // namespace

Json parse_text(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

Json read_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path.string());
}

void write_file(const std::filesystem::path& path, const Json& doc)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

Json to_json(const FilteredComplex& c)
{
    Json doc;
    doc["name"] = c.name();
    Json gens = Json::array();
    for (const auto& g : c.generators()) gens.push_back({{"id", g.id}, {"filtration", json_number(g.filtration)}});
    doc["generators"] = std::move(gens);
    doc["boundary"] = id_lists(c.boundary(), c, c);
    return doc;
}

FilteredComplex complex_from_json(const Json& doc)
{
    const std::string where = "complex";
    const auto name = doc.is_object() && doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>()
                                                                                          : std::string("C");
    const auto& gens_json = field(doc, "generators", where);
    if (!gens_json.is_array()) throw ParseError(where + ".generators: expected a list");
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < gens_json.size(); ++i) {
        const auto at = where + ".generators[" + std::to_string(i) + "]";
        const auto& id = field(gens_json[i], "id", at);
        if (!id.is_string()) throw ParseError(at + ".id: expected a string");
        gens.push_back({id.get<std::string>(), number(field(gens_json[i], "filtration", at), at + ".filtration")});
    }
    std::map<std::string, std::vector<std::string>> boundary;
    if (doc.contains("boundary")) boundary = id_map(doc["boundary"], where + ".boundary");
    try {
        return FilteredComplex(name, std::move(gens), boundary);
    } catch (const InvalidInput& e) {
        throw ParseError(where + ": " + e.what());
    }
}

FilteredComplex complex_from_ref(const Json& ref, const std::filesystem::path& base_dir)
{
    if (ref.is_string()) {
        std::filesystem::path p = ref.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        return complex_from_json(read_file(p));
    }
    return complex_from_json(ref);
}

Json to_json(const FilteredLinearMap& f)
{
    Json doc;
    doc["source"] = to_json(*f.source);
    doc["target"] = to_json(*f.target);
    doc["shift"] = json_number(f.shift);
    doc["matrix"] = id_lists(f.matrix, *f.source, *f.target);
    return doc;
}

FilteredMap map_from_json(const Json& doc, const std::filesystem::path& base_dir)
{
    auto source = share(complex_from_ref(field(doc, "source", "map"), base_dir));
    auto target = share(complex_from_ref(field(doc, "target", "map"), base_dir));
    const double shift = number(field(doc, "shift", "map"), "map.shift");
    const auto matrix = doc.contains("matrix") ? id_map(doc["matrix"], "map.matrix")
                                               : std::map<std::string, std::vector<std::string>>{};
    try {
        return FilteredMap(map_from_ids(source, target, shift, matrix));
    } catch (const InvalidInput& e) {
        throw ParseError(std::string("map: ") + e.what());
    }
}

ReassocSpec reassoc_spec_from_json(const Json& doc, const std::filesystem::path& base_dir)
{
    auto e = share(complex_from_ref(field(doc, "E", "reassoc"), base_dir));
    auto f = share(complex_from_ref(field(doc, "F", "reassoc"), base_dir));
    auto g = share(complex_from_ref(field(doc, "G", "reassoc"), base_dir));
    require_valid(*e);
    require_valid(*f);
    require_valid(*g);
    auto linear = [&](const char* key, ComplexPtr s, ComplexPtr t) {
        const auto& m = field(doc, key, "reassoc");
        const double shift = number(field(m, "shift", std::string("reassoc.") + key), std::string("reassoc.") + key);
        const auto ids = m.contains("matrix") ? id_map(m["matrix"], std::string("reassoc.") + key + ".matrix")
                                              : std::map<std::string, std::vector<std::string>>{};
        try {
            return FilteredMap(map_from_ids(std::move(s), std::move(t), shift, ids));
        } catch (const InvalidInput& ex) {
            throw ParseError(std::string("reassoc.") + key + ": " + ex.what());
        }
    };
    ReassocSpec spec;
    spec.e = *e;
    auto fmap = linear("f", f, g);
    spec.inner = {fmap, fmap.shift};
    auto inner = share(mapping_cone(spec.inner, kInnerAttachmentPrefix));
    spec.g = linear("g", e, inner);
    spec.s_g = spec.g.shift;
    return spec;
}

Json to_json(ExtendedReal v)
{
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return json_number(v.value());
}

Json to_json(const Barcode& b)
{
    Json out = Json::array();
    for (const auto& bar : b.bars) out.push_back(Json::array({json_number(bar.birth), to_json(bar.death)}));
    return out;
}

Json to_json(const InvariantProfile& p)
{
    return {{"sigma_plus", to_json(p.sigma_plus)},
            {"sigma_minus", to_json(p.sigma_minus)},
            {"rho", to_json(p.rho)},
            {"beta", json_number(p.beta)}};
}

Json to_json(const NamedCheck& c)
{
    return {{"name", c.name},
            {"outcome", to_string(c.result.outcome)},
            {"lhs", to_json(c.result.lhs)},
            {"rhs", to_json(c.result.rhs)}};
}

Json to_json(const SuiteReport& r)
{
    Json doc;
    doc["suite"] = to_string(r.suite);
    doc["instances"] = r.instances;
    doc["ok"] = r.ok();
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j{{"name", c.name},
               {"passes", c.passes},
               {"vacuous", c.vacuous},
               {"unmet_hypothesis", c.unmet},
               {"failures", c.failures},
               {"worst_slack", to_json(c.worst_slack)}};
        if (c.informational) j["informational"] = true;
        checks.push_back(std::move(j));
    }
    doc["checks"] = std::move(checks);
    Json fixtures = Json::array();
    for (const auto& f : r.fixtures) {
        Json j{{"name", f.name}, {"passed", f.passed}};
        if (!f.detail.empty()) j["detail"] = f.detail;
        fixtures.push_back(std::move(j));
    }
    doc["fixtures"] = std::move(fixtures);
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json j{{"check", f.check}, {"instance", f.instance}, {"seed", f.seed}, {"lhs", to_json(f.lhs)},
               {"rhs", to_json(f.rhs)}};
        if (!f.detail.empty()) j["detail"] = f.detail;
        failures.push_back(std::move(j));
    }
    doc["failures"] = std::move(failures);
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) metrics[k] = json_number(v);
    doc["metrics"] = std::move(metrics);
    return doc;
}

Json to_json(const DemoReport& r)
{
    Json doc;
    const auto& c = r.config;
    doc["config"] = {{"k", c.k},
                     {"fiber_beta_range", Json::array({json_number(c.fiber_beta_lo), json_number(c.fiber_beta_hi)})},
                     {"shift_cap", json_number(c.shift_cap)},
                     {"tail_beta_cap", json_number(c.tail_beta_cap)},
                     {"fixed_beta_cap", json_number(c.fixed_beta_cap)},
                     {"trials", c.trials},
                     {"seed", c.seed},
                     {"fixture_seed", c.fixture_seed}};
    doc["stages"] = r.stages;
    doc["attachments"] = r.attachment_labels;
    doc["constants"] = {{"r", r.constants.r},
                        {"a_r", json_number(r.constants.a)},
                        {"b_r", json_number(r.constants.b)},
                        {"e_r", json_number(r.constants.e)}};
    doc["rho_tilde"] = json_number(r.rho_tilde);
    doc["A"] = json_number(r.a);
    doc["B"] = json_number(r.b);
    doc["passes"] = r.passes;
    doc["ok"] = r.ok();
    Json trials = Json::array();
    for (const auto& t : r.trials)
        trials.push_back({{"seed", t.seed},
                          {"rho", to_json(t.rho)},
                          {"max_fiber_beta", json_number(t.max_fiber_beta)},
                          {"bound", to_json(t.bound)},
                          {"passed", t.passed}});
    doc["trials"] = std::move(trials);
    doc["caveat"] = r.caveat;
    return doc;
}

Json to_json(const CampaignReport& r)
{
    Json doc;
    doc["config"] = {{"suite", to_string(r.config.suite)},
                     {"count", r.config.count ? Json(*r.config.count) : Json("default")},
                     {"seed", r.config.seed},
                     {"tolerance", r.config.tolerance},
                     {"max_generators", r.config.max_generators},
                     {"max_r", r.config.max_r}};
    doc["ok"] = r.ok();
    Json suites = Json::array();
    for (const auto& s : r.suites) suites.push_back(to_json(s));
    doc["suites"] = std::move(suites);
    if (r.demo) doc["demo"] = to_json(*r.demo);
    return doc;
}

Json to_json(const RefilterResult& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"cone", to_json(r.cone)},
            {"refiltered", to_json(r.refiltered)},
            {"before", to_json(r.before)},
            {"after", to_json(r.after)},
            {"checks", std::move(checks)}};
}

Json to_json(const ReassocResult& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    return {{"nested_right", to_json(r.nested_right)},
            {"nested_left", to_json(r.nested_left)},
            {"g_prime_shift", json_number(r.g_prime_shift)},
            {"identity_shift", json_number(r.identity_shift)},
            {"same_chain_complex", r.same_chain_complex},
            {"right_profile", to_json(r.right_profile)},
            {"left_profile", to_json(r.left_profile)},
            {"checks", std::move(checks)}};
}

std::string profile_line(const InvariantProfile& p)
{
    return "sigma+ = " + p.sigma_plus.to_string() + ", sigma- = " + p.sigma_minus.to_string() +
           ", rho = " + p.rho.to_string() + ", beta = " + format_decimal(p.beta);
}

}  // namespace filtcone::io
