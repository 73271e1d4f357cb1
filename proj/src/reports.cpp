#include "treelie/reports.hpp"

#include <filesystem>
#include <fstream>

#include "treelie/trees.hpp"

namespace treelie::reports {

namespace {

json int_json(const zlin::Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

}  // namespace

json to_json(const abelian::GroupReport& r) {
    json torsion = json::array();
    for (auto& t : r.torsion) torsion.push_back(int_json(t));
    return json{{"free_rank", r.free_rank},
                {"torsion", torsion},
                {"generators", r.generators},
                {"relators", r.relators}};
}

json group_summary(const abelian::PresentedAbelianGroup& g) {
    json j = to_json(g.report());
    j["name"] = g.name();
    return j;
}

json to_json(const abelian::HomCertificate& c) {
    json j{{"well_defined", c.well_defined},
           {"injective", c.injective},
           {"surjective", c.surjective},
           {"kernel", to_json(c.kernel.report())},
           {"cokernel", to_json(c.cokernel.report())}};
    if (c.offending_relator) j["offending_relator"] = *c.offending_relator;
    return j;
}

json to_json(const tree_groups::CompareReport& r) {
    return json{{"iso", r.iso()},
                {"forward_well_defined", r.forward_well_defined},
                {"backward_well_defined", r.backward_well_defined},
                {"mutual_inverse", r.mutual_inverse},
                {"structures_equal", r.structures_equal},
                {"with_2Jinfty", r.with_2Jinfty},
                {"quotient", to_json(r.quotient)},
                {"presented", to_json(r.presented)},
                {"detail", r.detail}};
}

json to_json(const tree_groups::TopSequenceReport& r) {
    return json{{"pass", r.pass()},
                {"left_well_defined", r.left_well_defined},
                {"right_well_defined", r.right_well_defined},
                {"left_injective", r.left_injective},
                {"right_surjective", r.right_surjective},
                {"exact_middle", r.exact_middle},
                {"left", to_json(r.left)},
                {"middle", to_json(r.middle)},
                {"right", to_json(r.right)},
                {"detail", r.detail}};
}

json lie_coords_json(const std::map<std::string, zlin::Int>& coords) {
    json j = json::object();
    for (auto& [w, c] : coords)
        j[trees::format_rooted(lie::standard_bracketing(w))] = int_json(c);
    return j;
}

json quasi_json(const lie::QuasiElement& e) {
    json sq = json::array();
    for (auto& u : e.torsion) sq.push_back(trees::format_rooted(lie::standard_bracketing(u)));
    return json{{"lie", lie_coords_json(e.lie)}, {"square_classes", sq}};
}

json tensor_json(const tree_groups::TensorElement& e) {
    json terms = json::array();
    for (auto& [key, c] : e.terms)
        terms.push_back(json{{"letter", key.first},
                             {"word", key.second},
                             {"bracket", trees::format_rooted(lie::standard_bracketing(key.second))},
                             {"coeff", int_json(c)}});
    return json{{"degree", e.q}, {"terms", terms}};
}

json artin_json(const nilpotent::ArtinAutomorphism& a, int johnson,
                const nilpotent::MilnorInvariant& mil) {
    json longs = json::array();
    for (auto& l : a.longitudes) longs.push_back(nilpotent::format_word(l));
    json j{{"strands", a.m},
           {"class", a.cls},
           {"longitudes", longs},
           {"valid", a.valid},
           {"johnson_order", johnson},
           {"milnor", json{{"degree", mil.degree},
                           {"exceeded", mil.exceeded},
                           {"tensor", tensor_json(mil.tensor)},
                           {"in_bracket_kernel", mil.in_bracket_kernel}}}};
    if (!a.valid) j["violation"] = a.violation;
    return j;
}

json clasper_json(const nilpotent::ClasperEvaluation& ev) {
    return json{{"twisted", ev.twisted},
                {"sign", ev.sign},
                {"commutator", nilpotent::format_word(ev.commutator_word)},
                {"weight", ev.weight},
                {"lcs_degree", ev.cls.degree},
                {"lcs_exceeded", ev.cls.exceeded},
                {"leading", lie_coords_json(ev.cls.leading)}};
}

std::string config_hash(const json& config) {
    std::string s = config.dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

std::optional<json> cache_lookup(const std::string& dir, const std::string& key) {
    if (dir.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
        json j;
        in >> j;
        if (j.value("engine_version", "") != kEngineVersion) return std::nullopt;
        return j;
    } catch (...) {
        return std::nullopt;
    }
}

void cache_store(const std::string& dir, const std::string& key, const json& report) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::ofstream out(std::filesystem::path(dir) / (key + ".json"));
    if (out) out << report.dump(2) << "\n";
}

}  // namespace treelie::reports
