#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treelie/abelian.hpp"
#include "treelie/lie.hpp"
#include "treelie/nilpotent.hpp"
#include "treelie/reports.hpp"
#include "treelie/tree_groups.hpp"
#include "treelie/trees.hpp"

using namespace treelie;
using nlohmann::json;

namespace {

std::string structure_str(const abelian::GroupReport& r) {
    std::string s = "Z^" + std::to_string(r.free_rank);
    for (auto& t : r.torsion) s += " + Z/" + t.get_str();
    return s;
}

// -------- tensor element grammar: [c*]letter(x)rooted joined by +/- --------

tree_groups::TensorElement parse_tensor(const std::string& text, int m) {
    tree_groups::TensorElement out;
    size_t i = 0;
    int sign = 1;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    skip_ws();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
    }
    while (i < text.size()) {
        skip_ws();
        size_t start = i;
        int depth = 0;
        while (i < text.size()) {
            char c = text[i];
            if (c == '(' || c == '<') ++depth;
            if (c == ')' || c == '>') --depth;
            if (depth == 0 && (c == '+' || c == '-') && i > start) break;
            ++i;
        }
        std::string seg = text.substr(start, i - start);
        int next_sign = 1;
        if (i < text.size()) {
            next_sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        size_t sep = seg.find("(x)");
        if (sep == std::string::npos)
            throw std::invalid_argument("tensor term needs letter(x)tree: " + seg);
        std::string head = seg.substr(0, sep);
        zlin::Int coeff = sign;
        size_t star = head.find('*');
        if (star != std::string::npos) {
            coeff *= zlin::Int(head.substr(0, star));
            head = head.substr(star + 1);
        }
        while (!head.empty() && std::isspace((unsigned char)head.back())) head.pop_back();
        size_t h = 0;
        while (h < head.size() && std::isspace((unsigned char)head[h])) ++h;
        head = head.substr(h);
        if (!head.empty() && (head[0] == 'x' || head[0] == 'X')) head = head.substr(1);
        if (head.empty()) throw std::invalid_argument("missing letter in tensor term: " + seg);
        int letter = std::stoi(head);
        if (letter < 1 || letter > m) throw std::invalid_argument("letter outside alphabet");
        trees::RootedPtr mono = trees::parse_rooted(seg.substr(sep + 3), m);
        tree_groups::TensorElement term;
        term.q = mono->leaf_count();
        for (auto& [w, c] : lie::monomial_to_basis(mono)) term.terms[{letter, w}] = c;
        tree_groups::tensor_elem_axpy(out, term, coeff);
        sign = next_sign;
        skip_ws();
    }
    return out;
}

// -------- report plumbing --------

struct RunIO {
    std::string json_path;
    std::string cache_dir;
    bool trust_cache = false;
    bool verdict_command = false;  // verify-style: cache needs --trust-cache
};

json run_with_cache(const RunIO& io, const json& config, const std::function<json()>& compute,
                    bool* cache_hit = nullptr) {
    json full_config = config;
    full_config["engine_version"] = reports::kEngineVersion;
    std::string key = reports::config_hash(full_config);
    bool may_use = !io.cache_dir.empty() && (!io.verdict_command || io.trust_cache);
    if (cache_hit) *cache_hit = false;
    if (may_use) {
        auto hit = reports::cache_lookup(io.cache_dir, key);
        if (hit && (*hit)["config"] == full_config) {
            if (cache_hit) *cache_hit = true;
            return *hit;
        }
    }
    auto t0 = std::chrono::steady_clock::now();
    json results = compute();
    double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json report{{"engine_version", reports::kEngineVersion},
                {"config", full_config},
                {"results", results},
                {"timing_ms", ms}};
    if (results.contains("pass")) report["pass"] = results["pass"];
    reports::cache_store(io.cache_dir, key, report);
    return report;
}

void emit(const RunIO& io, const json& report) {
    if (!io.json_path.empty()) {
        std::ofstream out(io.json_path);
        if (!out) throw std::runtime_error("cannot write " + io.json_path);
        out << report.dump(2) << "\n";
    }
}

// -------- verification suites --------

json suite_quasi_exact(int labels_max) {
    json cases = json::array();
    bool pass = true;
    for (int k = 1; k <= 2; ++k)
        for (int m = 2; m <= std::min(3, labels_max); ++m) {
            auto z2 = lie::z2_tensor_lie(k, m);
            auto lq = lie::quasi_lie_presented(2 * k, m);
            auto l = lie::lie_presented(2 * k, m);
            auto sq = lie::sq_hom(z2, lq, k, m);
            auto pi = lie::quasi_to_lie_hom(lq, l, 2 * k, m);
            auto csq = abelian::certify(sq);
            auto cpi = abelian::certify(pi);
            auto ex = abelian::verify_exact({&sq, &pi});
            auto rep = lq.report();
            bool structure = rep.free_rank == lie::witt_rank(2 * k, m) &&
                             int(rep.torsion.size()) == lie::witt_rank(k, m);
            for (auto& t : rep.torsion) structure = structure && t == 2;
            bool ok = csq.well_defined && csq.injective && cpi.well_defined && cpi.surjective &&
                      ex.exact() && structure;
            pass = pass && ok;
            cases.push_back(json{{"k", k},
                                 {"labels", m},
                                 {"sq", reports::to_json(csq)},
                                 {"projection", reports::to_json(cpi)},
                                 {"exact", ex.exact()},
                                 {"quasi_structure", reports::to_json(rep)},
                                 {"structure_expected", structure},
                                 {"pass", ok}});
        }
    return json{{"pass", pass}, {"cases", cases}};
}

json suite_ttilde_iso(int labels_max) {
    json cases = json::array();
    bool pass = true;
    auto run = [&](int order, int m) {
        auto base = tree_groups::compare_presentations(order, m);
        tree_groups::TTildeOptions with;
        with.include_2Jinfty = true;
        auto extra = tree_groups::compare_presentations(order, m, with);
        bool ok = base.iso() && extra.iso();
        pass = pass && ok;
        cases.push_back(json{{"order", order},
                             {"labels", m},
                             {"without_2Jinfty", reports::to_json(base)},
                             {"with_2Jinfty", reports::to_json(extra)},
                             {"2Jinfty_resolution",
                              "redundant: isomorphism certified with and without the relators"},
                             {"pass", ok}});
    };
    for (int m = 1; m <= std::min(3, labels_max); ++m) run(1, m);
    for (int m = 1; m <= std::min(2, labels_max); ++m) run(3, m);
    // negative control: dropping the boundary twist relators must break the match
    tree_groups::TTildeOptions no_twist;
    no_twist.include_boundary_twist = false;
    auto control = tree_groups::compare_presentations(3, std::min(2, labels_max), no_twist);
    bool control_ok = !control.iso();
    pass = pass && control_ok;
    cases.push_back(json{{"order", 3},
                         {"labels", std::min(2, labels_max)},
                         {"negative_control_no_twist", reports::to_json(control)},
                         {"pass", control_ok}});
    return json{{"pass", pass}, {"cases", cases}};
}

json suite_eta_even_iso(int labels_max) {
    json cases = json::array();
    bool pass = true;
    for (int m = 2; m <= std::min(3, labels_max); ++m) {
        auto t2 = tree_groups::tree_group(2, m);
        auto dq = tree_groups::d_group_quasi(2, m);
        auto eh = tree_groups::eta_hom(t2, dq);
        bool ok = eh.images_in_codomain;
        json c{{"labels", m}, {"images_in_codomain", eh.images_in_codomain}};
        if (eh.images_in_codomain) {
            auto cert = abelian::certify(eh.hom);
            ok = cert.well_defined && cert.injective && cert.surjective;
            c["certificate"] = reports::to_json(cert);
            c["domain"] = reports::group_summary(t2.group);
            c["codomain"] = reports::group_summary(dq.group);
        } else {
            c["failure"] = eh.failure;
        }
        c["pass"] = ok;
        pass = pass && ok;
        cases.push_back(c);
    }
    return json{{"pass", pass}, {"cases", cases}};
}

json suite_top_sequence(int labels_max) {
    json cases = json::array();
    bool pass = true;
    for (int m = 2; m <= std::min(3, labels_max); ++m) {
        auto rep = tree_groups::verify_top_sequence(3, m);
        long want_rank = m * lie::witt_rank(4, m) - lie::witt_rank(5, m);
        bool rank_ok = rep.right.free_rank == want_rank;
        bool ok = rep.pass() && rank_ok;
        pass = pass && ok;
        cases.push_back(json{{"labels", m},
                             {"sequence", reports::to_json(rep)},
                             {"d_rank_expected", want_rank},
                             {"d_rank_ok", rank_ok},
                             {"pass", ok}});
    }
    return json{{"pass", pass}, {"cases", cases}};
}

json suite_sl_roundtrip(int labels_max) {
    json cases = json::array();
    bool pass = true;
    for (int m = 1; m <= std::min(3, labels_max); ++m)
        for (int ord = 0; ord <= 2; ++ord) {
            int checked = 0, failed = 0;
            for (auto& j : trees::enumerate_rooted(ord, m)) {
                auto out = tree_groups::sl_map(tree_groups::half_eta_doubled(j, m));
                std::map<std::string, zlin::Int> want;
                for (auto& [w, c] : lie::monomial_to_basis(j))
                    if (c % 2 != 0) want[w] = 1;
                ++checked;
                if (out != want) ++failed;
            }
            bool ok = failed == 0;
            pass = pass && ok;
            cases.push_back(json{{"labels", m},
                                 {"order", ord},
                                 {"checked", checked},
                                 {"failed", failed},
                                 {"pass", ok}});
        }
    return json{{"pass", pass}, {"cases", cases}};
}

json suite_torsion_parity(int labels_max) {
    json cases = json::array();
    bool pass = true;
    for (int n = 0; n <= 3; ++n)
        for (int m = 1; m <= std::min(3, labels_max); ++m) {
            auto g = tree_groups::tree_group(n, m);
            auto rep = g.group.report();
            bool ok = true;
            if (n % 2 == 0) {
                ok = rep.torsion.empty();
            } else {
                for (auto& t : rep.torsion) ok = ok && t == 2;
            }
            pass = pass && ok;
            cases.push_back(json{{"order", n},
                                 {"labels", m},
                                 {"structure", reports::to_json(rep)},
                                 {"pass", ok}});
        }
    return json{{"pass", pass}, {"cases", cases}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"treelie: exact tree groups, quasi-Lie rings and string link invariants"};
    app.require_subcommand(1);

    RunIO io;
    if (const char* env = std::getenv("TREELIE_CACHE_DIR")) io.cache_dir = env;
    app.add_option("--json", io.json_path, "write the full JSON report to this path");
    app.add_option("--cache-dir", io.cache_dir,
                   "result cache directory (default: $TREELIE_CACHE_DIR)");
    app.add_flag("--trust-cache", io.trust_cache,
                 "allow verification verdicts to be served from the cache");

    // ---- group ----
    auto* g_cmd = app.add_subcommand("group", "compute the structure of a graded piece");
    std::string g_kind;
    int g_order = 1, g_labels = 2;
    bool g_2j = false;
    long g_cap = trees::kDefaultEnumerationCap;
    g_cmd->add_option("--kind", g_kind, "T | Ttilde | Ttilde-inf | L | Lq | D | Dq")
        ->required()
        ->check(CLI::IsMember({"T", "Ttilde", "Ttilde-inf", "L", "Lq", "D", "Dq"}));
    g_cmd->add_option("--order", g_order, "grading order")->required();
    g_cmd->add_option("--labels", g_labels, "alphabet size")->required();
    g_cmd->add_flag("--include-2Jinfty", g_2j, "add the optional doubled-generator relators");
    g_cmd->add_option("--cap", g_cap, "enumeration cap");

    // ---- map ----
    auto* m_cmd = app.add_subcommand("map", "apply a connecting map to an element");
    std::string m_name, m_element;
    int m_labels = 2;
    m_cmd->add_option("--name", m_name, "eta | delta | sq | sl | bracket")
        ->required()
        ->check(CLI::IsMember({"eta", "delta", "sq", "sl", "bracket"}));
    m_cmd->add_option("--element", m_element, "tree / word / tensor literal")->required();
    m_cmd->add_option("--labels", m_labels, "alphabet size")->required();

    // ---- verify ----
    auto* v_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite;
    int v_labels_max = 3;
    v_cmd->add_option("--suite", v_suite,
                      "quasi-exact | ttilde-iso | eta-even-iso | top-sequence | sl-roundtrip | "
                      "torsion-parity | all")
        ->required()
        ->check(CLI::IsMember({"quasi-exact", "ttilde-iso", "eta-even-iso", "top-sequence",
                               "sl-roundtrip", "torsion-parity", "all"}));
    v_cmd->add_option("--labels-max", v_labels_max, "largest alphabet exercised");

    // ---- artin ----
    auto* a_cmd = app.add_subcommand("artin", "validate string link longitude data");
    std::string a_input;
    std::vector<std::string> a_longs;
    int a_strands = 0, a_class = 1, a_jcap = 6;
    a_cmd->add_option("--input", a_input, "JSON file {strands, class, longitudes}");
    a_cmd->add_option("--strands", a_strands, "number of strands");
    a_cmd->add_option("--class", a_class, "nilpotency class n (maps live mod F_{n+2})");
    a_cmd->add_option("--longitude", a_longs, "longitude word (repeat per strand)");
    a_cmd->add_option("--johnson-cap", a_jcap, "cap for the Johnson order scan");

    // ---- clasper ----
    auto* c_cmd = app.add_subcommand("clasper", "evaluate a clasper surgery commutator");
    std::string c_shape, c_tree;
    std::vector<std::string> c_alpha;
    int c_strands = 3, c_linked = 0;
    bool c_twisted = false;
    c_cmd->add_option("--shape", c_shape, "rooted tree over strand labels (untwisted)");
    c_cmd->add_option("--tree", c_tree, "unitrivalent tree with one inf leaf (twisted)");
    c_cmd->add_flag("--twisted", c_twisted, "twisted evaluation");
    c_cmd->add_option("--linked", c_linked, "index of the linked leaf (twisted)");
    c_cmd->add_option("--strands", c_strands, "number of strands");
    c_cmd->add_option("--alpha", c_alpha, "meridian word per strand (default x_i)");

    for (auto* sc : {g_cmd, m_cmd, v_cmd, a_cmd, c_cmd}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json report;
        bool verdict_pass = true;

        if (*g_cmd) {
            json config{{"cmd", "group"}, {"kind", g_kind},   {"order", g_order},
                        {"labels", g_labels}, {"cap", g_cap}, {"include_2Jinfty", g_2j}};
            bool hit = false;
            report = run_with_cache(io, config, [&]() -> json {
                abelian::PresentedAbelianGroup grp;
                if (g_kind == "T")
                    grp = tree_groups::tree_group(g_order, g_labels, g_cap).group;
                else if (g_kind == "Ttilde")
                    grp = tree_groups::reduced_tree_group_quotient(g_order, g_labels, g_cap).group;
                else if (g_kind == "Ttilde-inf") {
                    tree_groups::TTildeOptions opts;
                    opts.include_2Jinfty = g_2j;
                    grp = tree_groups::reduced_tree_group_presented(g_order, g_labels, opts, g_cap)
                              .group;
                } else if (g_kind == "L")
                    grp = lie::lie_presented(g_order, g_labels, g_cap);
                else if (g_kind == "Lq")
                    grp = lie::quasi_lie_presented(g_order, g_labels, g_cap);
                else if (g_kind == "D")
                    grp = tree_groups::d_group(g_order, g_labels).group;
                else
                    grp = tree_groups::d_group_quasi(g_order, g_labels).group;
                return json{{"structure", reports::group_summary(grp)}};
            }, &hit);
            auto& s = report["results"]["structure"];
            std::cout << s["name"].get<std::string>() << ": free_rank " << s["free_rank"]
                      << ", torsion " << s["torsion"].dump() << " (" << s["generators"]
                      << " generators, " << s["relators"] << " relators)"
                      << (hit ? " [cached]" : "") << "\n";
        } else if (*m_cmd) {
            json config{
                {"cmd", "map"}, {"name", m_name}, {"element", m_element}, {"labels", m_labels}};
            report = run_with_cache(io, config, [&]() -> json {
                if (m_name == "eta") {
                    auto t = trees::parse_unitrivalent(m_element, m_labels);
                    return json{{"tensor", reports::tensor_json(tree_groups::eta(t, m_labels))}};
                }
                if (m_name == "delta") {
                    auto t = trees::parse_unitrivalent(m_element, m_labels);
                    auto target = tree_groups::tree_group(2 * t.order() + 1, m_labels);
                    auto vec = tree_groups::delta(target, t);
                    json terms = json::array();
                    for (int i = 0; i < int(vec.size()); ++i)
                        if (vec[i] != 0)
                            terms.push_back(json{{"tree", target.group.generator_name(i)},
                                                 {"coeff", vec[i].get_si()}});
                    return json{{"codomain", reports::group_summary(target.group)},
                                {"tree_sum", terms}};
                }
                if (m_name == "sq") {
                    auto mono = trees::parse_rooted(m_element, m_labels);
                    lie::QuasiRewriter rw;
                    auto e = rw.from_monomial(mono);
                    return json{{"value", reports::quasi_json(rw.bracket(e, e))}};
                }
                if (m_name == "sl") {
                    tree_groups::TensorElement d;
                    json extra = json::object();
                    if (m_element.find("(x)") != std::string::npos) {
                        d = parse_tensor(m_element, m_labels);
                    } else {
                        auto j = trees::parse_rooted(m_element, m_labels);
                        d = tree_groups::half_eta_doubled(j, m_labels);
                        std::map<std::string, zlin::Int> want;
                        for (auto& [w, c] : lie::monomial_to_basis(j))
                            if (c % 2 != 0) want[w] = 1;
                        extra["matches_input_mod_2"] = tree_groups::sl_map(d) == want;
                    }
                    json out{{"square_classes", reports::lie_coords_json(tree_groups::sl_map(d))}};
                    out.update(extra);
                    return out;
                }
                auto d = parse_tensor(m_element, m_labels);
                return json{{"bracket", reports::lie_coords_json(tree_groups::bracket_map(d))}};
            });
            std::cout << m_name << "(" << m_element << ") = " << report["results"].dump() << "\n";
        } else if (*v_cmd) {
            io.verdict_command = true;
            json config{{"cmd", "verify"}, {"suite", v_suite}, {"labels_max", v_labels_max}};
            bool hit = false;
            report = run_with_cache(io, config, [&]() -> json {
                std::map<std::string, std::function<json(int)>> suites{
                    {"quasi-exact", suite_quasi_exact},   {"ttilde-iso", suite_ttilde_iso},
                    {"eta-even-iso", suite_eta_even_iso}, {"top-sequence", suite_top_sequence},
                    {"sl-roundtrip", suite_sl_roundtrip}, {"torsion-parity", suite_torsion_parity}};
                if (v_suite != "all") return suites.at(v_suite)(v_labels_max);
                json all = json::object();
                bool pass = true;
                for (auto& [name, fn] : suites) {
                    all[name] = fn(v_labels_max);
                    pass = pass && all[name]["pass"].get<bool>();
                }
                return json{{"pass", pass}, {"suites", all}};
            }, &hit);
            verdict_pass = report["results"]["pass"].get<bool>();
            std::cout << "suite " << v_suite << ": " << (verdict_pass ? "PASS" : "FAIL")
                      << (hit ? " [cached]" : "") << "\n";
        } else if (*a_cmd) {
            int strands = a_strands, cls = a_class;
            std::vector<std::string> words = a_longs;
            if (!a_input.empty()) {
                std::ifstream in(a_input);
                if (!in) throw std::runtime_error("cannot read " + a_input);
                json j;
                in >> j;
                strands = j.at("strands").get<int>();
                cls = j.at("class").get<int>();
                words = j.at("longitudes").get<std::vector<std::string>>();
            }
            if (strands <= 0) throw std::invalid_argument("need --strands or an input file");
            json config{{"cmd", "artin"},
                        {"strands", strands},
                        {"class", cls},
                        {"longitudes", words},
                        {"johnson_cap", a_jcap}};
            io.verdict_command = true;
            report = run_with_cache(io, config, [&]() -> json {
                std::vector<nilpotent::GroupWord> longs;
                for (auto& w : words) longs.push_back(nilpotent::parse_word(w, strands));
                auto art = nilpotent::artin(longs, cls, strands);
                int jo = art.valid ? nilpotent::johnson_order(art, a_jcap) : -1;
                auto mil = art.valid ? nilpotent::milnor_first_nonvanishing(art)
                                     : nilpotent::MilnorInvariant{};
                json r = reports::artin_json(art, jo, mil);
                r["pass"] = art.valid;
                return r;
            });
            verdict_pass = report["results"]["pass"].get<bool>();
            auto& r = report["results"];
            std::cout << "artin: " << (verdict_pass ? "valid" : "INVALID") << "\n";
            if (verdict_pass) {
                std::cout << "johnson_order: " << r["johnson_order"] << "\n"
                          << "milnor degree: " << r["milnor"]["degree"]
                          << ", in bracket kernel: " << r["milnor"]["in_bracket_kernel"] << "\n";
            } else {
                std::cout << "violation: " << r["violation"].get<std::string>() << "\n";
            }
        } else if (*c_cmd) {
            json config{{"cmd", "clasper"},    {"shape", c_shape},   {"tree", c_tree},
                        {"twisted", c_twisted}, {"linked", c_linked}, {"strands", c_strands},
                        {"alpha", c_alpha}};
            report = run_with_cache(io, config, [&]() -> json {
                std::vector<nilpotent::GroupWord> alpha;
                for (int i = 1; i <= c_strands; ++i)
                    alpha.push_back(i <= int(c_alpha.size())
                                        ? nilpotent::parse_word(c_alpha[i - 1], c_strands)
                                        : nilpotent::word_gen(i));
                nilpotent::ClasperEvaluation ev;
                if (c_twisted) {
                    auto t = trees::parse_unitrivalent(c_tree, c_strands, true);
                    ev = nilpotent::clasper_commutator_twisted(t, c_linked, alpha, c_strands);
                } else {
                    auto shape = trees::parse_rooted(c_shape, c_strands);
                    ev = nilpotent::clasper_commutator(shape, alpha, c_strands);
                }
                return json{{"evaluation", reports::clasper_json(ev)}};
            });
            auto& e = report["results"]["evaluation"];
            std::cout << "gamma = " << (e["sign"].get<int>() < 0 ? "-" : "") << "["
                      << e["commutator"].get<std::string>() << "] of weight " << e["weight"]
                      << ", lcs degree " << e["lcs_degree"] << "\n";
        }

        emit(io, report);
        return verdict_pass ? 0 : 1;
    } catch (const trees::EnumerationCap& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const zlin::ResourceCapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource cap: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
