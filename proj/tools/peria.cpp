// Command-line frontend.  Every subcommand prints one structured report on
// stdout (JSON by default, flat key/value lines with --tsv) with a fixed
// field order, so repeated runs are byte-identical.

#include <CLI11.hpp>
#include <json.hpp>

#include <peria/cayley.hpp>
#include <peria/classify.hpp>
#include <peria/coxeter.hpp>
#include <peria/graphcore.hpp>
#include <peria/growth.hpp>
#include <peria/metrics.hpp>
#include <peria/partitions.hpp>
#include <peria/presentation.hpp>
#include <peria/words.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using ojson = nlohmann::ordered_json;
using namespace peria;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// FNV-1a over the raw bytes; enough to pin an input in a report.
std::string digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    ojson j;

    Report(const std::string& cmd, const std::vector<std::string>& args) {
        j["command"] = cmd;
        j["arguments"] = args;
        j["inputs"] = ojson::array();
        j["results"] = ojson::object();
        j["certification"] = ojson::object();
        j["warnings"] = ojson::array();
    }

    std::string add_input(const std::string& path) {
        std::string text = read_file(path);
        j["inputs"].push_back(
            ojson{{"path", path}, {"bytes", text.size()}, {"digest", digest(text)}});
        return text;
    }

    void warn(const std::string& msg) { j["warnings"].push_back(msg); }
    ojson& results() { return j["results"]; }
    ojson& cert() { return j["certification"]; }
};

std::string tsv_scalar(const ojson& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    for (char& c : s)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return s;
}

void flatten_tsv(const ojson& v, const std::string& prefix, std::ostream& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten_tsv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (v.is_array()) {
        size_t i = 0;
        for (const auto& e : v) flatten_tsv(e, prefix + "." + std::to_string(i++), out);
    } else {
        out << prefix << '\t' << tsv_scalar(v) << '\n';
    }
}

void emit(const Report& r, bool tsv) {
    if (tsv)
        flatten_tsv(r.j, "", std::cout);
    else
        std::cout << r.j.dump(2) << '\n';
}

int vertex_by_name(const PeriagroupPresentation& p, const std::string& name) {
    for (int u = 0; u < p.n(); ++u)
        if (p.name(u) == name) return u;
    throw domain_error("unknown vertex name: " + name);
}

std::vector<int> vertex_list(const PeriagroupPresentation& p, const std::string& csv) {
    std::vector<int> out;
    std::string cur;
    std::istringstream ss(csv);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(vertex_by_name(p, cur));
    return out;
}

ojson name_list(const PeriagroupPresentation& p, const std::vector<int>& verts) {
    ojson a = ojson::array();
    for (int v : verts) a.push_back(p.name(v));
    return a;
}

ojson classification(const ClassificationReport& r) {
    return ojson{{"verdict", to_string(r.verdict)},
                 {"rule", r.rule},
                 {"factors", r.factors},
                 {"witnesses", r.witnesses}};
}

BallMode parse_mode(const std::string& gens) {
    return gens == "full" ? BallMode::Full : BallMode::SGen;
}

const char* tag_name(CoxeterTag t) {
    switch (t) {
        case CoxeterTag::Spherical: return "spherical";
        case CoxeterTag::Affine: return "affine";
        default: return "other";
    }
}

// Options shared across subcommands; each one reads the fields it declared.
struct Opts {
    std::string file, file2, word, word2, sets1, sets2;
    std::string gens;   // empty = per-command default
    std::string method = "saturation";
    std::string force_cox;
    int radius = 4;
    int max_n = 6;
    int slack = 1;
    int cap = 0;
    std::size_t bound = 0;
    bool tsv = false;
    bool reps = false;
    std::vector<std::string> echo;
};

BallOptions ball_options(const Opts& o) {
    BallOptions b;
    b.cap = o.cap;
    if (o.bound) b.max_vertices = o.bound;
    return b;
}

// ------------------------------------------------------------ subcommands

int cmd_check(const Opts& o) {
    Report r("check", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    ValidationReport v = validate_presentation(p);
    ojson checks = ojson::array();
    for (const auto& c : v.checks)
        checks.push_back(ojson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    r.results()["vertices"] = p.n();
    r.results()["checks"] = checks;
    r.results()["all_pass"] = v.all_pass();
    emit(r, o.tsv);
    return v.all_pass() ? 0 : 1;
}

int cmd_nf(const Opts& o) {
    Report r("nf", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    CanonicalForm c = canonical_form(p, parse_word(p, o.word));
    r.results()["word"] = format_word(p, c.word);
    r.results()["syllables"] = c.word.size();
    r.results()["length_s"] = word_length_S(p, c.word);
    emit(r, o.tsv);
    return 0;
}

int cmd_eq(const Opts& o) {
    Report r("eq", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    CanonicalForm a = canonical_form(p, parse_word(p, o.word));
    CanonicalForm b = canonical_form(p, parse_word(p, o.word2));
    r.results()["equal"] = (a.word == b.word);
    r.results()["lhs"] = format_word(p, a.word);
    r.results()["rhs"] = format_word(p, b.word);
    emit(r, o.tsv);
    return 0;
}

int cmd_len(const Opts& o) {
    Report r("len", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    CanonicalForm c = canonical_form(p, parse_word(p, o.word));
    int syl = static_cast<int>(c.word.size());
    int ls = word_length_S(p, c.word);
    std::string gens = o.gens.empty() ? "full" : o.gens;
    r.results()["gens"] = gens;
    r.results()["length"] = gens == "full" ? syl : ls;
    r.results()["syllables"] = syl;
    r.results()["length_s"] = ls;
    emit(r, o.tsv);
    return 0;
}

int cmd_ball(const Opts& o) {
    Report r("ball", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    BallOptions opt = ball_options(o);
    opt.want_hyperplanes = false;
    std::string gens = o.gens.empty() ? "full" : o.gens;
    ExploredBall b = explore_ball(p, {}, o.radius, parse_mode(gens), opt);
    ojson spheres = ojson::array();
    std::vector<long long> s(static_cast<size_t>(o.radius) + 1, 0);
    for (int d : b.dist) ++s[static_cast<size_t>(d)];
    for (long long k : s) spheres.push_back(k);
    ojson verts = ojson::array();
    for (size_t i = 0; i < b.verts.size(); ++i)
        verts.push_back(ojson{{"word", format_word(p, b.verts[i].word)}, {"dist", b.dist[i]}});
    r.results()["mode"] = gens;
    r.results()["size"] = b.verts.size();
    r.results()["spheres"] = spheres;
    r.results()["vertices"] = verts;
    r.cert()["radius"] = o.radius;
    r.cert()["cap"] = o.cap;
    r.cert()["max_vertices"] = opt.max_vertices;
    emit(r, o.tsv);
    return 0;
}

int cmd_hyperplanes(const Opts& o) {
    Report r("hyperplanes", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    ExploredBall b = explore_ball(p, {}, o.radius, BallMode::Full, ball_options(o));
    const HyperplaneStructure& hs = b.hyperplanes();
    ojson hyps = ojson::array();
    for (int J = 0; J < hs.num_hyp; ++J) {
        HyperplaneTypeReport t = hyperplane_type_and_label(b, J);
        ojson labels = ojson::array();
        for (int u : t.labels) labels.push_back(p.name(u));
        hyps.push_back(ojson{{"labels", labels},
                             {"right", t.right},
                             {"carrier_in_star_coset", t.carrier_in_star_coset},
                             {"cliques", hs.hyp_cliques[static_cast<size_t>(J)].size()},
                             {"edges", hs.hyp_edges[static_cast<size_t>(J)].size()},
                             {"sectors", hs.sector_count[static_cast<size_t>(J)]}});
    }
    r.results()["ball_size"] = b.verts.size();
    r.results()["num_hyperplanes"] = hs.num_hyp;
    r.results()["hyperplanes"] = hyps;
    r.cert()["radius"] = o.radius;
    r.cert()["cap"] = o.cap;
    emit(r, o.tsv);
    return 0;
}

int cmd_classify_group(const Opts& o) {
    Report r("classify-group", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    auto run = [&](const char* key, auto&& f) {
        try {
            r.results()[key] = classification(f());
        } catch (const std::exception& e) {
            r.results()[key] = classification({TriBool::Unknown, std::string("not computed: ") + e.what(), {}, {}});
            r.warn(std::string(key) + ": " + e.what());
        }
    };
    run("finite", [&] { return is_finite(p); });
    run("contracting", [&] { return contracting_exists(p); });
    run("acylindrically_hyperbolic", [&] { return acylindrically_hyperbolic(p); });
    run("conjugacy_transcendence", [&] { return transcendence_verdict(p, o.radius); });
    r.cert()["rate_radius"] = o.radius;
    emit(r, o.tsv);
    return 0;
}

int cmd_classify_element(const Opts& o) {
    Report r("classify-element", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    r.results()["contracting"] = classification(element_contracting_gp(p, parse_word(p, o.word)));
    emit(r, o.tsv);
    return 0;
}

int cmd_morse(const Opts& o) {
    Report r("morse", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    r.results()["morse"] = classification(element_morse_gp(p, parse_word(p, o.word)));
    emit(r, o.tsv);
    return 0;
}

ojson conjugacy_json(const PeriagroupPresentation& p, const ConjugacyGrowth& g, bool with_reps) {
    ojson out;
    out["c"] = g.series.c;
    out["method"] = g.table.method;
    out["stable"] = g.table.stable;
    if (with_reps) {
        ojson reps = ojson::array();
        for (const auto& row : g.table.reps) {
            ojson line = ojson::array();
            for (const auto& c : row) line.push_back(format_word(p, c.word));
            reps.push_back(line);
        }
        out["reps"] = reps;
    }
    return out;
}

int cmd_conj_growth(const Opts& o) {
    Report r("conj-growth", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    ConjugacyGrowth g = conjugacy_growth(p, o.max_n, o.method, o.slack, ball_options(o));
    r.results() = conjugacy_json(p, g, o.reps);
    r.cert()["max_n"] = o.max_n;
    r.cert()["slack"] = o.slack;
    emit(r, o.tsv);
    return 0;
}

int cmd_growth(const Opts& o) {
    Report r("growth", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    std::string gens = o.gens.empty() ? "S" : o.gens;
    GrowthSeries s = spherical_growth(p, o.max_n, parse_mode(gens), ball_options(o));
    RateEstimate rate = growth_rate_estimate(s);
    r.results()["mode"] = gens;
    r.results()["s"] = s.c;
    r.results()["rate"] = ojson{{"lo", rate.lo}, {"hi", rate.hi}, {"point", rate.point}};
    r.cert()["max_n"] = o.max_n;
    emit(r, o.tsv);
    return 0;
}

int cmd_series_product(const Opts& o) {
    Report r("series-product", o.echo);
    PeriagroupPresentation a = parse_presentation(r.add_input(o.file));
    PeriagroupPresentation b = parse_presentation(r.add_input(o.file2));
    ConjugacyGrowth ga = conjugacy_growth(a, o.max_n, o.method, o.slack, ball_options(o));
    ConjugacyGrowth gb = conjugacy_growth(b, o.max_n, o.method, o.slack, ball_options(o));
    r.results()["left"] = ga.series.c;
    r.results()["right"] = gb.series.c;
    r.results()["product"] = series_product(ga.series, gb.series).c;
    r.results()["stable"] = (ga.table.stable && gb.table.stable);
    r.cert()["max_n"] = o.max_n;
    r.cert()["slack"] = o.slack;
    emit(r, o.tsv);
    return 0;
}

int cmd_graph_check(const Opts& o) {
    Report r("graph-check", o.echo);
    FiniteGraph g = parse_graph(r.add_input(o.file));
    AxiomReport a = check_axioms(g);
    r.results()["k4minus_free"] = a.k4minus_free;
    r.results()["triangle_condition"] = a.triangle_condition;
    r.results()["quadrangle_condition"] = a.quadrangle_condition;
    r.results()["k32_free"] = a.k32_free;
    r.results()["cycle_condition"] = a.cycle_condition;
    r.results()["even_cycle_intersection"] = a.even_cycle_intersection;
    r.results()["clique_gated"] = a.clique_gated;
    r.results()["parallelism_transitive"] = a.parallelism_transitive;
    r.results()["paraclique"] = a.paraclique();
    r.results()["mediangle"] = a.mediangle();
    r.results()["quasimedian"] = a.quasimedian();
    r.results()["first_counterexample"] = a.first_counterexample;
    emit(r, o.tsv);
    return 0;
}

int cmd_qm_closure(const Opts& o) {
    Report r("qm-closure", o.echo);
    FiniteGraph g = parse_graph(r.add_input(o.file));
    QmClosure qc = qm_closure(g, o.bound ? o.bound : 200000);
    AxiomReport a = check_axioms(qc.closure);
    long long edges = 0;
    for (const auto& nb : qc.closure.nbrs) edges += static_cast<long long>(nb.size());
    r.results()["source"] = ojson{{"n", g.n}, {"hyperplanes", qc.source_hs.num_hyp}};
    r.results()["closure"] = ojson{{"n", qc.closure.n},
                                   {"edges", edges / 2},
                                   {"hyperplanes", qc.closure_hs.num_hyp},
                                   {"quasimedian", a.quasimedian()}};
    r.results()["embedding"] = qc.embedding;
    r.cert()["bound"] = o.bound ? o.bound : 200000;
    emit(r, o.tsv);
    return 0;
}

int cmd_quasi_cubulate(const Opts& o) {
    Report r("quasi-cubulate", o.echo);
    PartitionSpace ps = parse_parts(r.add_input(o.file));
    QuasiCubulation qc = quasi_cubulate(ps, o.bound ? o.bound : 200000);
    long long edges = 0;
    for (const auto& nb : qc.graph.nbrs) edges += static_cast<long long>(nb.size());
    r.results()["ground"] = ps.ground;
    r.results()["partitions"] = ps.num_partitions();
    r.results()["n"] = qc.graph.n;
    r.results()["edges"] = edges / 2;
    r.results()["principal"] = qc.principal;
    r.cert()["bound"] = o.bound ? o.bound : 200000;
    emit(r, o.tsv);
    return 0;
}

int cmd_contraction_profile(const Opts& o) {
    Report r("contraction-profile", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    ContractionProfile c = contraction_profile(p, parse_word(p, o.word), o.radius);
    ojson rows = ojson::array();
    for (auto [off, diam] : c.rows)
        rows.push_back(ojson{{"offset", off}, {"projection_diameter", diam}});
    r.results()["bounded_orbit"] = c.bounded_orbit;
    r.results()["rows"] = rows;
    r.cert()["radius"] = o.radius;
    emit(r, o.tsv);
    return 0;
}

int cmd_skewer_witness(const Opts& o) {
    Report r("skewer-witness", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    SkewerReport s = skewer_witness(p, parse_word(p, o.word), o.radius, ball_options(o));
    r.results()["found"] = s.witness.has_value();
    if (s.witness) {
        const SkewerWitness& w = *s.witness;
        r.results()["witness"] = ojson{{"hyperplane", w.J}, {"image", w.K},
                                       {"power", w.n},     {"sector_small", w.sector_small},
                                       {"sector_big", w.sector_big}, {"separated", w.separated},
                                       {"L", w.L}};
    }
    r.results()["nested_pairs"] = s.nested_pairs;
    r.results()["note"] = s.note;
    r.cert()["radius"] = s.radius;
    r.cert()["cap"] = o.cap;
    emit(r, o.tsv);
    return 0;
}

int cmd_coxeter_classify(const Opts& o) {
    Report r("coxeter-classify", o.echo);
    std::string text = r.add_input(o.file);
    CoxeterDiagram d;
    std::vector<std::string> names;
    if (o.file.size() >= 6 && o.file.substr(o.file.size() - 6) == ".peria") {
        PeriagroupPresentation p = parse_presentation(text);
        std::vector<int> verts;
        if (o.force_cox.empty()) {
            verts.resize(static_cast<size_t>(p.n()));
            std::iota(verts.begin(), verts.end(), 0);
        } else {
            verts = vertex_list(p, o.force_cox);
        }
        d = coxeter_diagram_of(p, verts);
        for (int v : verts) names.push_back(p.name(v));
    } else {
        d = parse_coxeter(text);
        for (int v = 0; v < d.n; ++v) names.push_back(std::to_string(v));
    }
    ojson comps = ojson::array();
    bool finite = true;
    for (const DiagramComponent& c : irreducible_components(d)) {
        IrreducibleCoxeterType t = classify_irreducible(c.diagram);
        if (t.tag != CoxeterTag::Spherical) finite = false;
        ojson vs = ojson::array();
        for (int v : c.vertices) vs.push_back(names[static_cast<size_t>(v)]);
        ojson entry{{"vertices", vs},
                    {"family", t.family},
                    {"type", tag_name(t.tag)},
                    {"infinite_dihedral", t.infinite_dihedral}};
        try {
            entry["gram"] = to_string(gram_signature(c.diagram));
        } catch (const std::exception& e) {
            r.warn(std::string("gram signature: ") + e.what());
        }
        comps.push_back(entry);
    }
    r.results()["components"] = comps;
    r.results()["finite"] = finite;
    emit(r, o.tsv);
    return 0;
}

int cmd_omega(const Opts& o) {
    Report r("omega", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    std::vector<int> force = vertex_list(p, o.force_cox);
    OmegaFibers f = omega_fibers(p, o.bound ? o.bound : 100000, force);
    r.results()["product_vertices"] = name_list(p, f.psic);
    r.results()["reflection_part_finite"] = f.cpsi_finite;
    r.results()["reflection_order"] = f.cpsi_order;
    ojson fibers = ojson::array();
    for (size_t i = 0; i < f.psic.size(); ++i)
        fibers.push_back(ojson{{"vertex", p.name(f.psic[i])},
                               {"cosets", f.fiber[i] ? ojson(*f.fiber[i]) : ojson(nullptr)}});
    r.results()["fibers"] = fibers;
    ojson pairs = ojson::array();
    for (const auto& [pr, complete] : f.bipartite_complete)
        pairs.push_back(ojson{{"pair", ojson::array({p.name(pr.first), p.name(pr.second)})},
                              {"complete", complete}});
    r.results()["bipartite_complete"] = pairs;
    if (f.cpsi_finite) {
        long long edges = 0;
        for (const auto& nb : f.omega.nbrs) edges += static_cast<long long>(nb.size());
        r.results()["crossing_graph"] = ojson{{"nodes", f.omega.n},
                                              {"edges", edges / 2},
                                              {"is_join", f.omega.n > 0 && graph_is_join(f.omega)}};
    }
    r.cert()["bound"] = o.bound ? o.bound : 100000;
    emit(r, o.tsv);
    return 0;
}

int cmd_centraliser_rot(const Opts& o) {
    Report r("centraliser-rot", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    RotCentraliser c = centraliser_of_rot(p, vertex_list(p, o.force_cox));
    r.results()["product_vertices"] = name_list(p, c.psic);
    r.results()["reflection_vertices"] = name_list(p, c.psi);
    r.results()["lambda"] = name_list(p, c.lambda);
    r.results()["lambda_finite"] = c.lambda_finite;
    emit(r, o.tsv);
    return 0;
}

int cmd_disjoint_cosets(const Opts& o) {
    Report r("disjoint-cosets", o.echo);
    PeriagroupPresentation p = parse_presentation(r.add_input(o.file));
    std::vector<int> v1 = vertex_list(p, o.sets1), v2 = vertex_list(p, o.sets2);
    DisjointCosetReport d = disjoint_coset_exists(p, {v1.begin(), v1.end()},
                                                  {v2.begin(), v2.end()},
                                                  o.bound ? o.bound : 100000);
    r.results()["exists"] = d.exists;
    r.results()["witness"] = format_word(p, d.witness);
    r.results()["factor"] = name_list(p, d.factor);
    r.results()["verified"] = d.verified;
    r.results()["checked"] = d.checked;
    r.results()["note"] = d.note;
    r.cert()["bound"] = o.bound ? o.bound : 100000;
    emit(r, o.tsv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations with periagroups: normal forms, Cayley-ball "
                 "geometry, graph recognizers, classification, and growth"};
    app.require_subcommand(1);

    Opts o;
    int rc = 0;

    auto sub = [&](const std::string& name, const std::string& desc, auto fn) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_flag("--tsv", o.tsv, "flat tab-separated output");
        s->add_flag("--json", "structured output (default)");
        s->callback([&o, &rc, fn] { rc = fn(o); });
        return s;
    };
    auto file_arg = [&](CLI::App* s) { s->add_option("file", o.file, "input file")->required(); };
    auto word_arg = [&](CLI::App* s) { s->add_option("word", o.word, "word")->required(); };

    CLI::App* s;

    s = sub("check", "validate a presentation file", cmd_check);
    file_arg(s);

    s = sub("nf", "canonical form of a word", cmd_nf);
    file_arg(s);
    word_arg(s);

    s = sub("eq", "decide equality of two words", cmd_eq);
    file_arg(s);
    word_arg(s);
    s->add_option("word2", o.word2, "second word")->required();

    s = sub("len", "geodesic length of a word", cmd_len);
    file_arg(s);
    word_arg(s);
    s->add_option("--gens", o.gens, "generating set")->check(CLI::IsMember({"full", "S"}));

    s = sub("ball", "enumerate a Cayley ball", cmd_ball);
    file_arg(s);
    s->add_option("--radius", o.radius, "ball radius");
    s->add_option("--gens", o.gens, "generating set")->check(CLI::IsMember({"full", "S"}));
    s->add_option("--cap", o.cap, "exponent cap for infinite cyclic vertex groups");
    s->add_option("--bound", o.bound, "vertex budget");

    s = sub("hyperplanes", "hyperplane structure of a full-mode ball", cmd_hyperplanes);
    file_arg(s);
    s->add_option("--radius", o.radius, "ball radius");
    s->add_option("--cap", o.cap, "exponent cap for infinite cyclic vertex groups");
    s->add_option("--bound", o.bound, "vertex budget");

    s = sub("classify-group", "group-level classification", cmd_classify_group);
    file_arg(s);
    s->add_option("--radius", o.radius, "growth-rate estimation radius");

    s = sub("classify-element", "is the element contracting", cmd_classify_element);
    file_arg(s);
    word_arg(s);

    s = sub("morse", "is the element Morse", cmd_morse);
    file_arg(s);
    word_arg(s);

    s = sub("conj-growth", "conjugacy growth function", cmd_conj_growth);
    file_arg(s);
    s->add_option("--max-n", o.max_n, "count lengths up to here");
    s->add_option("--slack", o.slack, "extra saturation radius");
    s->add_option("--method", o.method, "counting method")
        ->check(CLI::IsMember({"saturation", "exact-gp"}));
    s->add_option("--bound", o.bound, "vertex budget");
    s->add_flag("--reps", o.reps, "include class representatives");

    s = sub("growth", "spherical growth function", cmd_growth);
    file_arg(s);
    s->add_option("--max-n", o.max_n, "count lengths up to here");
    s->add_option("--gens", o.gens, "generating set")->check(CLI::IsMember({"full", "S"}));
    s->add_option("--bound", o.bound, "vertex budget");

    s = sub("series-product", "product of two conjugacy series", cmd_series_product);
    file_arg(s);
    s->add_option("file2", o.file2, "second input file")->required();
    s->add_option("--max-n", o.max_n, "count lengths up to here");
    s->add_option("--slack", o.slack, "extra saturation radius");
    s->add_option("--method", o.method, "counting method")
        ->check(CLI::IsMember({"saturation", "exact-gp"}));
    s->add_option("--bound", o.bound, "vertex budget");

    s = sub("graph-check", "paraclique / mediangle / quasi-median recognizers", cmd_graph_check);
    file_arg(s);

    s = sub("qm-closure", "quasi-median closure of a paraclique graph", cmd_qm_closure);
    file_arg(s);
    s->add_option("--bound", o.bound, "closure size budget");

    s = sub("quasi-cubulate", "dual graph of a space with partitions", cmd_quasi_cubulate);
    file_arg(s);
    s->add_option("--bound", o.bound, "closure size budget");

    s = sub("contraction-profile", "projection diameters along an orbit", cmd_contraction_profile);
    file_arg(s);
    word_arg(s);
    s->add_option("--radius", o.radius, "sample ball radius");

    s = sub("skewer-witness", "search for a skewered well-separated pair", cmd_skewer_witness);
    file_arg(s);
    word_arg(s);
    s->add_option("--radius", o.radius, "sample ball radius");
    s->add_option("--cap", o.cap, "exponent cap for infinite cyclic vertex groups");
    s->add_option("--bound", o.bound, "vertex budget");

    s = sub("coxeter-classify", "spherical/affine/other type of a reflection group",
            cmd_coxeter_classify);
    file_arg(s);
    s->add_option("--force-cox", o.force_cox, "restrict to these vertices (comma-separated)");

    s = sub("omega", "coset fibers and the crossing graph", cmd_omega);
    file_arg(s);
    s->add_option("--bound", o.bound, "enumeration budget");
    s->add_option("--force-cox", o.force_cox,
                  "extra order-2 vertices for the reflection side (comma-separated)");

    s = sub("centraliser-rot", "centraliser shape of the rotation subgroup", cmd_centraliser_rot);
    file_arg(s);
    s->add_option("--force-cox", o.force_cox,
                  "extra order-2 vertices for the reflection side (comma-separated)");

    s = sub("disjoint-cosets", "coset translate avoiding a parabolic", cmd_disjoint_cosets);
    file_arg(s);
    s->add_option("set1", o.sets1, "first vertex set (comma-separated names)")->required();
    s->add_option("set2", o.sets2, "second vertex set (comma-separated names)")->required();
    s->add_option("--bound", o.bound, "enumeration budget");

    for (int i = 1; i < argc; ++i) o.echo.push_back(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
