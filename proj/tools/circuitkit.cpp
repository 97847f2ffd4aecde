#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "circuitkit/augment.hpp"
#include "circuitkit/errors.hpp"
#include "circuitkit/generate.hpp"
#include "circuitkit/graver.hpp"
#include "circuitkit/io.hpp"
#include "circuitkit/proximity.hpp"

using namespace circuitkit;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

struct Options {
    std::string input;
    std::string output;
    std::uint64_t seed = 1;
    std::string epsilon;
    std::string rule = "steepest";
    std::optional<Index> cap;
    std::string family;
    std::string format = "json";
    std::string target;
    bool trace = false;
    bool check = false;
    Index nodes = 5, arcs = 7, rows = 2, cols = 4;
};

// --format only governs output; CSV input is recognized by content.
bool looks_like_csv(const std::string& path) {
    if (path.empty()) throw ParseError("--input is required");
    std::string text = io::read_text_file(path);
    auto p = text.find_first_not_of(" \t\r\n");
    return p != std::string::npos && text[p] != '{' && text[p] != '[';
}

// Unwraps our own reports so generate output feeds straight into other verbs.
json load_document(const Options& o) {
    if (o.input.empty()) throw ParseError("--input is required");
    json j = io::read_json_file(o.input);
    if (j.is_object()) {
        if (j.contains("lp")) return j.at("lp");
        if (j.contains("matrix")) return j.at("matrix");
    }
    return j;
}

RatMatrix load_matrix(const Options& o) {
    if (o.input.empty()) throw ParseError("--input is required");
    if (looks_like_csv(o.input)) return io::matrix_from_csv(io::read_text_file(o.input));
    json j = load_document(o);
    if (j.is_object() && j.contains("A") && !j.contains("entries")) return io::matrix_from_json(j.at("A"));
    return io::matrix_from_json(j);
}

Subspace load_subspace(const Options& o) {
    if (looks_like_csv(o.input)) return Subspace::kernel_of(load_matrix(o));
    json j = load_document(o);
    if (j.is_object() && j.contains("W")) return io::subspace_from_json(j.at("W"));
    return io::subspace_from_json(j);
}

Rational parse_epsilon(const Options& o, const Rational& fallback) {
    return o.epsilon.empty() ? fallback : parse_rational(o.epsilon);
}

void emit(const Options& o, const json& j, const std::string& csv = "") {
    std::string text = (o.format == "csv" && !csv.empty()) ? csv : j.dump(2) + "\n";
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw ParseError("cannot write " + o.output);
    out << text;
}

std::string rows_to_csv(const std::vector<IntVec>& rows) {
    std::string s;
    for (const auto& r : rows) {
        for (Index i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i].get_str();
        s += "\n";
    }
    return s;
}

int cmd_analyze(const Options& o) {
    Subspace W = load_subspace(o);
    ImbalanceReport rep = imbalances(W);
    json j = io::to_json(rep);
    j["n"] = W.ambient_dim();
    j["dim"] = W.dim();
    j["circuits"] = W.circuits().size();
    RatMatrix A = W.kernel_rep();
    j["A"] = io::to_json(A);
    if (A.rows() > 0) {
        TUResult tu = is_TU(basis_form(A, first_column_basis(A)));
        j["basis_form_tu"] = tu.tu;
    }
    j["anchored"] = is_anchored(W).anchored;
    json comps = json::array();
    for (const auto& c : components(W)) comps.push_back(io::to_json(c));
    j["components"] = comps;
    if (is_non_separable(W) && W.dim() > 0 && W.dim() < W.ambient_dim()) j["kappa_star"] = io::to_json(kappa_star(W));
    EjResult ej = ej_check(A);
    if (ej.applicable) j["column_sums_at_most_two"] = {{"holds", ej.holds}};
    std::string csv;
    if (o.format == "csv") csv = io::matrix_to_csv(RatMatrix::from_rows(pairwise(W).kappa, W.ambient_dim()));
    emit(o, io::report("analyze", j), csv);
    return kOk;
}

int cmd_solve(const Options& o) {
    LPInstance lp = io::lp_from_json(load_document(o));
    Rule rule = parse_rule(o.rule);
    RunOptions ro;
    ro.cap = o.cap;
    ro.record_epsilon = o.check || rule == Rule::SteepestDescent;
    AugmentationTrace t = run(lp, rule, ro);
    const Vec& x = t.steps.empty() ? t.x0 : t.steps.back().x;
    json j = {{"rule", to_string(rule)},
              {"terminated", to_string(t.terminated)},
              {"iterations", t.length()},
              {"x", io::to_json(x)},
              {"objective", io::to_json(t.steps.empty() ? t.objective0 : t.steps.back().objective)}};
    if (o.trace) j["trace"] = io::to_json(t);
    int code = kOk;
    if (o.check) {
        try {
            j["audit"] = io::to_json(audit_trace(t, lp.A, lp.c, lp.u));
        } catch (const AuditFailure& e) {
            j["audit"] = {{"failed", e.lemma()}, {"step", e.step()}, {"message", e.what()}};
            code = kFinding;
        }
    }
    std::string csv;
    if (o.format == "csv") {
        csv = "step,objective\n0," + to_string(t.objective0) + "\n";
        for (Index s = 0; s < t.steps.size(); ++s) csv += std::to_string(s + 1) + "," + to_string(t.steps[s].objective) + "\n";
    }
    emit(o, io::report("solve", j), csv);
    return code;
}

int cmd_prox(const Options& o) {
    json doc = load_document(o);
    Subspace W = io::subspace_from_json(doc.contains("W") ? doc.at("W") : doc.at("A"));
    if (!doc.contains("d")) throw ParseError("prox input needs \"d\"");
    Vec d = io::vec_from_json(doc.at("d"));
    json j;
    ProximityWitness f = hoffman_feasibility_witness(W, d);
    j["feasibility"] = io::to_json(f);
    bool breach = f.slack < 0;
    if (doc.contains("c")) {
        ProximityWitness w = hoffman_opt_witness(W, d, io::vec_from_json(doc.at("c")));
        j["optimality"] = io::to_json(w);
        breach = breach || w.slack < 0;
    }
    j["within_bounds"] = !breach;
    emit(o, io::report("prox", j));
    return breach ? kFinding : kOk;
}

int cmd_blackbox(const Options& o) {
    json doc = load_document(o);
    Subspace W = io::subspace_from_json(doc.contains("W") ? doc.at("W") : doc.at("A"));
    if (!doc.contains("d")) throw ParseError("blackbox input needs \"d\"");
    Vec d = io::vec_from_json(doc.at("d"));
    Index n = W.ambient_dim();
    Integer kb = imbalances(W).kappa_bar;
    Rational base = Rational(kb) + Rational(static_cast<long>(n));
    Rational eps = parse_epsilon(o, 1 / (base * base * base));
    json j;
    if (doc.contains("c")) {
        ApxSolution s = apx_oracle(W, d, io::vec_from_json(doc.at("c")), eps, o.seed);
        j["oracle"] = io::to_json(s);
        j["conditions_hold"] = apx_conditions_hold(s, d, io::vec_from_json(doc.at("c")));
    }
    FeasibilityRun r = feasibility_simplified(W, d, eps, o.seed);
    j["feasibility"] = io::to_json(r);
    emit(o, io::report("blackbox", j));
    return kOk;
}

int cmd_graver(const Options& o) {
    json doc = looks_like_csv(o.input) ? json() : load_document(o);
    RatMatrix A = load_matrix(o);
    GraverBasis g = graver_basis(A);
    ImbalanceReport rep = imbalances(Subspace::kernel_of(A));
    Integer n = static_cast<long>(A.cols());
    bool sandwich = rep.kappa_bar <= g.ginf && g.ginf <= n * rep.kappa_bar;
    json j = io::to_json(g);
    j["kappa_bar"] = io::to_json(rep.kappa_bar);
    j["sandwich_holds"] = sandwich;
    bool ok = sandwich;
    if (doc.is_object() && doc.contains("b") && doc.contains("c")) {
        IpProximity p = ip_proximity_check(A, io::vec_from_json(doc.at("b")), io::vec_from_json(doc.at("c")));
        j["ip_proximity"] = io::to_json(p);
        ok = ok && p.within_bound;
    }
    emit(o, io::report("graver", j), rows_to_csv(g.elements));
    return ok ? kOk : kFinding;
}

int cmd_conjecture(const Options& o) {
    Subspace W = load_subspace(o);
    std::vector<IntVec> targets;
    if (!o.target.empty()) {
        targets.push_back(io::intvec_from_json(json::parse(o.target)));
    } else {
        targets = graver_basis(W.kernel_rep()).elements;
    }
    json results = json::array();
    Index violated = 0;
    for (const auto& z : targets) {
        ConjectureReport r = conjecture_decompose(W, z);
        bool verified = r.status == ConjectureReport::Status::Holds ? verify_conjecture_report(W, r) : true;
        if (r.status == ConjectureReport::Status::Violated || !verified) ++violated;
        json e = io::to_json(r);
        e["verified"] = verified;
        results.push_back(e);
    }
    json j = {{"checked", targets.size()}, {"violated", violated}, {"results", results}};
    emit(o, io::report("conjecture", j));
    return violated ? kFinding : kOk;
}

int cmd_appendix(const Options& o) {
    AppendixReport r = appendix_counterexample();
    bool leg1 = r.kappa_dot == 5850;
    bool leg2 = r.primitive_vectors.size() == 8;
    bool leg3 = !r.representations.empty();
    for (const auto& rep : r.representations) leg3 = leg3 && !rep.failing_pairs.empty();
    json j = io::to_json(r);
    j["legs"] = {{"kappa_dot", leg1}, {"search", leg2}, {"representations", leg3}};
    j["pass"] = leg1 && leg2 && leg3;
    emit(o, io::report("appendix", j));
    return (leg1 && leg2 && leg3) ? kOk : kFinding;
}

int cmd_generate(const Options& o) {
    if (o.family.empty()) throw BadParameters("--family is required");
    gen::GeneratorSpec spec{o.family, o.nodes, o.arcs, o.rows, o.cols, o.seed};
    auto out = gen::generate(spec);
    json j = {{"family", o.family}, {"seed", o.seed}};
    std::string csv;
    if (auto* A = std::get_if<RatMatrix>(&out)) {
        j["matrix"] = io::to_json(*A);
        csv = io::matrix_to_csv(*A);
    } else {
        j["lp"] = io::to_json(std::get<LPInstance>(out));
    }
    emit(o, io::report("generate", j), csv);
    return kOk;
}

int cmd_diameter(const Options& o) {
    LPInstance lp = io::lp_from_json(load_document(o));
    auto vs = vertices(lp);
    Index diam = edge_graph_diameter(lp);
    json j = {{"vertices", vs.size()}, {"diameter", diam}, {"fractionality", io::to_json(fractionality(lp))}};
    StandardForm sf = to_standard_form(lp);
    Subspace W = Subspace::kernel_of(sf.A);
    Index n = sf.A.cols(), m = rank(sf.A);
    if (n > m && m >= 1) {
        Rational kappa = imbalances(W).kappa;
        j["kappa"] = io::to_json(kappa);
        j["circuit_diameter_bound"] = diameter_bound(n, m, kappa);
    }
    emit(o, io::report("diameter", j));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact circuit imbalance toolkit"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("input,--input,-i", o.input, "Input file (JSON, or CSV matrix)");
        }
        sub->add_option("--output,-o", o.output, "Write the report here instead of stdout");
        sub->add_option("--seed", o.seed, "Random seed");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* analyze = app.add_subcommand("analyze", "Circuit imbalances of ker(A)");
    common(analyze, true);

    auto* solve = app.add_subcommand("solve", "Circuit augmentation on an LP");
    common(solve, true);
    solve->add_option("--rule", o.rule, "steepest | dantzig | deepest | ratio | support | guided");
    solve->add_option("--cap", o.cap, "Iteration cap");
    solve->add_flag("--trace", o.trace, "Include the full trace");
    solve->add_flag("--check", o.check, "Audit the trace");

    auto* prox = app.add_subcommand("prox", "Hoffman proximity witnesses");
    common(prox, true);

    auto* blackbox = app.add_subcommand("blackbox", "Approximate-oracle feasibility");
    common(blackbox, true);
    blackbox->add_option("--epsilon", o.epsilon, "Oracle accuracy p/q");

    auto* graver = app.add_subcommand("graver", "Graver basis and IP proximity");
    common(graver, true);

    auto* conjecture = app.add_subcommand("conjecture", "Conformal 1/kappa_dot decompositions");
    common(conjecture, true);
    conjecture->add_option("--target", o.target, "Single integer kernel vector as a JSON list");

    auto* appendix = app.add_subcommand("appendix", "Reproduce the 2x4 counterexample");
    common(appendix, false);

    auto* generate = app.add_subcommand("generate", "Generate a fixture instance");
    common(generate, false);
    generate->add_option("--family", o.family, "flow | incidence | dumbbell | tu-network | random-rational")
        ->required();
    generate->add_option("--nodes", o.nodes);
    generate->add_option("--arcs", o.arcs);
    generate->add_option("--rows", o.rows);
    generate->add_option("--cols", o.cols);

    auto* diameter = app.add_subcommand("diameter", "Vertex-edge diameter of a bounded LP");
    common(diameter, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*analyze) return cmd_analyze(o);
        if (*solve) return cmd_solve(o);
        if (*prox) return cmd_prox(o);
        if (*blackbox) return cmd_blackbox(o);
        if (*graver) return cmd_graver(o);
        if (*conjecture) return cmd_conjecture(o);
        if (*appendix) return cmd_appendix(o);
        if (*generate) return cmd_generate(o);
        if (*diameter) return cmd_diameter(o);
    } catch (const AuditFailure& e) {
        std::cerr << e.what() << "\n";
        return kFinding;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInputError;
}
