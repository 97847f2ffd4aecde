#include "circuitkit/io.hpp"

#include <fstream>
#include <sstream>

#include "circuitkit/errors.hpp"

namespace circuitkit::io {

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return parse_rational(std::to_string(j.get<std::uint64_t>()));
        return parse_rational(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_number_float()) throw ParseError("floating-point literal " + j.dump() + "; use an exact \"p/q\" string");
    throw ParseError("expected a rational, got " + j.dump());
}

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& z) { return z.get_str(); }

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json to_json(const IndexSet& s) { return json(std::vector<Index>(s.begin(), s.end())); }

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vec v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

IntVec intvec_from_json(const json& j) {
    IntVec out;
    for (const auto& q : vec_from_json(j)) {
        if (!is_integer(q)) throw ParseError("expected integer entries, got " + to_string(q));
        out.push_back(q.get_num());
    }
    return out;
}

json to_json(const RatMatrix& A) {
    json rows = json::array();
    for (Index i = 0; i < A.rows(); ++i) rows.push_back(to_json(A.row(i)));
    return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", rows}};
}

RatMatrix matrix_from_json(const json& j) {
    const json* entries = &j;
    std::optional<Index> rows, cols;
    if (j.is_object()) {
        if (!j.contains("entries")) throw ParseError("matrix object needs \"entries\"");
        entries = &j.at("entries");
        if (j.contains("rows")) rows = j.at("rows").get<Index>();
        if (j.contains("cols")) cols = j.at("cols").get<Index>();
    }
    if (!entries->is_array()) throw ParseError("matrix entries must be a list of rows");
    std::vector<Vec> data;
    for (const auto& r : *entries) data.push_back(vec_from_json(r));
    Index c = cols.value_or(data.empty() ? 0 : data.front().size());
    for (const auto& r : data)
        if (r.size() != c) throw ParseError("ragged matrix rows");
    if (rows && *rows != data.size()) throw ParseError("\"rows\" disagrees with the entries");
    return RatMatrix::from_rows(data, c);
}

RatMatrix matrix_from_csv(const std::string& text) {
    std::vector<Vec> data;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        Vec row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            auto a = cell.find_first_not_of(" \t"), b = cell.find_last_not_of(" \t");
            if (a == std::string::npos) throw ParseError("empty CSV cell");
            row.push_back(parse_rational(cell.substr(a, b - a + 1)));
        }
        if (!data.empty() && row.size() != data.front().size()) throw ParseError("ragged CSV rows");
        data.push_back(std::move(row));
    }
    return RatMatrix::from_rows(data, data.empty() ? 0 : data.front().size());
}

std::string matrix_to_csv(const RatMatrix& A) {
    std::string out;
    for (Index i = 0; i < A.rows(); ++i) {
        for (Index j = 0; j < A.cols(); ++j) out += (j ? "," : "") + to_string(A(i, j));
        out += "\n";
    }
    return out;
}

json to_json(const Subspace& W) { return {{"kernel_of", to_json(W.kernel_rep())}, {"dim", W.dim()}}; }

Subspace subspace_from_json(const json& j) {
    if (j.is_object() && j.contains("kernel_of")) return Subspace::kernel_of(matrix_from_json(j.at("kernel_of")));
    if (j.is_object() && j.contains("span_of")) return Subspace::span_of(matrix_from_json(j.at("span_of")));
    if (j.is_object() && j.contains("A") && !j.contains("entries")) return Subspace::kernel_of(matrix_from_json(j.at("A")));
    return Subspace::kernel_of(matrix_from_json(j));
}

json to_json(const LPInstance& lp) {
    json u = nullptr;
    if (lp.has_finite_bounds()) {
        u = json::array();
        for (const auto& ui : lp.u) u.push_back(ui ? to_json(*ui) : json(nullptr));
    }
    return {{"A", to_json(lp.A)}, {"b", to_json(lp.b)}, {"c", to_json(lp.c)}, {"u", u}};
}

LPInstance lp_from_json(const json& j) {
    if (!j.is_object() || !j.contains("A")) throw ParseError("LP JSON needs \"A\"");
    RatMatrix A = matrix_from_json(j.at("A"));
    Vec b = j.contains("b") ? vec_from_json(j.at("b")) : zeros(A.rows());
    Vec c = j.contains("c") ? vec_from_json(j.at("c")) : zeros(A.cols());
    if (!j.contains("u") || j.at("u").is_null()) {
        if (b.size() != A.rows() || c.size() != A.cols()) throw DimensionMismatch("LP vector lengths do not match A");
        return LPInstance::standard(A, b, c);
    }
    UpperBounds u;
    for (const auto& e : j.at("u")) u.push_back(e.is_null() ? std::nullopt : std::optional<Rational>(rational_from_json(e)));
    return LPInstance::bounded(A, b, c, u);
}

json to_json(const LPResult& r) {
    json j = {{"status", to_string(r.status)}};
    if (r.status == LPStatus::Optimal) {
        j["x"] = to_json(r.primal);
        j["objective"] = to_json(r.objective);
        j["basis"] = to_json(r.basis);
        j["y"] = to_json(r.dual);
        if (!r.dual_upper.empty()) j["t"] = to_json(r.dual_upper);
    } else {
        j["certificate"] = to_json(r.certificate);
    }
    return j;
}

json to_json(const ElementaryVector& g) { return to_json(g.vector); }

namespace {

json witness_json(const MeasureWitness& w) {
    return {{"circuit", to_json(w.circuit)}, {"i", w.i}, {"j", w.j}};
}

}  // namespace

json to_json(const ImbalanceReport& r) {
    json j = {{"kappa", to_json(r.kappa)}, {"kappa_dot", to_json(r.kappa_dot)}, {"kappa_bar", to_json(r.kappa_bar)}};
    json w = json::object();
    if (r.kappa_witness) w["kappa"] = witness_json(*r.kappa_witness);
    if (r.kappa_bar_witness) w["kappa_bar"] = witness_json(*r.kappa_bar_witness);
    json kd = json::array();
    for (const auto& x : r.kappa_dot_witnesses) kd.push_back(witness_json(x));
    w["kappa_dot"] = kd;
    j["witnesses"] = w;
    return j;
}

json to_json(const CircuitRatioDigraph& G) {
    json rows = json::array();
    for (Index i = 0; i < G.n; ++i) rows.push_back(to_json(G.kappa[i]));
    return rows;
}

json to_json(const KappaStarResult& r) {
    json d = json::array();
    for (const auto& p : r.rescaling) d.push_back({{"coeff", to_json(p.coeff)}, {"exponent", p.exponent}});
    json j = {{"product", to_json(r.value.product)},
              {"length", r.value.length},
              {"approx", to_double(r.value)},
              {"witness_cycle", r.witness_cycle},
              {"rescaling", d}};
    if (r.rational_rescaling) j["rational_rescaling"] = to_json(*r.rational_rescaling);
    return j;
}

json to_json(const AugmentationTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        json e = {{"circuit", to_json(s.circuit)}, {"alpha", to_json(s.alpha)}, {"x", to_json(s.x)},
                  {"objective", to_json(s.objective)}};
        if (s.epsilon) e["epsilon"] = to_json(*s.epsilon);
        if (s.relative_step) e["relative_step"] = to_json(*s.relative_step);
        steps.push_back(e);
    }
    json j = {{"rule", to_string(t.rule)},
              {"terminated", to_string(t.terminated)},
              {"x0", to_json(t.x0)},
              {"objective0", to_json(t.objective0)},
              {"iterations", t.length()},
              {"steps", steps}};
    if (t.epsilon0) j["epsilon0"] = to_json(*t.epsilon0);
    if (!t.target_basis.empty()) j["target_basis"] = to_json(t.target_basis);
    return j;
}

json to_json(const AuditReport& r) {
    json f = json::array();
    for (const auto& e : r.freezes) f.push_back({{"variable", e.variable}, {"from_step", e.from_step}});
    return {{"steps", r.steps}, {"windows_checked", r.windows_checked}, {"decay_factor", to_json(r.decay_factor)},
            {"freezes", f}};
}

json to_json(const ProximityWitness& w) {
    return {{"point", to_json(w.point)}, {"bound", to_json(w.bound)}, {"distance", to_json(w.distance)},
            {"slack", to_json(w.slack)}};
}

json to_json(const TransferResult& r) {
    json j = {{"bound", to_json(r.bound)}, {"R", to_json(r.R)}};
    if (r.attained) j["attained"] = to_json(*r.attained);
    if (r.x_star) j["x_star"] = to_json(*r.x_star);
    if (!r.max_dual_on_R.empty()) j["max_dual_on_R"] = to_json(Vec(r.max_dual_on_R));
    return j;
}

json to_json(const FixingResult& r) {
    return {{"threshold", to_json(r.threshold)}, {"R0", to_json(r.R0)}, {"Ru", to_json(r.Ru)},
            {"max_on_R0", to_json(Vec(r.max_on_R0))}, {"min_on_Ru", to_json(Vec(r.min_on_Ru))}};
}

json to_json(const ApxSolution& s) {
    return {{"x_tilde", to_json(s.x_tilde)}, {"epsilon", to_json(s.epsilon)}, {"seed", s.seed},
            {"t", to_json(s.t)}, {"x_star", to_json(s.x_star)}, {"y", to_json(s.y)}, {"opt", to_json(s.opt)}};
}

json to_json(const FeasibilityRun& r) {
    return {{"x", to_json(r.x)}, {"depth", r.depth}, {"oracle_calls", r.oracle_calls}};
}

json to_json(const GraverBasis& g) {
    json el = json::array();
    for (const auto& v : g.elements) el.push_back(to_json(v));
    return {{"elements", el},
            {"size", g.elements.size()},
            {"g1", to_json(g.g1)},
            {"ginf", to_json(g.ginf)},
            {"method", g.method == GraverMethod::Box ? "box" : "completion"},
            {"l1_bound", to_json(g.l1_bound)},
            {"box_points", to_json(g.box_points)}};
}

json to_json(const IpProximity& r) {
    return {{"x_lp", to_json(r.x_lp)},         {"x_ip", to_json(r.x_ip)},
            {"lp_opt", to_json(r.lp_opt)},     {"ip_opt", to_json(r.ip_opt)},
            {"distance_l1", to_json(r.distance_l1)}, {"distance_inf", to_json(r.distance_inf)},
            {"bound", to_json(r.bound)},       {"within_bound", r.within_bound},
            {"oracle_used", r.oracle_used}};
}

json to_json(const ConjectureReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back({{"lambda", to_json(t.coefficient)}, {"circuit", to_json(t.circuit)}});
    json cands = json::array();
    for (const auto& g : r.candidates) cands.push_back(to_json(g));
    return {{"target", to_json(r.target)},
            {"status", r.status == ConjectureReport::Status::Holds ? "holds" : "violated"},
            {"kappa_dot", to_json(r.kappa_dot)},
            {"terms", terms},
            {"candidates", cands},
            {"searched", r.searched}};
}

namespace {

json hk_witness_json(const HkWitness& w) {
    return {{"circuit", to_json(w.circuit)}, {"ell", w.ell}, {"basis", to_json(w.basis)}, {"d", to_json(w.d)},
            {"vertex", to_json(w.vertex)}, {"denominator", to_json(w.denominator)}};
}

}  // namespace

json to_json(const HkReport& r) {
    return {{"kappa_dot", to_json(r.kappa_dot)},
            {"trials", r.trials},
            {"vertices_checked", r.vertices_checked},
            {"observed_lcm", to_json(r.observed_lcm)},
            {"all_divide", r.all_divide},
            {"witness_count", r.witnesses.size()},
            {"witness_lcm", to_json(r.witness_lcm)},
            {"extremal", r.witnesses.empty() ? json(nullptr) : hk_witness_json(r.extremal)}};
}

json to_json(const AppendixReport& r) {
    json prim = json::array(), nonprim = json::array(), reps = json::array();
    for (const auto& v : r.primitive_vectors) prim.push_back(to_json(v));
    for (const auto& v : r.non_primitive_vectors) nonprim.push_back(to_json(v));
    for (const auto& rep : r.representations) {
        json pairs = json::array();
        for (const auto& p : rep.failing_pairs) pairs.push_back(to_json(p));
        reps.push_back({{"v", to_json(rep.v)},
                        {"w", to_json(rep.w)},
                        {"product", to_json(rep.product)},
                        {"witness_cols", to_json(rep.witness_cols)},
                        {"witness_det", to_json(rep.witness_det)},
                        {"failing_pairs", pairs}});
    }
    return {{"A", to_json(r.A)},
            {"kappa_dot", to_json(r.kappa_dot)},
            {"primitive_vectors", prim},
            {"non_primitive_vectors", nonprim},
            {"representations", reps},
            {"all_pairs_checked", r.all_pairs_checked},
            {"all_pairs_fail", r.all_pairs_fail}};
}

json report(const std::string& kind, json payload) {
    json j = {{"schema_version", kSchemaVersion}, {"kind", kind}};
    if (payload.is_object())
        for (auto& [k, v] : payload.items()) j[k] = v;
    else
        j["result"] = std::move(payload);
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace circuitkit::io
