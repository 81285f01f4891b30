#include "torcor/json_io.hpp"

#include <utility>

#include "torcor/errors.hpp"

namespace torcor {

namespace {

long read_count(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string("expected an integer for ") + what);
    return j.get<long>();
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

Json parse_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON document");
    return j;
}

Json to_json(const Rat& x) { return x.get_str(); }

Json to_json(const Int& x) { return x.get_str(); }

Json to_json(const RatVector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

Json to_json(const IntVector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(to_json(x));
    return j;
}

Json to_json(const RatMatrix& a) {
    Json j = Json::array();
    for (int i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < a.cols(); ++k) row.push_back(to_json(a.at(i, k)));
        j.push_back(std::move(row));
    }
    return j;
}

Json to_json(const std::vector<RatVector>& points) {
    Json j = Json::array();
    for (const auto& v : points) j.push_back(to_json(v));
    return j;
}

Json to_json(const std::vector<IntVector>& points) {
    Json j = Json::array();
    for (const auto& v : points) j.push_back(to_json(v));
    return j;
}

Json to_json(const Lattice& l) {
    Json j;
    j["m"] = l.ambient();
    j["rank"] = l.rank();
    j["basis"] = to_json(l.basis());
    return j;
}

Json to_json(const FiniteSubgroup& h) { return to_json(h.carrier()); }

Json to_json(const Correspondence& p) {
    Json j;
    j["m"] = p.dim();
    j["M"] = to_json(p.matrix());
    j["Delta"] = to_json(p.delta());
    return j;
}

Json relation_json(const Correspondence& p) {
    const auto [a, b] = p.to_relation();
    Json j;
    j["m"] = p.dim();
    j["A"] = to_json(a);
    j["B"] = to_json(b);
    return j;
}

Json to_json(const DeterministicCores& cores) {
    Json j;
    j["xi_plus"] = to_json(cores.xi_plus);
    j["xi_minus"] = to_json(cores.xi_minus);
    j["xi_intersection"] = to_json(cores.xi_intersection);
    return j;
}

Json to_json(const SpectrumReport& report) {
    Json j;
    j["V"] = to_string(report.v);
    j["V_star"] = to_string(report.v_star);
    return j;
}

Json to_json(const AutomorphismCoverWitness& witness) {
    Json j;
    j["possible"] = witness.possible;
    j["det"] = to_json(witness.det);
    Json factors = Json::array();
    for (const auto& f : witness.invariant_factors) factors.push_back(f.to_string());
    j["invariant_factors"] = std::move(factors);
    return j;
}

Json to_json(const KernelGrowthRow& row) {
    Json j;
    j["n"] = row.n;
    j["first_order"] = to_json(row.first_order);
    j["second_order"] = to_json(row.second_order);
    Json fi = Json::array();
    for (const auto& d : row.first_invariants) fi.push_back(to_json(d));
    j["first_invariants"] = std::move(fi);
    Json si = Json::array();
    for (const auto& d : row.second_invariants) si.push_back(to_json(d));
    j["second_invariants"] = std::move(si);
    return j;
}

Json to_json(const std::vector<KernelGrowthRow>& rows) {
    Json j = Json::array();
    for (const auto& row : rows) j.push_back(to_json(row));
    return j;
}

Json to_json(const ClassificationReport& report) {
    Json j;
    j["dim"] = report.dim;
    j["morphism"] = to_string(report.morphism);
    j["connected"] = report.connected;
    j["ergodic"] = report.ergodic;
    j["totally_nondet"] = report.nondeterminism.total;
    j["kernel_first_order"] = to_json(report.kernel_first_order);
    j["kernel_second_order"] = to_json(report.kernel_second_order);
    Json flags;
    flags["right"] = report.nondeterminism.right;
    flags["left"] = report.nondeterminism.left;
    flags["total"] = report.nondeterminism.total;
    j["nondeterminism"] = std::move(flags);
    j["cores"] = to_json(report.cores);
    j["spectrum"] = to_json(report.spectrum);
    j["cover"] = to_json(report.cover);
    return j;
}

Json to_json(const TruncatedOperator& op) {
    Json j;
    j["radius"] = op.radius;
    j["characters"] = to_json(op.characters);
    Json entries = Json::array();
    Json killed = Json::array();
    Json escapes = Json::array();
    for (long col = 0; col < static_cast<long>(op.image.size()); ++col) {
        if (op.image[col] >= 0) {
            Json e;
            e["row"] = op.image[col];
            e["col"] = col;
            e["value"] = "1";
            entries.push_back(std::move(e));
        } else if (op.image[col] == TruncatedOperator::kZero) {
            killed.push_back(col);
        }
    }
    for (const auto& [col, target] : op.escapes) {
        Json e;
        e["col"] = col;
        e["target"] = to_json(target);
        escapes.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    j["killed"] = std::move(killed);
    j["escapes"] = std::move(escapes);
    return j;
}

Json to_json(const OrbitRecord& orbit) {
    Json j;
    j["start"] = to_json(orbit.start);
    j["forward"] = to_json(orbit.forward);
    j["forward_death"] = orbit.forward_death ? Json(*orbit.forward_death) : Json(nullptr);
    j["backward"] = to_json(orbit.backward);
    j["backward_death"] = orbit.backward_death ? Json(*orbit.backward_death) : Json(nullptr);
    return j;
}

Json to_json(const EigenvectorCheck& check) {
    Json j;
    j["terms"] = check.terms;
    j["residual_norm_sq"] = to_json(check.residual_norm_sq);
    j["vector_norm_sq"] = to_json(check.vector_norm_sq);
    j["ratio_sq"] = to_json(check.ratio_sq);
    j["ratio"] = check.ratio;
    return j;
}

Json to_json(const StepDistribution& dist) {
    Json j;
    j["atoms"] = to_json(dist.atoms);
    j["mass"] = to_json(dist.mass);
    return j;
}

Json to_json(const oracle::CheckResult& check) {
    Json j;
    j["name"] = check.name;
    j["pass"] = check.pass;
    j["detail"] = check.detail;
    return j;
}

Json to_json(const oracle::CaseReport& report) {
    Json j;
    j["seed"] = report.seed;
    j["params"] = report.params;
    j["pass"] = report.pass;
    Json checks = Json::array();
    for (const auto& check : report.checks) checks.push_back(to_json(check));
    j["checks"] = std::move(checks);
    return j;
}

Json to_json(const oracle::SuiteReport& report) {
    Json j;
    j["seed"] = report.seed;
    j["count"] = report.count;
    j["failures"] = report.failures;
    j["pass"] = report.pass;
    Json cases = Json::array();
    for (const auto& c : report.cases) cases.push_back(to_json(c));
    j["cases"] = std::move(cases);
    return j;
}

Rat parse_rational(const Json& j) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned())
            return Rat(Int(static_cast<unsigned long>(j.get<std::uint64_t>())));
        return Rat(Int(static_cast<long>(j.get<long long>())));
    }
    if (!j.is_string()) throw ParseError("expected a rational as \"p/q\" or an integer");
    const std::string s = j.get<std::string>();
    Rat x;
    if (s.empty() || mpq_set_str(x.get_mpq_t(), s.c_str(), 10) != 0)
        throw ParseError("malformed rational \"" + s + "\"");
    if (x.get_den() == 0) throw ParseError("zero denominator in \"" + s + "\"");
    x.canonicalize();
    return x;
}

Int parse_integer(const Json& j) {
    Rat x = parse_rational(j);
    if (x.get_den() != 1) throw ParseError("expected an integer, got " + x.get_str());
    return x.get_num();
}

RatVector parse_rat_vector(const Json& j) {
    if (!j.is_array()) return {parse_rational(j)};
    RatVector v;
    v.reserve(j.size());
    for (const auto& entry : j) v.push_back(parse_rational(entry));
    return v;
}

IntVector parse_int_vector(const Json& j) {
    if (!j.is_array()) return {parse_integer(j)};
    IntVector v;
    v.reserve(j.size());
    for (const auto& entry : j) v.push_back(parse_integer(entry));
    return v;
}

RatMatrix parse_matrix(const Json& j) {
    if (!j.is_array()) {
        RatMatrix a(1, 1);
        a.at(0, 0) = parse_rational(j);
        return a;
    }
    if (j.empty()) throw ParseError("matrix needs at least one row");
    // A flat array of scalars reads as a single row.
    if (!j.front().is_array()) {
        RatMatrix a(1, static_cast<int>(j.size()));
        for (int k = 0; k < a.cols(); ++k) a.at(0, k) = parse_rational(j.at(k));
        return a;
    }
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.front().size());
    RatMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix rows must all have the same length");
        for (int k = 0; k < cols; ++k) a.at(i, k) = parse_rational(row.at(k));
    }
    return a;
}

Lattice parse_lattice(const Json& j) {
    const int m = static_cast<int>(read_count(member(j, "m"), "\"m\""));
    if (m < 1) throw ParseError("lattice ambient dimension must be positive");
    const long rank = read_count(member(j, "rank"), "\"rank\"");
    const Json& basis = member(j, "basis");
    RatMatrix gens(m, 0);
    if (basis.is_array() && !basis.empty()) gens = parse_matrix(basis);
    if (gens.cols() > 0 && gens.rows() != m)
        throw ParseError("lattice basis rows disagree with \"m\"");
    Lattice l = Lattice::from_generators(m, gens);
    if (l.rank() != rank) throw ParseError("lattice rank disagrees with its basis");
    return l;
}

FiniteSubgroup parse_subgroup(const Json& j) {
    return FiniteSubgroup::from_carrier(parse_lattice(j));
}

Correspondence parse_correspondence(const Json& j) {
    if (!j.is_object()) throw ParseError("expected a correspondence object");
    if (j.contains("A") || j.contains("B")) {
        if (!j.contains("A") || !j.contains("B"))
            throw ParseError("relation form needs both \"A\" and \"B\"");
        return Correspondence::from_relation(parse_matrix(j.at("A")),
                                             parse_matrix(j.at("B")));
    }
    const int m = static_cast<int>(read_count(member(j, "m"), "\"m\""));
    RatMatrix mat = parse_matrix(member(j, "M"));
    if (mat.rows() != m || mat.cols() != m)
        throw ParseError("matrix shape disagrees with \"m\"");
    return Correspondence(std::move(mat), parse_lattice(member(j, "Delta")));
}

}  // namespace torcor
