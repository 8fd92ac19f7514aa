#ifndef FLEXCHECK_IO_HPP
#define FLEXCHECK_IO_HPP

// Problem files and report rendering for the command-line front end.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flexcheck/catalog.hpp"
#include "flexcheck/flexibility.hpp"

#ifndef FLEXCHECK_VERSION
#define FLEXCHECK_VERSION "0.0.0"
#endif

namespace flexcheck::io {

using ojson = nlohmann::ordered_json;

/// Malformed input. `pointer` is a JSON pointer into the problem file; line and
/// column are 1-based and zero when unknown.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::string pointer = {}, int line = 0, int column = 0)
        : std::runtime_error(what), pointer_(std::move(pointer)), line_(line), column_(column) {}
    const std::string& pointer() const noexcept { return pointer_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

    std::string diagnostic() const {
        std::string out;
        if (line_ > 0) out += "line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": ";
        out += what();
        if (!pointer_.empty()) out += " (at " + pointer_ + ")";
        return out;
    }

private:
    std::string pointer_;
    int line_ = 0;
    int column_ = 0;
};

inline std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

namespace detail {

// Minimal scanner over already-valid JSON text, used only to turn a JSON
// pointer back into a byte offset for diagnostics.
class Locator {
public:
    explicit Locator(const std::string& t) : t_(t) {}

    std::optional<std::size_t> find(const std::vector<std::string>& path) {
        i_ = 0;
        ws();
        for (const auto& token : path) {
            if (i_ >= t_.size()) return std::nullopt;
            if (t_[i_] == '{') {
                ++i_;
                bool found = false;
                while (true) {
                    ws();
                    if (i_ >= t_.size() || t_[i_] == '}') break;
                    const std::string key = string_value();
                    ws();
                    ++i_;  // ':'
                    ws();
                    if (key == token) {
                        found = true;
                        break;
                    }
                    skip();
                    ws();
                    if (i_ < t_.size() && t_[i_] == ',') ++i_;
                }
                if (!found) return std::nullopt;
            } else if (t_[i_] == '[') {
                ++i_;
                const long target = std::stol(token);
                ws();
                for (long k = 0; k < target; ++k) {
                    if (i_ >= t_.size() || t_[i_] == ']') return std::nullopt;
                    skip();
                    ws();
                    if (i_ < t_.size() && t_[i_] == ',') ++i_;
                    ws();
                }
                if (i_ >= t_.size() || t_[i_] == ']') return std::nullopt;
            } else {
                return std::nullopt;
            }
        }
        return i_;
    }

private:
    void ws() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    std::string string_value() {
        std::string out;
        ++i_;
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\') ++i_;
            if (i_ < t_.size()) out += t_[i_++];
        }
        ++i_;
        return out;
    }
    void skip() {
        if (i_ >= t_.size()) return;
        if (t_[i_] == '"') {
            string_value();
            return;
        }
        if (t_[i_] == '{' || t_[i_] == '[') {
            int depth = 0;
            while (i_ < t_.size()) {
                const char c = t_[i_];
                if (c == '"') {
                    string_value();
                    continue;
                }
                if (c == '{' || c == '[') ++depth;
                if (c == '}' || c == ']') --depth;
                ++i_;
                if (depth == 0) return;
            }
            return;
        }
        while (i_ < t_.size() && t_[i_] != ',' && t_[i_] != '}' && t_[i_] != ']' &&
               !std::isspace(static_cast<unsigned char>(t_[i_])))
            ++i_;
    }

    const std::string& t_;
    std::size_t i_ = 0;
};

inline std::vector<std::string> split_pointer(const std::string& pointer) {
    std::vector<std::string> out;
    std::size_t pos = 1;
    while (pos <= pointer.size() && !pointer.empty()) {
        const std::size_t next = pointer.find('/', pos);
        out.push_back(pointer.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

/// Attach line/column information to an InputError raised while reading `text`.
inline InputError located(const InputError& e, const std::string& text) {
    if (e.pointer().empty()) return e;
    detail::Locator loc(text);
    const auto offset = loc.find(detail::split_pointer(e.pointer()));
    if (!offset) return e;
    const auto [line, col] = line_column(text, *offset);
    return InputError(e.what(), e.pointer(), line, col);
}

struct ProblemSpec {
    std::optional<ClassicalSpec> ambient;
    int genus = 2;
    std::string source = "catalog";  ///< catalog | fuchsian | matrices
    std::string catalog;
    std::string embedding;  ///< rplane | cline | standard
    std::vector<FieldMatrix> generators;
    bool central_lift = false;
    Tolerances tol;
    std::optional<std::uint64_t> seed;
    std::optional<BalanceProblem> balance;
};

inline const std::vector<std::pair<std::string, Family>>& family_names() {
    static const std::vector<std::pair<std::string, Family>> names = {
        {"sl_r", Family::SlReal},        {"sl_c", Family::SlComplex},   {"su", Family::SpecialUnitary},
        {"u", Family::Unitary},          {"so", Family::Orthogonal},    {"sp", Family::SpQuaternion},
        {"sp_r", Family::SpReal},
    };
    return names;
}

inline std::string family_key(Family f) {
    for (const auto& [k, v] : family_names())
        if (v == f) return k;
    return "exceptional";
}

namespace detail {

inline const ojson& require(const ojson& obj, const std::string& key, const std::string& at) {
    if (!obj.contains(key)) throw InputError("missing field \"" + key + "\"", at);
    return obj.at(key);
}

inline double number(const ojson& v, const std::string& at) {
    if (!v.is_number()) throw InputError("expected a number", at);
    return v.get<double>();
}

inline int integer(const ojson& v, const std::string& at) {
    if (!v.is_number_integer()) throw InputError("expected an integer", at);
    return v.get<int>();
}

inline Scalar parse_scalar(const ojson& v, Field f, const std::string& at) {
    if (!v.is_array()) throw InputError("matrix entry must be a component tuple", at);
    const int d = field_degree(f);
    if (static_cast<int>(v.size()) != d)
        throw InputError("matrix entry has " + std::to_string(v.size()) + " components, field " +
                             std::string(field_name(f)) + " needs " + std::to_string(d),
                         at);
    double c[4] = {0, 0, 0, 0};
    for (int k = 0; k < d; ++k) c[k] = number(v[static_cast<std::size_t>(k)], at + "/" + std::to_string(k));
    switch (f) {
        case Field::Real: return Scalar::real(c[0]);
        case Field::Complex: return Scalar::complex(c[0], c[1]);
        case Field::Quaternion: return Scalar::quaternion(c[0], c[1], c[2], c[3]);
    }
    return Scalar::real(c[0]);
}

inline FieldMatrix parse_matrix(const ojson& v, Field f, const std::string& at) {
    if (!v.is_array() || v.empty() || !v.front().is_array() || v.front().empty())
        throw InputError("matrix must be a non-empty array of rows", at);
    const int rows = static_cast<int>(v.size()), cols = static_cast<int>(v.front().size());
    FieldMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::string row_at = at + "/" + std::to_string(i);
        const ojson& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw InputError("row " + std::to_string(i) + " does not have " + std::to_string(cols) + " entries",
                             row_at);
        for (int j = 0; j < cols; ++j)
            m(i, j) = parse_scalar(row[static_cast<std::size_t>(j)], f, row_at + "/" + std::to_string(j));
    }
    return m;
}

inline std::vector<Eigen::VectorXd> parse_vectors(const ojson& v, int dim, const std::string& at) {
    if (!v.is_array()) throw InputError("expected an array of vectors", at);
    std::vector<Eigen::VectorXd> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string vat = at + "/" + std::to_string(k);
        const ojson& x = v[k];
        if (!x.is_array() || static_cast<int>(x.size()) != dim)
            throw InputError("vector must have " + std::to_string(dim) + " entries", vat);
        Eigen::VectorXd e(dim);
        for (int i = 0; i < dim; ++i) e(i) = number(x[static_cast<std::size_t>(i)], vat + "/" + std::to_string(i));
        out.push_back(e);
    }
    return out;
}

inline void check_keys(const ojson& obj, std::initializer_list<const char*> allowed, const std::string& at) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || item.key() == a;
        if (!ok) throw InputError("unknown field \"" + item.key() + "\"", at + "/" + item.key());
    }
}

}  // namespace detail

/// Parse a problem document. Errors carry line and column.
inline ProblemSpec parse_problem(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::string msg = e.what();
        const auto cut = msg.find("syntax error");
        throw InputError(cut == std::string::npos ? msg : msg.substr(cut), {}, line, col);
    }
    try {
        using namespace detail;
        if (!doc.is_object()) throw InputError("problem must be a JSON object", "");
        check_keys(doc, {"ambient", "genus", "representation", "tolerances", "seed", "balance_problem"}, "");
        ProblemSpec spec;
        if (doc.contains("genus")) spec.genus = integer(doc["genus"], "/genus");
        if (doc.contains("seed")) {
            const ojson& s = doc["seed"];
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
                throw InputError("seed must be a non-negative integer", "/seed");
            spec.seed = s.get<std::uint64_t>();
        }
        if (doc.contains("ambient")) {
            const ojson& a = doc["ambient"];
            if (!a.is_object()) throw InputError("ambient must be an object", "/ambient");
            check_keys(a, {"family", "p", "q"}, "/ambient");
            const ojson& fam = require(a, "family", "/ambient");
            if (!fam.is_string()) throw InputError("family must be a string", "/ambient/family");
            ClassicalSpec c;
            bool known = false;
            for (const auto& [k, v] : family_names())
                if (k == fam.get<std::string>()) {
                    c.family = v;
                    known = true;
                }
            if (!known) throw InputError("unknown family \"" + fam.get<std::string>() + "\"", "/ambient/family");
            c.p = integer(require(a, "p", "/ambient"), "/ambient/p");
            c.q = a.contains("q") ? integer(a["q"], "/ambient/q") : 0;
            spec.ambient = c;
        }
        if (doc.contains("tolerances")) {
            const ojson& t = doc["tolerances"];
            if (!t.is_object()) throw InputError("tolerances must be an object", "/tolerances");
            check_keys(t, {"rank", "cluster", "cocycle", "group", "signature", "structure"}, "/tolerances");
            const auto read = [&](const char* key, double& dst) {
                if (!t.contains(key)) return;
                dst = number(t[key], std::string("/tolerances/") + key);
                if (!(dst > 0.0)) throw InputError("tolerance must be positive", std::string("/tolerances/") + key);
            };
            read("rank", spec.tol.rank);
            read("cluster", spec.tol.cluster);
            read("cocycle", spec.tol.cocycle);
            read("group", spec.tol.group);
            read("signature", spec.tol.signature);
            read("structure", spec.tol.structure);
        }
        if (doc.contains("balance_problem")) {
            const ojson& b = doc["balance_problem"];
            if (!b.is_object()) throw InputError("balance_problem must be an object", "/balance_problem");
            check_keys(b, {"dim", "p", "n"}, "/balance_problem");
            BalanceProblem prob;
            prob.dim = integer(require(b, "dim", "/balance_problem"), "/balance_problem/dim");
            if (prob.dim < 0) throw InputError("dim must be non-negative", "/balance_problem/dim");
            if (b.contains("p")) prob.p = parse_vectors(b["p"], static_cast<int>(prob.dim), "/balance_problem/p");
            if (b.contains("n")) prob.n = parse_vectors(b["n"], static_cast<int>(prob.dim), "/balance_problem/n");
            spec.balance = prob;
        }
        if (doc.contains("representation")) {
            const ojson& r = doc["representation"];
            if (!r.is_object()) throw InputError("representation must be an object", "/representation");
            check_keys(r, {"source", "case", "embedding", "generators", "central_lift"}, "/representation");
            const ojson& src = require(r, "source", "/representation");
            if (!src.is_string()) throw InputError("source must be a string", "/representation/source");
            spec.source = src.get<std::string>();
            if (r.contains("central_lift")) {
                if (!r["central_lift"].is_boolean())
                    throw InputError("central_lift must be a boolean", "/representation/central_lift");
                spec.central_lift = r["central_lift"].get<bool>();
            }
            if (spec.source == "catalog") {
                const ojson& c = require(r, "case", "/representation");
                if (!c.is_string()) throw InputError("case must be a string", "/representation/case");
                spec.catalog = c.get<std::string>();
                if (!find_case(spec.catalog))
                    throw InputError("unknown catalog case \"" + spec.catalog + "\"", "/representation/case");
            } else if (spec.source == "fuchsian") {
                const ojson& e = require(r, "embedding", "/representation");
                if (!e.is_string()) throw InputError("embedding must be a string", "/representation/embedding");
                spec.embedding = e.get<std::string>();
                if (spec.embedding != "rplane" && spec.embedding != "cline" && spec.embedding != "standard")
                    throw InputError("embedding must be rplane, cline or standard", "/representation/embedding");
                if (!spec.ambient) throw InputError("a fuchsian source needs an ambient algebra", "/representation");
            } else if (spec.source == "matrices") {
                if (!spec.ambient) throw InputError("explicit matrices need an ambient algebra", "/representation");
                const Field f = family_field(spec.ambient->family);
                const ojson& g = require(r, "generators", "/representation");
                if (!g.is_array()) throw InputError("generators must be an array", "/representation/generators");
                for (std::size_t k = 0; k < g.size(); ++k)
                    spec.generators.push_back(
                        parse_matrix(g[k], f, "/representation/generators/" + std::to_string(k)));
                if (static_cast<int>(spec.generators.size()) != 2 * spec.genus)
                    throw InputError("genus " + std::to_string(spec.genus) + " needs " +
                                         std::to_string(2 * spec.genus) + " generators, got " +
                                         std::to_string(spec.generators.size()),
                                     "/representation/generators");
            } else {
                throw InputError("source must be catalog, fuchsian or matrices", "/representation/source");
            }
        }
        if (spec.genus < 2) throw InputError("genus must be at least 2", doc.contains("genus") ? "/genus" : "");
        return spec;
    } catch (const InputError& e) {
        throw located(e, text);
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

/// The catalog case realizing a Fuchsian embedding into o(m, 1, F).
inline CatalogCase embedding_case(const ClassicalSpec& a, const std::string& embedding) {
    CatalogField field;
    switch (a.family) {
        case Family::Orthogonal: field = CatalogField::Real; break;
        case Family::SpecialUnitary: field = CatalogField::Complex; break;
        case Family::SpQuaternion: field = CatalogField::Quaternion; break;
        default: throw InputError(embedding + " embeddings need an so, su or sp ambient algebra", "/ambient/family");
    }
    if (a.q != 1) throw InputError(embedding + " embeddings need q = 1", "/ambient/q");
    return expected_table(field, a.p, embedding == "rplane" ? Stabilized::RealPlane : Stabilized::ComplexLine);
}

inline SurfaceRepresentation build_representation(const ProblemSpec& spec, const Config& cfg) {
    if (spec.source == "catalog") {
        if (spec.catalog.empty()) throw InputError("no representation given", "/representation");
        const CatalogCase c = *find_case(spec.catalog);
        if (!c.computed) throw ExcludedError(c.name + ": " + c.note);
        return catalog_representation(c, spec.genus, cfg);
    }
    const ClassicalSpec& a = *spec.ambient;
    const ModelPtr g = build_classical(a, cfg);
    if (spec.source == "fuchsian") {
        if (spec.embedding == "standard") {
            if (a.family == Family::SlReal && a.p == 2)
                return fuchsian(spec.genus, cfg.tol.group).compose(
                    [](const Eigen::MatrixXd& m) { return m; }, g, false, cfg.tol.group);
            if (a.family == Family::Orthogonal && a.p == 2 && a.q == 1)
                return fuchsian(spec.genus, cfg.tol.group).compose(sl2_to_so21, g, false, cfg.tol.group);
            throw InputError("the standard embedding needs sl_r(2) or so(2,1)", "/representation/embedding");
        }
        const CatalogCase c = embedding_case(a, spec.embedding);
        return fuchsian(spec.genus, cfg.tol.group).compose(embed_base(c), g, false, cfg.tol.group);
    }
    std::vector<Eigen::MatrixXd> images;
    for (const auto& m : spec.generators) {
        const Eigen::MatrixXd r = realify(m).real;
        if (r.rows() != g->real_size() || r.cols() != g->real_size())
            throw InputError("generator size does not match " + g->name(), "/representation/generators");
        images.push_back(r);
    }
    return SurfaceRepresentation(standard_presentation(spec.genus), std::move(images), g, spec.central_lift,
                                 cfg.tol.group);
}

// ---- report values -------------------------------------------------------

/// A double rounded to 12 significant digits, so that reports re-serialize identically.
inline ojson num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double r = std::strtod(buf, nullptr);
    if (r == 0.0) r = 0.0;  // drop negative zero
    return r;
}

inline ojson num(cplx z) { return ojson::array({num(z.real()), num(z.imag())}); }

inline ojson vec(const Eigen::VectorXd& v) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
    return a;
}

inline ojson vec(const Eigen::VectorXcd& v) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
    return a;
}

inline ojson mat(const Eigen::MatrixXd& m) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(Eigen::VectorXd(m.row(i).transpose())));
    return a;
}

inline ojson strings(const std::vector<std::string>& v) {
    ojson a = ojson::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

inline ojson tolerances_json(const Tolerances& t) {
    ojson o = ojson::object();
    o["rank"] = num(t.rank);
    o["cluster"] = num(t.cluster);
    o["cocycle"] = num(t.cocycle);
    o["group"] = num(t.group);
    o["signature"] = num(t.signature);
    o["structure"] = num(t.structure);
    return o;
}

inline ojson header(const std::string& command, const Config& cfg) {
    ojson o = ojson::object();
    o["tool"] = "flexcheck";
    o["version"] = FLEXCHECK_VERSION;
    o["command"] = command;
    o["seed"] = cfg.seed;
    o["tolerances"] = tolerances_json(cfg.tol);
    return o;
}

inline ojson input_json(const ProblemSpec& spec, const SurfaceRepresentation& rep) {
    ojson o = ojson::object();
    o["algebra"] = rep.model() ? rep.model()->name() : "";
    o["genus"] = spec.genus;
    o["source"] = spec.source;
    if (spec.source == "catalog") o["case"] = spec.catalog;
    if (spec.source == "fuchsian") o["embedding"] = spec.embedding;
    o["relator_residual"] = num(rep.relator_residual());
    o["relator_sign"] = rep.relator_sign();
    return o;
}

/// Centralizer, center and torus decomposition of a representation.
struct Stages {
    SubalgebraHandle centralizer;
    ReductivityCertificate reductivity;
    std::optional<SubalgebraHandle> center;
    std::optional<TorusRootDecomposition> decomp;
};

inline Stages run_stages(const SurfaceRepresentation& rep, const Tolerances& tol) {
    Stages s{centralizer(rep.model(), rep.images(), ElementKind::Group, tol), {}, std::nullopt, std::nullopt};
    s.reductivity = killing_restriction_nondegenerate(s.centralizer, tol);
    if (!s.reductivity.nondegenerate) return s;
    s.center = center_of(s.centralizer, tol);
    if (s.center->dim() > 0) s.decomp = decompose(rep.model(), *s.center, tol);
    return s;
}

inline ojson reductivity_json(const ReductivityCertificate& r) {
    ojson o = ojson::object();
    o["killing_nondegenerate"] = r.nondegenerate;
    o["condition_number"] = num(r.condition_number);
    o["min_singular_value"] = num(r.min_singular_value);
    return o;
}

inline ojson root_json(const RootDatum& d, std::size_t index) {
    ojson o = ojson::object();
    o["index"] = index;
    o["kind"] = root_kind_name(d.kind);
    o["values"] = vec(d.values);
    o["orbit_size"] = d.orbit.size();
    o["complex_dim"] = d.complex_dim();
    o["real_dim"] = d.real_dim();
    o["t"] = vec(d.t);
    return o;
}

inline ojson decompose_json(const SurfaceRepresentation& rep, const Stages& s) {
    ojson o = ojson::object();
    o["dim_g"] = rep.model()->dim();
    o["centralizer_dim"] = s.centralizer.dim();
    o["reductivity"] = reductivity_json(s.reductivity);
    o["center_dim"] = s.center ? ojson(s.center->dim()) : ojson(nullptr);
    o["torus_dim"] = s.decomp ? s.decomp->torus_dim() : 0;
    o["zero_space_dim"] = s.decomp ? s.decomp->zero_space().cols() : rep.model()->dim();
    ojson roots = ojson::array();
    if (s.decomp)
        for (std::size_t k = 0; k < s.decomp->roots().size(); ++k) roots.push_back(root_json(s.decomp->root(k), k));
    o["roots"] = roots;
    if (roots.empty())
        o["message"] = !s.reductivity.nondegenerate ? "inconclusive: the centralizer is not certified reductive"
                                                     : "no roots";
    return o;
}

inline ojson workspace_json(const std::string& name, const CohomologyWorkspace& ws, long chi) {
    const long dimv = static_cast<long>(ws.module().dim());
    ojson o = ojson::object();
    o["module"] = name;
    o["dim"] = dimv;
    o["h0"] = ws.dim_h0();
    o["h1"] = ws.dim_h1();
    o["h2"] = ws.dim_h2();
    o["z1"] = ws.dim_z1();
    o["b1"] = ws.dim_b1();
    o["euler_identity"] = static_cast<long>(ws.dim_h0() - ws.dim_h1() + ws.dim_h2()) == chi * dimv;
    o["cocycle_identity"] = static_cast<long>(ws.dim_z1()) == static_cast<long>(ws.dim_h2()) + (1 - chi) * dimv;
    return o;
}

inline ojson cohomology_json(const SurfaceRepresentation& rep, const Stages& s, const Tolerances& tol) {
    const long chi = rep.presentation().euler_characteristic();
    ojson o = ojson::object();
    o["euler_characteristic"] = chi;
    ojson modules = ojson::array();
    modules.push_back(workspace_json("ad", CohomologyWorkspace(rep.presentation(), adjoint_module(rep), tol), chi));
    if (s.decomp)
        for (std::size_t k = 0; k < s.decomp->roots().size(); ++k) {
            const std::string name = "root " + std::to_string(k);
            const Module m = restricted_adjoint_module(rep, s.decomp->root(k).real_space, tol.group, name);
            modules.push_back(workspace_json(name, CohomologyWorkspace(rep.presentation(), m, tol), chi));
        }
    o["modules"] = modules;
    return o;
}

inline ojson form_json(const RootFormReport& r) {
    ojson o = ojson::object();
    if (r.root.size() > 0) {
        o["index"] = r.index;
        o["root"] = vec(r.root);
        o["kind"] = root_kind_name(r.kind);
    }
    o["root_dim"] = r.root_dim;
    o["h0"] = r.h0_dim;
    o["h1"] = r.h1_dim;
    o["h2"] = r.h2_dim;
    o["euler_characteristic"] = r.euler_characteristic;
    if (r.has_signature) {
        o["inertia"] = ojson::array({r.inertia.positive, r.inertia.negative, r.inertia.degenerate});
        o["signature"] = r.signature;
        o["toledo"] = r.toledo;
        o["meyer_consistent"] = r.meyer_consistent;
    } else {
        o["inertia"] = nullptr;
        o["signature"] = nullptr;
        o["toledo"] = nullptr;
        o["meyer_consistent"] = nullptr;
    }
    o["definite"] = r.definite;
    o["degenerate"] = r.degenerate;
    o["nondegeneracy"] = num(r.nondegeneracy);
    o["milnor_wood_slack"] = num(r.slack);
    o["invariance_residual"] = num(r.invariance_residual);
    o["coboundary_residual"] = num(r.coboundary_residual);
    o["notes"] = strings(r.notes);
    return o;
}

inline ojson balance_json(const BalanceProblem& prob, const BalanceResult& r) {
    ojson o = ojson::object();
    o["dim"] = prob.dim;
    ojson p = ojson::array(), n = ojson::array();
    for (const auto& v : prob.p) p.push_back(vec(v));
    for (const auto& v : prob.n) n.push_back(vec(v));
    o["p"] = p;
    o["n"] = n;
    o["balanced"] = r.balanced;
    o["spanning"] = r.spanning;
    o["quotient_dim"] = r.quotient_dim;
    o["multipliers"] = r.balanced ? vec(r.multipliers) : ojson(nullptr);
    o["functional"] = r.balanced ? ojson(nullptr) : vec(r.functional);
    o["reason"] = r.reason;
    return o;
}

inline ojson verdict_json(const FlexibilityReport& r) {
    ojson o = ojson::object();
    o["verdict"] = verdict_name(r.verdict);
    o["algebra"] = r.algebra;
    o["genus"] = r.genus;
    o["dim_g"] = r.dim_g;
    o["genus_threshold"] = r.genus_threshold;
    o["below_threshold"] = r.below_threshold;
    o["centralizer_dim"] = r.centralizer_dim;
    o["reductivity"] = reductivity_json(r.reductivity);
    o["center_dim"] = r.center_dim;
    ojson roots = ojson::array();
    for (const auto& s : r.roots) {
        ojson f = form_json(s.form);
        f["lagrangian_pair_found"] = s.lagrangian_pair;
        roots.push_back(f);
    }
    o["toledo_table"] = roots;
    ojson pn = ojson::object();
    ojson pr = ojson::array(), nr = ojson::array();
    for (const auto& v : r.pn.p_roots) pr.push_back(vec(v));
    for (const auto& v : r.pn.n_roots) nr.push_back(vec(v));
    pn["p_roots"] = pr;
    pn["n_roots"] = nr;
    o["pn"] = pn;
    BalanceProblem prob{static_cast<Eigen::Index>(r.center_dim), r.pn.p, r.pn.n};
    o["balance"] = balance_json(prob, r.balance);
    o["tube_type_message"] = r.tube_type_message ? ojson(*r.tube_type_message) : ojson(nullptr);
    o["notes"] = strings(r.notes);
    return o;
}

inline ojson catalog_case_json(const CatalogCase& c) {
    ojson o = ojson::object();
    o["name"] = c.name;
    o["ambient"] = c.ambient_name();
    o["stabilized"] = stabilized_name(c.object);
    o["base"] = c.base_name();
    o["centralizer"] = c.centralizer_name;
    o["centralizer_dim"] = c.centralizer_dim;
    o["center_dim"] = c.center_dim;
    o["expected_verdict"] = c.expected_verdict;
    o["computed"] = c.computed;
    o["note"] = c.note;
    return o;
}

// ---- text rendering ------------------------------------------------------

namespace detail {

inline std::string scalar_text(const ojson& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    return v.dump();
}

inline bool flat(const ojson& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
        if (!flat(x)) return false;
    return true;
}

inline std::string flat_text(const ojson& v) {
    if (!v.is_array()) return scalar_text(v);
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + flat_text(v[k]);
    return out + "]";
}

inline void render(std::ostream& os, const ojson& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_object()) {
        for (const auto& item : v.items()) {
            const ojson& x = item.value();
            if (flat(x)) {
                os << pad << item.key() << ": " << flat_text(x) << '\n';
            } else {
                os << pad << item.key() << ":\n";
                render(os, x, indent + 2);
            }
        }
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (flat(x)) {
                os << pad << "- " << flat_text(x) << '\n';
            } else {
                os << pad << "-\n";
                render(os, x, indent + 2);
            }
        }
    } else {
        os << pad << scalar_text(v) << '\n';
    }
}

}  // namespace detail

inline std::string to_text(const ojson& report) {
    std::ostringstream os;
    detail::render(os, report, 0);
    return os.str();
}

inline std::string to_json(const ojson& report) { return report.dump(2) + "\n"; }

}  // namespace flexcheck::io

#endif  // FLEXCHECK_IO_HPP
