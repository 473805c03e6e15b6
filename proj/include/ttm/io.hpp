#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ttm/cohomology.hpp"
#include "ttm/delzant.hpp"
#include "ttm/invariants.hpp"
#include "ttm/signature.hpp"

// File ingestion, command dispatch and report serialization. Spec and polygon
// files are UTF-8 JSON; reports come in a machine (JSON) and a human (text)
// rendering generated from the same data.

namespace ttm {

using json = nlohmann::json;

struct parse_error : error {
    explicit parse_error(const std::string& what) : error(what) {}
};

namespace io_detail {

inline long long to_ll(const Int& v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw error("integer too large for serialization");
    return v.convert_to<long long>();
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw parse_error(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(path + ": missing field '" + key + "'");
    return *it;
}

inline Int parse_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw parse_error(path + ": expected an integer");
    return Int(j.get<long long>());
}

inline IntVec parse_vec2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw parse_error(path + ": expected a 2-vector");
    return IntVec{parse_int(j[0], path + "[0]"), parse_int(j[1], path + "[1]")};
}

inline IntMat parse_mat2(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw parse_error(path + ": expected a 2x2 matrix (2 rows)");
    IntMat m(2, 2);
    for (int r = 0; r < 2; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != 2) throw parse_error(rp + ": expected a row of 2 entries");
        for (int c = 0; c < 2; ++c) m(r, c) = parse_int(row[static_cast<size_t>(c)], rp);
    }
    return m;
}

inline json vec_to_json(const IntVec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(to_ll(v[i]));
    return a;
}

inline json mat_to_json(const IntMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_ll(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json group_to_json(const AbelianGroup& g) {
    json t = json::array();
    for (const Int& d : g.torsion) t.push_back(to_ll(d));
    return json{{"rank", g.free_rank}, {"torsion", std::move(t)}};
}

inline Rat parse_offset(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rat(Int(s));
            return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw parse_error(path + ": cannot read rational '" + s + "'");
        }
    }
    throw parse_error(path + ": expected an integer or a rational string like \"1/2\"");
}

}  // namespace io_detail

// Structured mirror of a spec file.
struct SpecDocument {
    int fiber_rank = 2;
    std::string family;
    int genus = 0;
    int corners = 0;
    std::vector<IntMat> alpha, beta;
    std::optional<IntMat> loop;
    std::vector<IntVec> characteristic;

    TwistedToricSpec to_spec() const {
        TwistedToricSpec s;
        s.fiber_rank = fiber_rank;
        if (family == "cylinder") {
            s.base = BaseSurface::cylinder();
            if (!loop) throw parse_error("monodromy: cylinder requires a 'loop' matrix");
            s.monodromy = MonodromyRep::cylinder(*loop);
        } else {
            s.base = BaseSurface::one_boundary(genus, corners);
            s.monodromy = MonodromyRep::one_boundary(alpha, beta);
        }
        s.characteristic.vectors = characteristic;
        return s;
    }

    static SpecDocument from_spec(const TwistedToricSpec& s) {
        SpecDocument d;
        d.fiber_rank = s.fiber_rank;
        if (s.base.family == Family::cylinder) {
            d.family = "cylinder";
            d.loop = s.monodromy.loop;
        } else {
            d.family = "one_boundary";
            d.genus = s.base.genus;
            d.corners = s.base.corners;
            d.alpha = s.monodromy.alphas;
            d.beta = s.monodromy.betas;
        }
        d.characteristic = s.characteristic.vectors;
        return d;
    }

    friend bool operator==(const SpecDocument& a, const SpecDocument& b) {
        return a.fiber_rank == b.fiber_rank && a.family == b.family && a.genus == b.genus &&
               a.corners == b.corners && a.alpha == b.alpha && a.beta == b.beta &&
               a.loop.has_value() == b.loop.has_value() &&
               (!a.loop || *a.loop == *b.loop) && a.characteristic == b.characteristic;
    }
};

inline SpecDocument parse_spec_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("spec file: ") + e.what());
    }
    using namespace io_detail;
    SpecDocument d;
    d.fiber_rank = static_cast<int>(parse_int(field(j, "fiber_rank", "spec"), "fiber_rank").convert_to<long long>());

    const json& base = field(j, "base", "spec");
    const json& fam = field(base, "family", "base");
    if (!fam.is_string()) throw parse_error("base.family: expected a string");
    d.family = fam.get<std::string>();
    const json& mono = field(j, "monodromy", "spec");
    if (d.family == "one_boundary") {
        d.genus = static_cast<int>(parse_int(field(base, "genus", "base"), "base.genus").convert_to<long long>());
        d.corners =
            static_cast<int>(parse_int(field(base, "corners", "base"), "base.corners").convert_to<long long>());
        if (d.genus < 0 || d.corners < 0) throw parse_error("base: genus and corners must be non-negative");
        const json& alpha = field(mono, "alpha", "monodromy");
        const json& beta = field(mono, "beta", "monodromy");
        if (!alpha.is_array() || !beta.is_array())
            throw parse_error("monodromy: 'alpha' and 'beta' must be arrays of 2x2 matrices");
        for (size_t i = 0; i < alpha.size(); ++i)
            d.alpha.push_back(parse_mat2(alpha[i], "monodromy.alpha[" + std::to_string(i) + "]"));
        for (size_t i = 0; i < beta.size(); ++i)
            d.beta.push_back(parse_mat2(beta[i], "monodromy.beta[" + std::to_string(i) + "]"));
        if (static_cast<int>(d.alpha.size()) != d.genus || static_cast<int>(d.beta.size()) != d.genus)
            throw parse_error("monodromy: expected " + std::to_string(d.genus) + " alpha and beta matrices");
    } else if (d.family == "cylinder") {
        d.loop = parse_mat2(field(mono, "loop", "monodromy"), "monodromy.loop");
    } else {
        throw parse_error("base.family: expected 'one_boundary' or 'cylinder', got '" + d.family + "'");
    }

    const json& ch = field(j, "characteristic", "spec");
    if (!ch.is_array()) throw parse_error("characteristic: expected an array of 2-vectors");
    for (size_t i = 0; i < ch.size(); ++i)
        d.characteristic.push_back(parse_vec2(ch[i], "characteristic[" + std::to_string(i) + "]"));
    return d;
}

inline json spec_document_to_json(const SpecDocument& d) {
    using namespace io_detail;
    json j;
    j["fiber_rank"] = d.fiber_rank;
    if (d.family == "cylinder") {
        j["base"] = {{"family", "cylinder"}};
        j["monodromy"] = {{"loop", mat_to_json(*d.loop)}};
    } else {
        j["base"] = {{"family", "one_boundary"}, {"genus", d.genus}, {"corners", d.corners}};
        json alpha = json::array(), beta = json::array();
        for (const IntMat& m : d.alpha) alpha.push_back(mat_to_json(m));
        for (const IntMat& m : d.beta) beta.push_back(mat_to_json(m));
        j["monodromy"] = {{"alpha", std::move(alpha)}, {"beta", std::move(beta)}};
    }
    json ch = json::array();
    for (const IntVec& v : d.characteristic) ch.push_back(vec_to_json(v));
    j["characteristic"] = std::move(ch);
    return j;
}

inline std::string serialize_spec_document(const SpecDocument& d) {
    return spec_document_to_json(d).dump(2) + "\n";
}

// Polygon files. Non-integral normals are reported through the validation
// findings (check id "rational") rather than as parse failures.
struct PolygonParse {
    std::optional<DelzantPolygon> polygon;
    std::vector<Finding> findings;
};

inline PolygonParse parse_polygon_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("polygon file: ") + e.what());
    }
    using namespace io_detail;
    PolygonParse out;
    const json& normals = field(j, "normals", "polygon");
    const json& offsets = field(j, "offsets", "polygon");
    if (!normals.is_array() || !offsets.is_array())
        throw parse_error("polygon: 'normals' and 'offsets' must be arrays");
    if (normals.size() != offsets.size())
        throw parse_error("polygon: normals and offsets have different lengths");
    DelzantPolygon poly;
    for (size_t i = 0; i < normals.size(); ++i) {
        const json& n = normals[i];
        const std::string path = "normals[" + std::to_string(i) + "]";
        if (!n.is_array() || n.size() != 2) throw parse_error(path + ": expected a 2-vector");
        if (!n[0].is_number_integer() || !n[1].is_number_integer()) {
            out.findings.push_back({"rational", path, "facet normal is not integral"});
            continue;
        }
        poly.normals.push_back(parse_vec2(n, path));
    }
    for (size_t i = 0; i < offsets.size(); ++i)
        poly.offsets.push_back(parse_offset(offsets[i], "offsets[" + std::to_string(i) + "]"));
    if (out.findings.empty()) out.polygon = std::move(poly);
    return out;
}

// A command report: one JSON value holding all data, with the text rendering
// derived from it so the two agree field by field.
struct ReportDocument {
    json data;

    std::string render_json() const { return data.dump(2) + "\n"; }
    std::string render_text() const;
};

struct CommandResult {
    int exit_code = 0;
    bool json_output = false;
    ReportDocument report;
};

namespace io_detail {

inline AbelianGroup group_from_json(const json& g) {
    AbelianGroup a;
    a.free_rank = g.at("rank").get<int>();
    for (const auto& t : g.at("torsion")) a.torsion.push_back(Int(t.get<long long>()));
    return a;
}

inline std::string matrix_text(const json& rows) {
    std::string s = "[";
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) s += "; ";
        for (size_t j = 0; j < rows[i].size(); ++j) {
            if (j) s += ",";
            s += rows[i][j].dump();
        }
    }
    return s + "]";
}

inline void render_findings(std::ostringstream& os, const json& findings) {
    for (const auto& f : findings)
        os << "  finding[" << f.at("check").get<std::string>() << "] at "
           << f.at("location").get<std::string>() << ": " << f.at("message").get<std::string>() << "\n";
}

}  // namespace io_detail

inline std::string ReportDocument::render_text() const {
    using namespace io_detail;
    std::ostringstream os;
    const std::string cmd = data.value("command", "");
    if (data.contains("file")) os << cmd << " " << data.at("file").get<std::string>() << "\n";
    if (data.contains("error")) {
        os << "error: " << data.at("error").get<std::string>() << "\n";
        return os.str();
    }
    if (data.contains("valid")) {
        os << "valid: " << (data.at("valid").get<bool>() ? "yes" : "no") << "\n";
        render_findings(os, data.at("findings"));
    }
    if (data.contains("euler_characteristic"))
        os << "euler characteristic: " << data.at("euler_characteristic").get<int>() << "\n";
    if (data.contains("fundamental_group")) {
        const json& fg = data.at("fundamental_group");
        os << "fundamental group: " << fg.at("classification").get<std::string>() << "\n";
        os << "  generators:";
        for (const auto& g : fg.at("generators")) os << " " << g.get<std::string>();
        os << "\n  relators:";
        for (const auto& r : fg.at("relators")) os << " " << r.dump();
        os << (fg.at("relators").empty() ? " none" : "") << "\n";
    }
    if (data.contains("H")) {
        const json& h = data.at("H");
        for (size_t k = 0; k < h.size(); ++k)
            os << "H^" << k << " = " << group_from_json(h[k]).str() << "\n";
        if (data.value("associated_graded", false))
            os << "note: groups are associated graded; extensions reported split\n";
    }
    if (data.contains("e2")) {
        os << "E2 page (rows q = 2..0, columns p = 0..2):\n";
        const json& e2 = data.at("e2");
        for (int q = 2; q >= 0; --q) {
            os << "  q=" << q << ":";
            for (int p = 0; p <= 2; ++p)
                os << "  " << group_from_json(e2[static_cast<size_t>(p)][static_cast<size_t>(q)]).str();
            os << "\n";
        }
    }
    if (data.contains("interior_terms")) {
        for (const auto& term : data.at("interior_terms"))
            os << "tau1(" << matrix_text(term.at("c1")) << ", " << matrix_text(term.at("c2"))
               << ") = " << term.at("tau").get<int>() << "\n";
        os << "sigma interior = " << data.at("sigma_interior").get<int>() << "\n";
        if (data.contains("necklace")) {
            os << "necklace vectors:";
            for (const auto& v : data.at("necklace")) os << " (" << v[0].dump() << "," << v[1].dump() << ")";
            os << "\n";
        }
        os << "boundary intersection matrix: " << matrix_text(data.at("boundary_matrix")) << "\n";
        os << "blow-ups: " << data.at("blowup_count").get<int>()
           << " (correction +" << data.at("blowup_count").get<int>() << ")\n";
        os << "sigma boundary = " << data.at("sigma_boundary").get<int>() << "\n";
        os << "signature = " << data.at("total").get<int>() << "\n";
    }
    if (data.contains("output"))
        os << "wrote " << data.at("output").get<std::string>() << "\n";
    return os.str();
}

namespace io_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json findings_to_json(const std::vector<Finding>& findings) {
    json a = json::array();
    for (const Finding& f : findings)
        a.push_back({{"check", f.check}, {"location", f.location}, {"message", f.message}});
    return a;
}

inline json e2_to_json(const E2Table& e2) {
    json grid = json::array();
    for (int p = 0; p <= 2; ++p) {
        json col = json::array();
        for (int q = 0; q <= 2; ++q) col.push_back(group_to_json(e2.at(p, q)));
        grid.push_back(std::move(col));
    }
    return grid;
}

struct Parsed {
    TwistedToricSpec spec;
    ValidationReport validation;
};

inline Parsed load_and_validate(const std::string& path) {
    Parsed p;
    p.spec = parse_spec_document(read_file(path)).to_spec();
    p.validation = validate_spec(p.spec);
    return p;
}

}  // namespace io_detail

// Executes one CLI invocation. Exit codes: 0 success, 1 invalid data,
// 2 unsupported request. User errors are reported, never thrown past here.
inline CommandResult run_command(const std::vector<std::string>& argv) {
    using namespace io_detail;
    CommandResult result;
    std::vector<std::string> args;
    for (const std::string& a : argv) {
        if (a == "--json")
            result.json_output = true;
        else
            args.push_back(a);
    }
    json& data = result.report.data;

    auto usage = [&](const std::string& message) {
        data["command"] = args.empty() ? "" : args[0];
        data["error"] = message +
                        "; usage: ttm {validate|invariants|cohomology [--e2]|signature [--verbose]} "
                        "<spec.ttm> | ttm delzant {check|convert -o <out.ttm>} <polygon.json> [--json]";
        result.exit_code = 2;
        return result;
    };

    if (args.empty()) return usage("missing command");
    const std::string cmd = args[0];

    try {
        if (cmd == "validate") {
            if (args.size() != 2) return usage("validate takes one spec file");
            data["command"] = "validate";
            data["file"] = args[1];
            const Parsed p = load_and_validate(args[1]);
            data["valid"] = p.validation.valid;
            data["findings"] = findings_to_json(p.validation.findings);
            result.exit_code = p.validation.valid ? 0 : 1;
        } else if (cmd == "invariants") {
            if (args.size() != 2) return usage("invariants takes one spec file");
            data["command"] = "invariants";
            data["file"] = args[1];
            const Parsed p = load_and_validate(args[1]);
            if (!p.validation.valid) {
                data["valid"] = false;
                data["findings"] = findings_to_json(p.validation.findings);
                result.exit_code = 1;
                return result;
            }
            data["euler_characteristic"] = euler_characteristic(p.spec);
            const GroupPresentation pi1 = fundamental_group(p.spec);  // may report unsupported
            json relators = json::array();
            for (const auto& w : pi1.relators) {
                json word = json::array();
                for (const auto& [gen, exp] : w) word.push_back({{"generator", gen}, {"exponent", exp}});
                relators.push_back(std::move(word));
            }
            data["fundamental_group"] = {{"generators", pi1.generators},
                                         {"relators", std::move(relators)},
                                         {"classification", pi1.classification()}};
        } else if (cmd == "cohomology") {
            bool with_e2 = false;
            std::string file;
            for (size_t i = 1; i < args.size(); ++i) {
                if (args[i] == "--e2")
                    with_e2 = true;
                else if (file.empty())
                    file = args[i];
                else
                    return usage("unexpected argument '" + args[i] + "'");
            }
            if (file.empty()) return usage("cohomology takes one spec file");
            data["command"] = "cohomology";
            data["file"] = file;
            const Parsed p = load_and_validate(file);
            if (!p.validation.valid) {
                data["valid"] = false;
                data["findings"] = findings_to_json(p.validation.findings);
                result.exit_code = 1;
                return result;
            }
            const CohomologyResult c = cohomology_of_X(p.spec);
            json h = json::array();
            for (const AbelianGroup& g : c.groups) h.push_back(group_to_json(g));
            data["H"] = std::move(h);
            data["associated_graded"] = c.associated_graded;
            if (with_e2) data["e2"] = e2_to_json(c.e2);
        } else if (cmd == "signature") {
            bool verbose = false;
            std::string file;
            for (size_t i = 1; i < args.size(); ++i) {
                if (args[i] == "--verbose")
                    verbose = true;
                else if (file.empty())
                    file = args[i];
                else
                    return usage("unexpected argument '" + args[i] + "'");
            }
            if (file.empty()) return usage("signature takes one spec file");
            data["command"] = "signature";
            data["file"] = file;
            const Parsed p = load_and_validate(file);
            if (!p.validation.valid) {
                data["valid"] = false;
                data["findings"] = findings_to_json(p.validation.findings);
                result.exit_code = 1;
                return result;
            }
            const SignatureBreakdown s = signature_total(p.spec);  // may report unsupported
            json terms = json::array();
            for (const auto& [pair, tau] : s.interior_terms)
                terms.push_back({{"c1", mat_to_json(pair.c1)}, {"c2", mat_to_json(pair.c2)}, {"tau", tau}});
            data["interior_terms"] = std::move(terms);
            if (verbose) {
                NecklaceModel necklace = necklace_from(p.spec);
                if (necklace.size() == 1) necklace = blow_up(necklace, 0);
                json vecs = json::array();
                for (const IntVec& v : necklace.vectors) vecs.push_back(vec_to_json(v));
                data["necklace"] = std::move(vecs);
            }
            data["boundary_matrix"] = mat_to_json(s.boundary_matrix);
            data["blowup_count"] = s.blowup_count;
            data["sigma_interior"] = s.sigma_interior;
            data["sigma_boundary"] = s.sigma_boundary;
            data["total"] = s.total;
        } else if (cmd == "delzant") {
            if (args.size() < 3) return usage("delzant takes a subcommand and a polygon file");
            const std::string sub = args[1];
            if (sub == "check") {
                if (args.size() != 3) return usage("delzant check takes one polygon file");
                data["command"] = "delzant check";
                data["file"] = args[2];
                const PolygonParse pp = parse_polygon_document(read_file(args[2]));
                if (!pp.polygon) {
                    data["valid"] = false;
                    data["findings"] = findings_to_json(pp.findings);
                    result.exit_code = 1;
                    return result;
                }
                const ValidationReport report = delzant_validate(*pp.polygon);
                data["valid"] = report.valid;
                data["findings"] = findings_to_json(report.findings);
                result.exit_code = report.valid ? 0 : 1;
            } else if (sub == "convert") {
                std::string file, out;
                for (size_t i = 2; i < args.size(); ++i) {
                    if (args[i] == "-o") {
                        if (i + 1 >= args.size()) return usage("-o needs an output path");
                        out = args[++i];
                    } else if (file.empty()) {
                        file = args[i];
                    } else {
                        return usage("unexpected argument '" + args[i] + "'");
                    }
                }
                if (file.empty() || out.empty())
                    return usage("delzant convert takes a polygon file and -o <out.ttm>");
                data["command"] = "delzant convert";
                data["file"] = file;
                const PolygonParse pp = parse_polygon_document(read_file(file));
                if (!pp.polygon) {
                    data["valid"] = false;
                    data["findings"] = findings_to_json(pp.findings);
                    result.exit_code = 1;
                    return result;
                }
                const TwistedToricSpec spec = delzant_to_spec(*pp.polygon);
                std::ofstream os(out, std::ios::binary);
                if (!os) throw parse_error("cannot write file: " + out);
                os << serialize_spec_document(SpecDocument::from_spec(spec));
                data["output"] = out;
                data["spec"] = spec_document_to_json(SpecDocument::from_spec(spec));
            } else {
                return usage("unknown delzant subcommand '" + sub + "'");
            }
        } else {
            return usage("unknown command '" + cmd + "'");
        }
    } catch (const unsupported_error& e) {
        data["error"] = e.what();
        result.exit_code = 2;
    } catch (const error& e) {
        data["error"] = e.what();
        result.exit_code = 1;
    }
    return result;
}

}  // namespace ttm
