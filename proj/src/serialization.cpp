#include "polyrelax/serialization.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>

#include <json.hpp>

namespace polyrelax {

namespace {

constexpr double kInfBound = std::numeric_limits<double>::infinity();

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string json_bound(double v) {
    if (std::isinf(v)) return "null";
    return fmt_real(v);
}

const char* sense_text(Sense s) {
    switch (s) {
        case Sense::le: return "<=";
        case Sense::eq: return "=";
        case Sense::ge: return ">=";
    }
    return "?";
}

Sense sense_from(const std::string& s) {
    if (s == "<=") return Sense::le;
    if (s == "=") return Sense::eq;
    if (s == ">=") return Sense::ge;
    throw Error("unknown constraint sense '" + s + "'");
}

std::string terms_json(const std::vector<LinTerm>& terms) {
    std::string out = "[";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += ", ";
        out += "{\"var\": \"" + json_escape(terms[i].var) +
               "\", \"coef\": " + fmt_real(terms[i].coef) + "}";
    }
    return out + "]";
}

} // namespace

std::string export_json(const ConstraintSystem& sys) {
    std::string out;
    out += "{\n";
    out += "  \"format_version\": 1,\n";

    out += "  \"variables\": [\n";
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
        const VarDef& v = sys.variables[i];
        out += "    {\"name\": \"" + json_escape(v.name) +
               "\", \"lb\": " + json_bound(v.lower) +
               ", \"ub\": " + json_bound(v.upper) + ", \"kind\": \"" +
               (v.kind == VarKind::binary ? "binary" : "continuous") + "\"}";
        out += i + 1 < sys.variables.size() ? ",\n" : "\n";
    }
    out += "  ],\n";

    out += "  \"constraints\": [\n";
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
        const LinConstraint& c = sys.constraints[i];
        out += "    {\"terms\": " + terms_json(c.terms) + ", \"sense\": \"" +
               sense_text(c.sense) + "\", \"rhs\": " + fmt_real(c.rhs) + "}";
        out += i + 1 < sys.constraints.size() ? ",\n" : "\n";
    }
    out += "  ],\n";

    if (sys.objective) {
        out += "  \"objective\": {\"sense\": \"";
        out += sys.objective->sense == ObjSense::minimize ? "min" : "max";
        out += "\", \"terms\": " + terms_json(sys.objective->terms) + "},\n";
    } else {
        out += "  \"objective\": null,\n";
    }

    const ModelMetadata& md = sys.metadata;
    out += "  \"metadata\": {\"function\": \"" + json_escape(md.function) +
           "\", \"lower\": " + fmt_real(md.lower) +
           ", \"upper\": " + fmt_real(md.upper) + ", \"partition\": [";
    for (std::size_t i = 0; i < md.partition.size(); ++i) {
        if (i) out += ", ";
        out += fmt_real(md.partition[i]);
    }
    out += "], \"strength_bound\": " + fmt_real(md.strength_bound) +
           ", \"formulation\": \"" + json_escape(md.formulation) + "\"}\n";
    out += "}\n";
    return out;
}

ConstraintSystem import_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != 1)
        throw Error("unsupported format_version");

    ConstraintSystem sys;
    for (const auto& jv : j.at("variables")) {
        VarDef v;
        v.name = jv.at("name").get<std::string>();
        v.lower = jv.at("lb").is_null() ? -kInfBound : jv.at("lb").get<double>();
        v.upper = jv.at("ub").is_null() ? kInfBound : jv.at("ub").get<double>();
        const std::string kind = jv.at("kind").get<std::string>();
        if (kind == "binary") v.kind = VarKind::binary;
        else if (kind == "continuous") v.kind = VarKind::continuous;
        else throw Error("unknown variable kind '" + kind + "'");
        sys.variables.push_back(std::move(v));
    }
    auto read_terms = [](const nlohmann::json& arr) {
        std::vector<LinTerm> terms;
        for (const auto& jt : arr)
            terms.push_back(
                {jt.at("var").get<std::string>(), jt.at("coef").get<double>()});
        return terms;
    };
    for (const auto& jc : j.at("constraints")) {
        LinConstraint c;
        c.terms = read_terms(jc.at("terms"));
        c.sense = sense_from(jc.at("sense").get<std::string>());
        c.rhs = jc.at("rhs").get<double>();
        sys.constraints.push_back(std::move(c));
    }
    if (!j.at("objective").is_null()) {
        Objective obj;
        const std::string sense = j.at("objective").at("sense").get<std::string>();
        if (sense == "min") obj.sense = ObjSense::minimize;
        else if (sense == "max") obj.sense = ObjSense::maximize;
        else throw Error("unknown objective sense '" + sense + "'");
        obj.terms = read_terms(j.at("objective").at("terms"));
        sys.objective = std::move(obj);
    }
    const auto& jm = j.at("metadata");
    sys.metadata.function = jm.at("function").get<std::string>();
    sys.metadata.lower = jm.at("lower").get<double>();
    sys.metadata.upper = jm.at("upper").get<double>();
    for (const auto& jp : jm.at("partition"))
        sys.metadata.partition.push_back(jp.get<double>());
    sys.metadata.strength_bound = jm.at("strength_bound").get<double>();
    sys.metadata.formulation = jm.at("formulation").get<std::string>();
    return sys;
}

namespace {

bool lp_keyword(const std::string& lowered) {
    static const std::set<std::string> kw = {
        "minimize", "maximize", "min",     "max",    "subject", "st",
        "such",     "bounds",   "bound",   "binary", "binaries", "bin",
        "general",  "generals", "gen",     "end",    "free",     "infinity",
        "inf",      "integers", "integer", "semi",   "sos"};
    return kw.count(lowered) > 0;
}

void validate_lp_name(const std::string& name) {
    if (name.empty())
        throw NameClashError("empty variable name cannot appear in LP format");
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        throw NameClashError("LP-format name must start with a letter or '_': '" +
                             name + "'");
    std::string lowered;
    for (char c : name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
            throw NameClashError("LP-format name contains invalid character: '" +
                                 name + "'");
        lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (lp_keyword(lowered))
        throw NameClashError("variable name collides with an LP keyword: '" +
                             name + "'");
}

std::string lp_terms(const std::vector<LinTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double c = terms[i].coef;
        if (i == 0) {
            out += fmt_real(c) + " " + terms[i].var;
        } else {
            out += c < 0.0 ? " - " : " + ";
            out += fmt_real(std::fabs(c)) + " " + terms[i].var;
        }
    }
    return out;
}

} // namespace

std::string export_lp_format(const ConstraintSystem& sys) {
    for (const VarDef& v : sys.variables) validate_lp_name(v.name);

    std::string out;
    const bool maximize =
        sys.objective && sys.objective->sense == ObjSense::maximize;
    out += maximize ? "Maximize\n" : "Minimize\n";
    if (sys.objective && !sys.objective->terms.empty()) {
        out += " obj: " + lp_terms(sys.objective->terms) + "\n";
    } else if (!sys.variables.empty()) {
        // Solvers expect some objective row; a zero coefficient is neutral.
        out += " obj: 0 " + sys.variables.front().name + "\n";
    } else {
        out += " obj:\n";
    }

    out += "Subject To\n";
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
        const LinConstraint& c = sys.constraints[i];
        out += " c" + std::to_string(i + 1) + ": " + lp_terms(c.terms) + " " +
               sense_text(c.sense) + " " + fmt_real(c.rhs) + "\n";
    }

    out += "Bounds\n";
    for (const VarDef& v : sys.variables) {
        if (v.kind == VarKind::binary) continue;  // declared in Binaries
        const bool lo_inf = v.lower == -kInfBound;
        const bool up_inf = v.upper == kInfBound;
        if (lo_inf && up_inf) out += " " + v.name + " free\n";
        else if (up_inf) out += " " + v.name + " >= " + fmt_real(v.lower) + "\n";
        else if (lo_inf)
            out += " -infinity <= " + v.name + " <= " + fmt_real(v.upper) + "\n";
        else
            out += " " + fmt_real(v.lower) + " <= " + v.name +
                   " <= " + fmt_real(v.upper) + "\n";
    }

    out += "Binaries\n";
    for (const VarDef& v : sys.variables)
        if (v.kind == VarKind::binary) out += " " + v.name + "\n";
    out += "End\n";
    return out;
}

} // namespace polyrelax
