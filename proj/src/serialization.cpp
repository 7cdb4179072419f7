#include "chernband/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace chernband {

namespace {

JOp parse_j_op(const std::string& name) {
    if (name == "Jx") return JOp::Jx;
    if (name == "Jy") return JOp::Jy;
    if (name == "Jz") return JOp::Jz;
    throw ConfigError("spec: unknown J operator \"" + name + "\" (expected Jx, Jy or Jz)");
}

SOp parse_s_op(const std::string& name) {
    if (name == "Sx") return SOp::Sx;
    if (name == "Sy") return SOp::Sy;
    if (name == "Sz") return SOp::Sz;
    throw ConfigError("spec: unknown S operator \"" + name + "\" (expected Sx, Sy or Sz)");
}

std::string j_op_name(JOp op) {
    switch (op) {
        case JOp::Jx: return "Jx";
        case JOp::Jy: return "Jy";
        default: return "Jz";
    }
}

std::string s_op_name(SOp op) {
    switch (op) {
        case SOp::Sx: return "Sx";
        case SOp::Sy: return "Sy";
        default: return "Sz";
    }
}

}  // namespace

HamiltonianSpec parse_spec_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("spec: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("terms"))
        throw ConfigError("spec: top level must be an object with a \"terms\" array");
    const auto& terms = doc["terms"];
    if (!terms.is_array()) throw ConfigError("spec: \"terms\" must be an array");

    HamiltonianSpec spec;
    for (const auto& entry : terms) {
        if (!entry.is_object()) throw ConfigError("spec: each term must be an object");
        for (const auto& [key, value] : entry.items()) {
            (void)value;
            if (key != "coeff" && key != "j_word" && key != "s_word")
                throw ConfigError("spec: unknown term field \"" + key + "\"");
        }
        if (!entry.contains("coeff") || !entry["coeff"].is_number())
            throw ConfigError("spec: each term needs a numeric \"coeff\"");
        Term term;
        term.coeff = entry["coeff"].get<double>();
        for (const char* word : {"j_word", "s_word"}) {
            if (!entry.contains(word)) continue;
            const auto& arr = entry[word];
            if (!arr.is_array())
                throw ConfigError(std::string("spec: \"") + word + "\" must be an array");
            for (const auto& op : arr) {
                if (!op.is_string())
                    throw ConfigError(std::string("spec: \"") + word +
                                      "\" entries must be strings");
                if (std::string(word) == "j_word")
                    term.j_word.push_back(parse_j_op(op.get<std::string>()));
                else
                    term.s_word.push_back(parse_s_op(op.get<std::string>()));
            }
        }
        spec.terms.push_back(std::move(term));
    }
    return spec;
}

HamiltonianSpec load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("spec: cannot open file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_json(buffer.str());
}

nlohmann::json spec_to_json(const HamiltonianSpec& spec) {
    nlohmann::json terms = nlohmann::json::array();
    for (const Term& term : spec.terms) {
        nlohmann::json entry;
        entry["coeff"] = term.coeff;
        nlohmann::json jw = nlohmann::json::array();
        for (JOp op : term.j_word) jw.push_back(j_op_name(op));
        entry["j_word"] = std::move(jw);
        nlohmann::json sw = nlohmann::json::array();
        for (SOp op : term.s_word) sw.push_back(s_op_name(op));
        entry["s_word"] = std::move(sw);
        terms.push_back(std::move(entry));
    }
    return nlohmann::json{{"terms", std::move(terms)}};
}

nlohmann::json chern_to_json(const ChernResult& result) {
    return nlohmann::json{{"indices", result.indices},
                          {"raw", result.raw},
                          {"max_face_phase", result.max_face_phase},
                          {"depth", result.depth_used}};
}

nlohmann::json winding_to_json(const WindingResult& result) {
    nlohmann::json zeros = nlohmann::json::array();
    for (const Zero& z : result.zeros)
        zeros.push_back(nlohmann::json{{"theta", z.where.theta},
                                       {"phi", z.where.phi},
                                       {"degree", z.degree},
                                       {"in_s_plus", z.in_s_plus}});
    return nlohmann::json{
        {"c_plus", result.c_plus}, {"c_minus", -result.c_plus}, {"zeros", std::move(zeros)}};
}

std::string format_real(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw Error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("rename to " + path.string() + " failed: " + ec.message());
}

}  // namespace chernband
