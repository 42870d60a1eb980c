#include <fstream>
#include <sstream>

#include "advtk/witness_io.hpp"

#include "json.hpp"

namespace advtk {

namespace {

using nlohmann::json;

// numbers may be JSON numbers or "a/b" rational strings
double num_of(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>());
    throw UsageError("expected a number or rational string in " + where);
}

uint64_t code_of(const std::string& s, const BooleanFunction& f, const std::string& where) {
    if ((int)s.size() != f.n)
        throw UsageError(where + ": input \"" + s + "\" has length " +
                         std::to_string(s.size()) + ", expected " + std::to_string(f.n));
    uint64_t code = parse_input(s, f.k);
    if (!f.label(code)) throw UsageError(where + ": input \"" + s + "\" is outside the promise");
    return code;
}

ProbabilityFamily family_of(const json& doc, const BooleanFunction& f) {
    if (!doc.contains("p") || !doc["p"].is_object())
        throw UsageError("witness document needs an object field \"p\"");
    ProbabilityFamily w;
    w.n = f.n;
    for (auto it = doc["p"].begin(); it != doc["p"].end(); ++it) {
        uint64_t code = code_of(it.key(), f, "\"p\"");
        const json& arr = it.value();
        if (!arr.is_array() || (int)arr.size() != f.n)
            throw UsageError("distribution for \"" + it.key() + "\" must be an array of length " +
                             std::to_string(f.n));
        std::vector<double> p(f.n);
        for (int i = 0; i < f.n; ++i) p[i] = num_of(arr[i], "\"p\"[\"" + it.key() + "\"]");
        w.p[code] = std::move(p);
    }
    return w;
}

Matrix gamma_of(const json& doc, const BooleanFunction& f) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    Matrix G(int(xs.size()), int(ys.size()));
    std::map<uint64_t, int> xrow, ycol;
    for (size_t i = 0; i < xs.size(); ++i) xrow[xs[i]] = int(i);
    for (size_t j = 0; j < ys.size(); ++j) ycol[ys[j]] = int(j);
    if (doc.contains("matrix")) {
        const json& m = doc["matrix"];
        if (!m.is_array() || m.size() != xs.size())
            throw UsageError("\"matrix\" must have one row per 0-input (" +
                             std::to_string(xs.size()) + " rows)");
        for (size_t r = 0; r < xs.size(); ++r) {
            if (!m[r].is_array() || m[r].size() != ys.size())
                throw UsageError("\"matrix\" row " + std::to_string(r + 1) + " must have " +
                                 std::to_string(ys.size()) + " entries");
            for (size_t c = 0; c < ys.size(); ++c)
                G.at(int(r), int(c)) = num_of(m[r][c], "\"matrix\"");
        }
        return G;
    }
    if (doc.contains("entries")) {
        const json& e = doc["entries"];
        if (!e.is_array()) throw UsageError("\"entries\" must be an array of triples");
        for (const json& t : e) {
            if (!t.is_array() || t.size() != 3)
                throw UsageError("each \"entries\" element must be [x, y, value]");
            uint64_t xc = code_of(t[0].get<std::string>(), f, "\"entries\"");
            uint64_t yc = code_of(t[1].get<std::string>(), f, "\"entries\"");
            auto ir = xrow.find(xc);
            auto jc = ycol.find(yc);
            if (ir == xrow.end())
                throw UsageError("\"entries\": input " + t[0].get<std::string>() +
                                 " does not evaluate to 0");
            if (jc == ycol.end())
                throw UsageError("\"entries\": input " + t[1].get<std::string>() +
                                 " does not evaluate to 1");
            G.at(ir->second, jc->second) = num_of(t[2], "\"entries\"");
        }
        return G;
    }
    throw UsageError("spectral witness needs a \"matrix\" or \"entries\" field");
}

ProbSchemeWitness scheme_of(const json& doc, const BooleanFunction& f) {
    ProbSchemeWitness s;
    s.n = f.n;
    if (!doc.contains("pA") || !doc.contains("pB") || !doc.contains("q"))
        throw UsageError("probability-scheme witness needs \"pA\", \"pB\" and \"q\"");
    for (auto it = doc["pA"].begin(); it != doc["pA"].end(); ++it)
        s.pA[code_of(it.key(), f, "\"pA\"")] = num_of(it.value(), "\"pA\"");
    for (auto it = doc["pB"].begin(); it != doc["pB"].end(); ++it)
        s.pB[code_of(it.key(), f, "\"pB\"")] = num_of(it.value(), "\"pB\"");
    const json& q = doc["q"];
    if (!q.is_array()) throw UsageError("\"q\" must be an array of [x, y, value] triples");
    for (const json& t : q) {
        if (!t.is_array() || t.size() != 3)
            throw UsageError("each \"q\" element must be [x, y, value]");
        uint64_t xc = code_of(t[0].get<std::string>(), f, "\"q\"");
        uint64_t yc = code_of(t[1].get<std::string>(), f, "\"q\"");
        s.q[{xc, yc}] = num_of(t[2], "\"q\"");
    }
    auto read_cond = [&](const char* name,
                         std::map<std::pair<uint64_t, int>, std::map<uint64_t, double>>& dst) {
        if (!doc.contains(name)) return;
        const json& block = doc[name];
        if (!block.is_object())
            throw UsageError(std::string("\"") + name + "\" must map \"input,i\" to distributions");
        for (auto it = block.begin(); it != block.end(); ++it) {
            const std::string& key = it.key();
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw UsageError(std::string("\"") + name + "\" keys look like \"input,i\", got \"" +
                                 key + "\"");
            uint64_t code = code_of(key.substr(0, comma), f, name);
            int idx = 0;
            try {
                idx = std::stoi(key.substr(comma + 1));
            } catch (const std::exception&) {
                throw UsageError(std::string("\"") + name + "\": bad index in key \"" + key + "\"");
            }
            if (idx < 1 || idx > f.n)
                throw UsageError(std::string("\"") + name + "\": index " + std::to_string(idx) +
                                 " out of range 1.." + std::to_string(f.n));
            std::map<uint64_t, double> dist;
            for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
                dist[code_of(jt.key(), f, name)] = num_of(jt.value(), name);
            dst[{code, idx}] = std::move(dist);
        }
    };
    read_cond("px", s.px);
    read_cond("py", s.py);
    return s;
}

} // namespace

WitnessFile parse_witness(const std::string& text, const BooleanFunction& f) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("witness is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw UsageError("witness document needs a string field \"type\"");
    WitnessFile wf;
    wf.type = doc["type"].get<std::string>();
    wf.n = doc.value("n", f.n);
    if (wf.n != f.n)
        throw UsageError("witness arity " + std::to_string(wf.n) + " does not match the function (" +
                         std::to_string(f.n) + ")");
    if (wf.type == "sumpi" || wf.type == "maxpi") {
        wf.family = family_of(doc, f);
    } else if (wf.type == "spectral") {
        wf.gamma = gamma_of(doc, f);
    } else if (wf.type == "probscheme") {
        wf.scheme = scheme_of(doc, f);
    } else {
        throw UsageError("unknown witness type \"" + wf.type +
                         "\" (expected sumpi, maxpi, spectral or probscheme)");
    }
    return wf;
}

WitnessFile load_witness(const std::string& path, const BooleanFunction& f) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open witness file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_witness(buf.str(), f);
}

std::string format_family(const ProbabilityFamily& w, const BooleanFunction& f,
                          const std::string& type) {
    json doc;
    doc["type"] = type;
    doc["n"] = f.n;
    json p = json::object();
    for (const auto& [code, dist] : w.p) p[input_string(code, f.n, f.k)] = dist;
    doc["p"] = std::move(p);
    return doc.dump(2);
}

std::string format_gamma(const Matrix& gamma, const BooleanFunction& f) {
    std::vector<uint64_t> xs = f.side(0), ys = f.side(1);
    json doc;
    doc["type"] = "spectral";
    doc["n"] = f.n;
    json entries = json::array();
    for (size_t r = 0; r < xs.size(); ++r)
        for (size_t c = 0; c < ys.size(); ++c) {
            double v = gamma.at(int(r), int(c));
            if (v != 0.0)
                entries.push_back({input_string(xs[r], f.n, f.k),
                                   input_string(ys[c], f.n, f.k), v});
        }
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

} // namespace advtk
