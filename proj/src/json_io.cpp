#include "darboux/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace darboux {

namespace {

double parse_double(const std::string& s, const std::string& context) {
    double x = 0.0;
    const char* first = s.data();
    const char* last = first + s.size();
    if (!s.empty() && *first == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last)
        throw ParseError("cannot read a number from '" + s + "' in " + context);
    return x;
}

std::vector<Complex> complex_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw ParseError(std::string("missing array '") + key + "'");
    std::vector<Complex> out;
    out.reserve(j.at(key).size());
    for (const auto& x : j.at(key))
        out.push_back(complex_from_json(x));
    return out;
}

nlohmann::json complex_array(const std::vector<Complex>& v) {
    auto out = nlohmann::json::array();
    for (Complex z : v)
        out.push_back(complex_to_json(z));
    return out;
}

void check_header(const nlohmann::json& j, const char* type) {
    if (!j.is_object())
        throw ParseError("expected a JSON object");
    if (!j.contains("v") || j.at("v") != kSchemaVersion)
        throw ParseError("unsupported schema version (want \"v\": 1)");
    if (!j.contains("type") || j.at("type") != type)
        throw ParseError(std::string("expected \"type\": \"") + type + "\"");
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

}  // namespace

Complex parse_complex_literal(const std::string& text) {
    static const std::regex re(
        R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i\s*$)");
    std::smatch match;
    if (!std::regex_match(text, match, re))
        throw ParseError("invalid complex literal '" + text + "' (expected a+bi)");
    return {parse_double(match[1].str(), text), parse_double(match[2].str(), text)};
}

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
    std::string im = format_double(z.imag());
    if (im.front() != '-')
        im.insert(im.begin(), '+');
    return format_double(z.real()) + im + "i";
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex numbers are two-element arrays [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json to_json(const RecurrenceCoeffs& m) {
    nlohmann::json j;
    j["v"] = kSchemaVersion;
    j["type"] = "recurrence";
    j["c"] = complex_array(m.c_values());
    j["lambda"] = complex_array(m.lambda_values());
    j["s0"] = complex_to_json(m.s0());
    return j;
}

RecurrenceCoeffs recurrence_from_json(const nlohmann::json& j) {
    check_header(j, "recurrence");
    if (!j.contains("s0"))
        throw ParseError("missing 's0'");
    try {
        return RecurrenceCoeffs(complex_list(j, "c"), complex_list(j, "lambda"), complex_from_json(j.at("s0")));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid recurrence data: ") + e.what());
    }
}

nlohmann::json to_json(const SymmetricJacobi& J) {
    nlohmann::json j;
    j["v"] = kSchemaVersion;
    j["type"] = "symmetric_jacobi";
    j["b"] = complex_array(J.b);
    j["a"] = complex_array(J.a);
    auto branches = nlohmann::json::array();
    for (auto b : J.branch)
        branches.push_back(b == SqrtBranch::principal ? "principal" : "negated");
    j["branch"] = branches;
    return j;
}

SymmetricJacobi symmetric_from_json(const nlohmann::json& j) {
    check_header(j, "symmetric_jacobi");
    SymmetricJacobi J = [&] {
        try {
            return SymmetricJacobi(complex_list(j, "b"), complex_list(j, "a"));
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string("invalid Jacobi data: ") + e.what());
        }
    }();
    if (j.contains("branch")) {
        const auto& br = j.at("branch");
        if (!br.is_array() || br.size() != J.a.size())
            throw ParseError("'branch' must list one entry per off-diagonal");
        for (std::size_t k = 0; k < br.size(); ++k) {
            if (br[k] == "principal")
                J.branch[k] = SqrtBranch::principal;
            else if (br[k] == "negated")
                J.branch[k] = SqrtBranch::negated;
            else
                throw ParseError("unknown branch label");
        }
    }
    return J;
}

std::string write_coeff_file(const RecurrenceCoeffs& m, const nlohmann::json& provenance) {
    auto j = to_json(m);
    if (!provenance.is_null())
        j["provenance"] = provenance;
    return j.dump(2) + "\n";
}

CoeffFile read_coeff_file(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    CoeffFile f{recurrence_from_json(j), nullptr};
    if (j.contains("provenance"))
        f.provenance = j.at("provenance");
    return f;
}

CoeffFile load_coeff_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open coefficient file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return read_coeff_file(buf.str());
}

std::string write_zero_csv(const std::vector<ZeroRow>& rows) {
    bool cluster = false;
    for (const auto& r : rows)
        cluster = cluster || r.cluster_distance || r.log_cluster_distance;
    std::string out = cluster ? "n,re,im,cluster_distance,log_cluster_distance\n" : "n,re,im\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n) + "," + format_double(r.z.real()) + "," + format_double(r.z.imag());
        if (cluster) {
            out += ",";
            if (r.cluster_distance)
                out += format_double(*r.cluster_distance);
            out += ",";
            if (r.log_cluster_distance)
                out += format_double(*r.log_cluster_distance);
        }
        out += "\n";
    }
    return out;
}

std::vector<ZeroRow> read_zero_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty zero table");
    const auto header = split(line, ',');
    const bool cluster = header.size() == 5;
    if (!(header.size() == 3 || cluster) || header[0] != "n" || header[1] != "re" || header[2] != "im" ||
        (cluster && (header[3] != "cluster_distance" || header[4] != "log_cluster_distance")))
        throw ParseError("unexpected zero table header '" + line + "'");
    std::vector<ZeroRow> rows;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto f = split(line, ',');
        if (f.size() != header.size())
            throw ParseError("zero table row has " + std::to_string(f.size()) + " fields: '" + line + "'");
        ZeroRow r;
        r.n = static_cast<int>(parse_double(f[0], "n column"));
        r.z = {parse_double(f[1], "re column"), parse_double(f[2], "im column")};
        if (cluster) {
            if (!f[3].empty())
                r.cluster_distance = parse_double(f[3], "cluster_distance column");
            if (!f[4].empty())
                r.log_cluster_distance = parse_double(f[4], "log_cluster_distance column");
        }
        rows.push_back(r);
    }
    return rows;
}

}  // namespace darboux
