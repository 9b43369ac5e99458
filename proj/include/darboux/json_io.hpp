#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "darboux/core.hpp"

namespace darboux {

inline constexpr int kSchemaVersion = 1;

// "a+bi" / "a-bi", both parts required (e.g. "0+1i", "1.5-2e-3i").
Complex parse_complex_literal(const std::string& text);
std::string format_complex(Complex z);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

// {"v":1, "type":"recurrence", "c":[[re,im],...], "lambda":[...], "s0":[re,im]}
nlohmann::json to_json(const RecurrenceCoeffs& m);
RecurrenceCoeffs recurrence_from_json(const nlohmann::json& j);

// {"v":1, "type":"symmetric_jacobi", "b":[...], "a":[...], "branch":["principal"|"negated",...]}
nlohmann::json to_json(const SymmetricJacobi& J);
SymmetricJacobi symmetric_from_json(const nlohmann::json& j);

// A coefficient file: the recurrence plus an optional "provenance" object.
struct CoeffFile {
    RecurrenceCoeffs coeffs;
    nlohmann::json provenance;  // null when absent
};

std::string write_coeff_file(const RecurrenceCoeffs& m, const nlohmann::json& provenance = nullptr);
CoeffFile read_coeff_file(const std::string& text);
CoeffFile load_coeff_file(const std::string& path);

// Zero tables as CSV: header "n,re,im" and, when any row has one, the
// cluster columns "cluster_distance,log_cluster_distance".
struct ZeroRow {
    int n = 0;
    Complex z;
    std::optional<double> cluster_distance;
    std::optional<double> log_cluster_distance;
};

std::string write_zero_csv(const std::vector<ZeroRow>& rows);
std::vector<ZeroRow> read_zero_csv(const std::string& text);

// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace darboux
