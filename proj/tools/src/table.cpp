#include "table.hpp"

#include "horolab/version.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace horolab::cli {

std::string format_double(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

namespace {

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c))
        return format_double(*d);
    if (const auto* i = std::get_if<long long>(&c))
        return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s)
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d))
            return *d;
        return format_double(*d);
    }
    if (const auto* i = std::get_if<long long>(&c))
        return *i;
    return std::get<std::string>(c);
}

} // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t, const std::string& command, const RunConfig& config) {
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    cfg["subcommand"] = command;
    for (const auto& [k, v] : config)
        cfg[k] = v;
    nlohmann::ordered_json doc;
    doc["metadata"] = {{"version", std::string(horolab::version)}, {"config", cfg}};
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[t.columns[i]] = json_cell(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    os << std::setw(2) << doc << '\n';
}

} // namespace horolab::cli
