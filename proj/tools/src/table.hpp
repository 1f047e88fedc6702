#pragma once

#include <json.hpp>

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace horolab::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// Resolved option values of one run, in option order.
using RunConfig = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double x);
void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t, const std::string& command, const RunConfig& config);

} // namespace horolab::cli
