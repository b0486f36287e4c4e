#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tdflow/error.hpp"
#include "tdflow/harness.hpp"

namespace tdflow {

using nlohmann::json;

double l2_error(const GraphInterface& a, const GraphInterface& b) {
    if (std::abs(a.period() - b.period()) > 1e-12 * std::max(a.period(), b.period())) {
        fail(ErrorKind::InvalidArgument, "l2_error: period mismatch");
    }
    const std::size_t n = std::max(a.size(), b.size());
    const GraphInterface ra = resample(a, n);
    const GraphInterface rb = resample(b, n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ra[i] - rb[i];
        sum += d * d;
    }
    return std::sqrt(a.period() / static_cast<double>(n) * sum);
}

void ErrorTable::add(double resolution, double error) {
    ErrorRow row{resolution, error, std::nullopt};
    if (!rows.empty()) {
        const ErrorRow& prev = rows.back();
        row.order = std::log(prev.error / error) / std::log(resolution / prev.resolution);
    }
    rows.push_back(row);
}

std::optional<double> ErrorTable::fitted_order() const {
    if (rows.size() < 2) return std::nullopt;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const ErrorRow& r : rows) {
        const double x = std::log(r.resolution);
        const double y = -std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(rows.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

TableFormat parse_format(const std::string& name) {
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    fail(ErrorKind::Config, "unknown output format '" + name + "' (expected csv or json)");
}

namespace {

std::string number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void csv_rows(const ErrorTable& table, bool with_series, std::ostream& out) {
    for (const ErrorRow& r : table.rows) {
        if (with_series) out << table.series << ',';
        out << number(r.resolution) << ',' << number(r.error) << ',';
        if (r.order) out << number(*r.order);
        out << '\n';
    }
}

json table_json(const ErrorTable& t) {
    json rows = json::array();
    for (const ErrorRow& r : t.rows) {
        json row = {{"resolution", r.resolution}, {"error", r.error}, {"order", nullptr}};
        if (r.order) row["order"] = *r.order;
        rows.push_back(std::move(row));
    }
    json j = {{"experiment", t.experiment},
              {"kernel", t.kernel},
              {"norm", t.norm},
              {"resolution_label", t.resolution_label},
              {"series", t.series},
              {"metadata", t.metadata},
              {"rows", std::move(rows)}};
    const auto fit = t.fitted_order();
    j["fitted_order"] = fit ? json(*fit) : json(nullptr);
    return j;
}

ErrorTable table_from(const json& j) {
    ErrorTable t;
    t.experiment = j.at("experiment").get<std::string>();
    t.kernel = j.at("kernel").get<std::string>();
    t.norm = j.at("norm").get<std::string>();
    t.resolution_label = j.at("resolution_label").get<std::string>();
    t.series = j.at("series").get<std::string>();
    t.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const json& r : j.at("rows")) {
        ErrorRow row;
        row.resolution = r.at("resolution").get<double>();
        row.error = r.at("error").get<double>();
        if (!r.at("order").is_null()) row.order = r.at("order").get<double>();
        t.rows.push_back(row);
    }
    return t;
}

}  // namespace

void emit(const ErrorTable& table, TableFormat format, std::ostream& out) {
    if (format == TableFormat::Csv) {
        out << table.resolution_label << ",error,order\n";
        csv_rows(table, false, out);
    } else {
        out << table_json(table).dump(2) << '\n';
    }
}

void emit(std::span<const ErrorTable> tables, TableFormat format, std::ostream& out) {
    if (tables.size() == 1) {
        emit(tables.front(), format, out);
        return;
    }
    if (format == TableFormat::Csv) {
        const std::string label = tables.empty() ? "n_steps" : tables.front().resolution_label;
        out << "series," << label << ",error,order\n";
        for (const ErrorTable& t : tables) csv_rows(t, true, out);
    } else {
        json arr = json::array();
        for (const ErrorTable& t : tables) arr.push_back(table_json(t));
        out << arr.dump(2) << '\n';
    }
}

void emit(std::span<const ErrorTable> tables, TableFormat format, const std::string& path) {
    if (path.empty() || path == "-") {
        emit(tables, format, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    emit(tables, format, out);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

std::string to_json(const ErrorTable& table) { return table_json(table).dump(2); }

ErrorTable table_from_json(const std::string& text) {
    try {
        return table_from(json::parse(text));
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, std::string("error table JSON: ") + e.what());
    }
}

}  // namespace tdflow
