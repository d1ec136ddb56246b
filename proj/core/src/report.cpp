#include "camoeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

namespace camoeval {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string format_percent(double fraction) {
    if (fraction == 0.0) return "0.00%";
    const double pct = fraction * 100.0;
    if (pct <= 0.01 + 1e-12) return "<=0.01%";
    const double rounded = std::floor(pct * 100.0 + 0.5) / 100.0;  // half-up
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", rounded);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void write_eval_csv(std::span<const EvalRow> rows, std::ostream& out) {
    out << "id,fm,metric,score,error\n";
    for (const auto& r : rows) {
        out << csv_field(r.id) << ',' << r.fm_index << ',' << r.metric << ','
            << (r.score ? format_double(*r.score) : std::string{}) << ',' << csv_field(r.error)
            << '\n';
    }
}

void write_eval_json(std::span<const EvalRow> rows, std::ostream& out) {
    json arr = json::array();
    for (const auto& r : rows) {
        json row{{"id", r.id}, {"fm", r.fm_index}, {"metric", r.metric}};
        if (r.score)
            row["score"] = *r.score;
        else
            row["score"] = nullptr;
        row["error"] = r.error;
        arr.push_back(std::move(row));
    }
    out << arr.dump(2) << '\n';
}

void write_meta_csv(std::span<const MetaResult> results, std::ostream& out) {
    out << "protocol,metric,statistic,value,samples,excluded,seed\n";
    for (const auto& r : results) {
        out << protocol_name(r.protocol) << ',' << r.metric << ',' << format_percent(r.statistic)
            << ',' << format_double(r.statistic) << ',' << r.sample_count << ',' << r.excluded
            << ',' << r.seed << '\n';
    }
}

void write_meta_json(std::span<const MetaResult> results, std::ostream& out) {
    json arr = json::array();
    for (const auto& r : results) {
        arr.push_back(json{{"protocol", protocol_name(r.protocol)},
                           {"metric", r.metric},
                           {"statistic", format_percent(r.statistic)},
                           {"value", r.statistic},
                           {"samples", r.sample_count},
                           {"excluded", r.excluded},
                           {"seed", r.seed}});
    }
    out << arr.dump(2) << '\n';
}

}  // namespace camoeval
