#include "ibf/report.hpp"

#include "ibf/num_format.hpp"

#include <cmath>
#include <sstream>

namespace ibf {

void Report::param_num(const std::string& key, double value) {
    parameters.emplace_back(key, format_double(value));
}

void Report::param_int(const std::string& key, long long value) {
    parameters.emplace_back(key, std::to_string(value));
}

void Report::param_str(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, "\"" + json_escape(value) + "\"");
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
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

namespace {

double clamp_bf10(double log_bf10) {
    constexpr double kLogClamp = 690.77552789821368;  // ln(1e300)
    if (log_bf10 > kLogClamp) return 1e300;
    if (log_bf10 < -kLogClamp) return 1e-300;
    return std::exp(log_bf10);
}

} // namespace

std::string to_json(const Report& r) {
    std::ostringstream os;
    os << "{\"command\":\"" << json_escape(r.command) << "\",\"parameters\":{";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        if (i) os << ',';
        os << '"' << json_escape(r.parameters[i].first) << "\":" << r.parameters[i].second;
    }
    os << "},\"log_bf10\":" << format_double(r.log_bf10)
       << ",\"bf10\":" << format_double(clamp_bf10(r.log_bf10))
       << ",\"mc_std_error\":" << format_double(r.mc_std_error)
       << ",\"posterior_prob_m1\":" << format_double(r.posterior_prob_m1)
       << ",\"scheme\":\"" << json_escape(r.scheme) << "\""
       << ",\"L\":" << r.draws
       << ",\"seed\":" << r.seed
       << ",\"skipped_samples\":" << r.skipped_samples
       << ",\"warnings\":[";
    for (std::size_t i = 0; i < r.warnings.size(); ++i) {
        if (i) os << ',';
        os << '"' << json_escape(r.warnings[i]) << '"';
    }
    os << "]}";
    return os.str();
}

std::string study_csv(const std::vector<StudyRow>& rows) {
    std::ostringstream os;
    os << "n_or_m,param,median_log_bf,slope_to_here,seeds\n";
    for (const auto& row : rows) {
        os << format_double(row.n_or_m) << ',' << format_double(row.param) << ','
           << format_double(row.median_log_bf) << ',' << format_double(row.slope_to_here) << ','
           << row.seeds << '\n';
    }
    return os.str();
}

} // namespace ibf
