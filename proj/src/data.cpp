#include "ibf/data.hpp"

#include "ibf/num_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace ibf {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
    std::ostringstream os;
    os << "survival csv, line " << line_no << ": " << msg;
    throw std::runtime_error(os.str());
}

} // namespace

SurvivalDataset parse_survival_csv(const std::string& text) {
    SurvivalDataset ds;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string group, time_str, status_str;
        if (!std::getline(ls, group, ',') || !std::getline(ls, time_str, ',') ||
            !std::getline(ls, status_str, ',')) {
            parse_fail(line_no, "expected `group,time,status`");
        }
        group = trim(group);
        time_str = trim(time_str);
        const std::string status_tok = lower(trim(status_str));
        if (rows == 0 && status_tok == "status") continue;  // header row
        double t = 0.0;
        const auto [p, ec] = std::from_chars(time_str.data(), time_str.data() + time_str.size(), t);
        if (ec != std::errc() || p != time_str.data() + time_str.size())
            parse_fail(line_no, "bad time `" + time_str + "`");
        if (!(t > 0.0)) parse_fail(line_no, "time must be positive");
        Status st;
        if (status_tok == "obs") st = Status::observed;
        else if (status_tok == "cens") st = Status::censored;
        else parse_fail(line_no, "unknown status `" + status_str + "` (want obs or cens)");
        ds.groups[group].push_back({t, st});
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("survival csv: no observations");
    return ds;
}

std::string to_csv(const SurvivalDataset& dataset) {
    std::ostringstream os;
    os << "group,time,status\n";
    for (const auto& [name, obs] : dataset.groups) {
        for (const auto& o : obs) {
            os << name << ',' << format_double(o.value) << ','
               << (o.status == Status::observed ? "obs" : "cens") << '\n';
        }
    }
    return os.str();
}

std::map<std::string, GroupStats> group_stats(const SurvivalDataset& dataset) {
    if (dataset.groups.empty()) throw std::domain_error("group_stats: empty dataset");
    std::map<std::string, GroupStats> out;
    for (const auto& [name, obs] : dataset.groups) {
        if (obs.empty()) throw std::domain_error("group_stats: empty group `" + name + "`");
        GroupStats g;
        for (const auto& o : obs) {
            g.total_time += o.value;
            if (o.status == Status::observed) ++g.n_uncensored;
            else ++g.n_censored;
        }
        out[name] = g;
    }
    return out;
}

const SurvivalDataset& gehan_dataset() {
    static const SurvivalDataset ds = [] {
        SurvivalDataset d;
        const double control[] = {1, 1, 2, 2, 3, 4, 4, 5, 5, 8, 8,
                                  8, 8, 11, 11, 12, 12, 15, 17, 22, 23};
        for (double t : control) d.groups["control"].push_back({t, Status::observed});
        // treated times in the published order; `true` marks a censored entry
        const std::pair<double, bool> treated[] = {
            {6, true},  {6, false}, {6, false}, {6, false}, {7, false},
            {9, true},  {10, true}, {10, false}, {11, true}, {13, false},
            {16, false}, {17, true}, {19, true}, {20, true}, {22, false},
            {23, false}, {25, true}, {32, true}, {32, true}, {34, true}, {35, true}};
        for (auto [t, cens] : treated)
            d.groups["treated"].push_back({t, cens ? Status::censored : Status::observed});
        return d;
    }();
    return ds;
}

BernoulliSummary bernoulli_summary(const std::vector<int>& bits) {
    if (bits.empty()) throw std::domain_error("bernoulli_summary: empty input");
    BernoulliSummary s;
    s.n = bits.size();
    for (int b : bits) {
        if (b != 0 && b != 1) throw std::domain_error("bernoulli_summary: entries must be 0 or 1");
        s.ones += static_cast<std::size_t>(b);
    }
    return s;
}

} // namespace ibf
