#include "rrap/run_record.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rrap {

std::size_t RunRecord::feasible_count() const {
    std::size_t k = 0;
    for (const auto& e : entries) k += e.evaluation.feasible;
    return k;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("malformed number '" + std::string(s) + "'");
    }
    return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

void write_archive_csv(std::ostream& out, std::span<const ArchiveEntry> entries, std::size_t n_sub) {
    out << "index,f_r,f_c,r_s,g_v,g_c,g_w,feasible";
    for (std::size_t j = 1; j <= n_sub; ++j) out << ",n_" << j;
    for (std::size_t j = 1; j <= n_sub; ++j) out << ",r_" << j;
    out << '\n';
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& e = entries[k].evaluation;
        out << k << ',' << format_double(e.f_r) << ',' << format_double(e.f_c) << ','
            << format_double(e.r_s) << ',' << format_double(e.g_v) << ',' << format_double(e.g_c) << ','
            << format_double(e.g_w) << ',' << (e.feasible ? 1 : 0);
        const auto& genes = entries[k].solution.genes;
        for (double x : genes) out << ',' << static_cast<long long>(std::floor(x));
        for (double x : genes) out << ',' << format_double(x - std::floor(x));
        out << '\n';
    }
}

std::vector<ArchiveEntry> read_archive_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("archive CSV is empty");
    const auto header = split(line);
    if (header.size() < 8 || (header.size() - 8) % 2 != 0 || header[0] != "index") {
        throw std::runtime_error("unrecognised archive CSV header");
    }
    const std::size_t n_sub = (header.size() - 8) / 2;

    std::vector<ArchiveEntry> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != header.size()) throw std::runtime_error("archive CSV row has wrong column count");
        ArchiveEntry e;
        e.serial = out.size();
        auto& ev = e.evaluation;
        ev.f_r = parse_double(f[1]);
        ev.f_c = parse_double(f[2]);
        ev.r_s = parse_double(f[3]);
        ev.g_v = parse_double(f[4]);
        ev.g_c = parse_double(f[5]);
        ev.g_w = parse_double(f[6]);
        ev.feasible = f[7] == "1";
        ev.qualified = is_qualified(ev.f_r, ev.f_c);
        for (std::size_t j = 0; j < n_sub; ++j) {
            e.solution.genes.push_back(parse_double(f[8 + j]) + parse_double(f[8 + n_sub + j]));
        }
        out.push_back(std::move(e));
    }
    return out;
}

nlohmann::json record_sidecar(const RunRecord& record) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : record.trace) {
        nlohmann::json row = {{"generation", t.generation},
                              {"archive_size", t.archive_size},
                              {"qualified_offers", t.qualified_offers},
                              {"accepted_inserts", t.accepted_inserts}};
        row["c_g"] = t.c_g ? nlohmann::json(*t.c_g) : nlohmann::json(nullptr);
        trace.push_back(std::move(row));
    }
    return {{"algorithm", record.algorithm},
            {"problem_id", record.problem_id},
            {"run_index", record.run_index},
            {"seed", record.seed},
            {"config", record.config},
            {"entry_count", record.entries.size()},
            {"feasible_count", record.feasible_count()},
            {"trace", trace}};
}

std::pair<std::filesystem::path, std::filesystem::path> save_record(const RunRecord& record,
                                                                   const std::filesystem::path& stem) {
    auto csv_path = stem;
    csv_path += ".csv";
    auto json_path = stem;
    json_path += ".json";
    const std::size_t n_sub = record.entries.empty() ? 0 : record.entries.front().solution.genes.size();
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + csv_path.string());
        write_archive_csv(out, record.entries, n_sub);
    }
    {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + json_path.string());
        out << record_sidecar(record).dump(1) << '\n';
    }
    return {csv_path, json_path};
}

RunRecord load_record(const std::filesystem::path& csv_path, const std::filesystem::path& json_path) {
    std::ifstream jin(json_path);
    if (!jin) throw std::runtime_error("cannot open " + json_path.string());
    const auto j = nlohmann::json::parse(jin);
    RunRecord r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.problem_id = j.at("problem_id").get<int>();
    r.run_index = j.at("run_index").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    for (const auto& row : j.at("trace")) {
        TraceRow t;
        t.generation = row.at("generation").get<int>();
        t.archive_size = row.at("archive_size").get<std::size_t>();
        t.qualified_offers = row.at("qualified_offers").get<std::size_t>();
        t.accepted_inserts = row.at("accepted_inserts").get<std::size_t>();
        if (!row.at("c_g").is_null()) t.c_g = row.at("c_g").get<double>();
        r.trace.push_back(t);
    }
    std::ifstream cin(csv_path);
    if (!cin) throw std::runtime_error("cannot open " + csv_path.string());
    r.entries = read_archive_csv(cin);
    return r;
}

}  // namespace rrap
