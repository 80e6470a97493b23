#include "ial/records_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <utility>

namespace ial {

std::string format_real(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string records_csv(const std::vector<ResultRecord>& records)
{
    std::string out(kRecordsHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.experiment_id + ',' + r.sweep_param + ',' + format_real(r.sweep_value) + ','
            + std::string(to_string(r.estimator)) + ',' + std::to_string(r.replicate) + ',' + std::to_string(r.seed)
            + ',' + format_real(r.error) + ',' + std::to_string(r.k_used) + ',' + std::to_string(r.ell_used) + ','
            + format_real(r.wall_time_ms) + '\n';
    }
    return out;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows)
{
    std::string out(kAggregateHeader);
    out += '\n';
    for (const auto& a : rows) {
        out += a.sweep_param + ',' + format_real(a.sweep_value) + ',' + std::string(to_string(a.estimator)) + ','
            + format_real(a.mean_error) + ',' + format_real(a.std_error) + ',' + std::to_string(a.count) + '\n';
    }
    return out;
}

std::string targets_csv(const std::vector<ResultRecord>& records)
{
    std::string out(kTargetsHeader);
    out += '\n';
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& r : records) {
        if (!seen.insert({r.sweep_index, r.replicate}).second) continue;
        out += r.sweep_param + ',' + format_real(r.sweep_value) + ',' + std::to_string(r.replicate) + ','
            + format_real(r.target_value) + '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace ial
