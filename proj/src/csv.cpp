#include "impactlab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace impactlab {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CSV header must be nonempty");
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    auto append = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append(header_);
    for (const auto& row : rows_) append(row);
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    double v;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad number in CSV: '" + s + "'");
    return v;
}

} // namespace

std::string profile_to_csv(const RateProfile& p) {
    CsvTable table({"t_start", "t_end", "rate", "flag"});
    for (std::size_t i = 0; i < p.rates.size(); ++i)
        table.add_row({format_double(p.grid[i]), format_double(p.grid[i + 1]),
                       format_double(p.rates[i]), ""});
    for (const auto& imp : p.impulses)
        table.add_row({format_double(imp.time), format_double(imp.time),
                       format_double(imp.volume), "impulse"});
    return table.str();
}

RateProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty profile CSV");
    std::vector<double> grid;
    std::vector<double> rates;
    std::vector<Impulse> impulses;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 4) throw std::invalid_argument("profile rows need 4 columns");
        if (cells[3] == "impulse") {
            impulses.push_back({parse_double(cells[0]), parse_double(cells[2])});
            continue;
        }
        const double a = parse_double(cells[0]);
        const double b = parse_double(cells[1]);
        if (grid.empty()) {
            grid.push_back(a);
        } else if (grid.back() != a) {
            throw std::invalid_argument("profile intervals must be contiguous");
        }
        grid.push_back(b);
        rates.push_back(parse_double(cells[2]));
    }
    if (grid.size() < 2) throw std::invalid_argument("profile CSV has no intervals");
    return RateProfile(std::move(grid), std::move(rates), std::move(impulses));
}

std::string trades_to_csv(const std::vector<Impulse>& trades) {
    CsvTable table({"t", "volume"});
    for (const auto& tr : trades)
        table.add_row({format_double(tr.time), format_double(tr.volume)});
    return table.str();
}

std::vector<Impulse> trades_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty trades CSV");
    std::vector<Impulse> trades;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 2) throw std::invalid_argument("trade rows need 2 columns");
        trades.push_back({parse_double(cells[0]), parse_double(cells[1])});
    }
    return trades;
}

} // namespace impactlab
