#pragma once

#include "impactlab/impact.hpp"

#include <string>
#include <vector>

namespace impactlab {

/// Shortest round-trip decimal form, locale independent (std::to_chars).
std::string format_double(double v);

/// Row-oriented CSV builder: header row, period decimal separator, LF line
/// endings. The byte output is the determinism contract of the tool.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Profile CSV: columns t_start,t_end,rate,flag. Interval rows leave flag
/// empty; impulse rows carry (t, t, volume, "impulse").
std::string profile_to_csv(const RateProfile& p);
RateProfile profile_from_csv(const std::string& text);

/// Trade-list CSV with columns t,volume.
std::string trades_to_csv(const std::vector<Impulse>& trades);
std::vector<Impulse> trades_from_csv(const std::string& text);

} // namespace impactlab
