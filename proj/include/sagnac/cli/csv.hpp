#ifndef SAGNAC_CLI_CSV_HPP
#define SAGNAC_CLI_CSV_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sagnac::cli
{

// Scientific notation with 16 significant digits, '.' decimal separator.
std::string format_value(double v);
// Empty field for a missing value.
std::string format_value(const std::optional<double> &v);

class CsvTable
{
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);

    const std::vector<std::string> &header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }

    // Header line plus one line per row, CRLF-free, fields quoted only when
    // they contain a comma, quote or newline.
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over `path`.
// Throws Error(IoError).
void write_text_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace sagnac::cli

#endif
