#include <sagnac/cli/csv.hpp>

#include <sagnac/error.hpp>

#include <cstdio>
#include <fstream>
#include <system_error>

namespace sagnac::cli
{

namespace
{

std::string quote(const std::string &field)
{
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string format_value(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

std::string format_value(const std::optional<double> &v)
{
    return v ? format_value(*v) : std::string();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields)
{
    if (fields.size() != header_.size())
        throw Error(ErrorKind::InvalidArgument, "CSV row width does not match the header");
    rows_.push_back(std::move(fields));
}

std::string CsvTable::render() const
{
    std::string out;
    auto emit = [&out](const std::vector<std::string> &fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0)
                out += ',';
            out += quote(fields[i]);
        }
        out += '\n';
    };
    emit(header_);
    for (const auto &row : rows_)
        emit(row);
    return out;
}

void write_text_atomic(const std::filesystem::path &path, std::string_view content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::IoError, "cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            throw Error(ErrorKind::IoError, "failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::IoError, "cannot move output into place at '" + path.string() + "'");
    }
}

} // namespace sagnac::cli
