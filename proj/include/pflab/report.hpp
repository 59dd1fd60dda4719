// report.hpp
// CSV and JSON report emission with stable formatting (%.17g), so reruns of
// the same config produce bitwise-identical files.

#ifndef PFLAB_REPORT_HPP
#define PFLAB_REPORT_HPP

#include <string>
#include <vector>

namespace pflab {

class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void close(); // flushes; throws Error on I/O failure
    ~CsvWriter();

private:
    std::string path_;
    std::string buffer_;
    std::size_t columns_ = 0;
    bool closed_ = false;
};

std::string format_double(double v);
void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

} // namespace pflab

#endif
