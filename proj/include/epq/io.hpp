#pragma once

#include <string>
#include <utility>
#include <vector>

namespace epq {

/// One resolved configuration entry echoed into every output file.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Full-precision, locale-independent rendering (17 significant digits) so
/// repeated runs are byte identical.
std::string format_double(double x);

/// Comma-separated table with '#'-prefixed header comments carrying the
/// resolved configuration.
class CsvWriter {
  public:
    CsvWriter(std::string path, const ConfigEcho& config,
              std::vector<std::string> columns);

    void row(const std::vector<double>& values);
    void write();  // flush to disk; throws on I/O failure

  private:
    std::string path_;
    std::string body_;
    size_t n_columns_;
};

/// Serialize a JSON document (nlohmann, ordered keys) with the config echo
/// under "config".  Declared here to keep json.hpp out of most translation
/// units; the CLI passes a prebuilt document.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace epq
