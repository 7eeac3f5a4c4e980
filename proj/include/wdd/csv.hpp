#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "wdd/core_dsp.hpp"

namespace wdd::csv {

/// `index,re,im` rows with 17 significant digits. Lines starting with '#'
/// are comments; `meta` entries are written as one `# key=value ...` line.
void write_vector(std::ostream& os, const ComplexVector& x,
                  const std::map<std::string, std::string>& meta = {});
ComplexVector read_vector(std::istream& is, std::map<std::string, std::string>* meta = nullptr);

void write_vector_file(const std::string& path, const ComplexVector& x,
                       const std::map<std::string, std::string>& meta = {});
ComplexVector read_vector_file(const std::string& path,
                               std::map<std::string, std::string>* meta = nullptr);

/// Parse `# a=1 b=2` into a map; returns false when the line is not a comment.
bool parse_meta_line(const std::string& line, std::map<std::string, std::string>& meta);

/// Shortest round-trip text for a double (17 significant digits, "inf"/"nan" spelled out).
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace wdd::csv
