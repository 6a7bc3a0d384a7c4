#pragma once

#include <iosfwd>
#include <string>

#include "gapbp/instance.hpp"

namespace gapbp {

/// Plain-text instance exchange format:
///   line 1:            "<n_agents> <n_tasks>"
///   next n_agents lines: profit rows, n_tasks numbers each
///   next n_agents lines: weight rows, n_tasks numbers each
///   last line:         n_agents capacities
/// Numbers are written with full round-trip precision, so
/// parse(format(x)) == x exactly.
std::string format_instance(const GapInstance& instance);
void write_instance(std::ostream& out, const GapInstance& instance);

/// Parses the format above (any whitespace separates tokens). Throws
/// std::runtime_error with a line diagnostic on malformed input.
GapInstance parse_instance(std::istream& in);
GapInstance parse_instance_text(const std::string& text);

GapInstance load_instance_file(const std::string& path);
void save_instance_file(const std::string& path, const GapInstance& instance);

/// Round-trip formatting for one double ("%.17g").
std::string format_number(double value);

}  // namespace gapbp
