#pragma once

#include <iosfwd>
#include <string>

#include "drstokes/grid.hpp"

namespace drstokes {

/// Writes the DRFORM/1 text format. Values use %.17g so reading back is exact.
void write_drform(std::ostream& out, const GridForm& u);
/// Throws FormatError on malformed input.
GridForm read_drform(std::istream& in);

void save_drform(const std::string& path, const GridForm& u);
GridForm load_drform(const std::string& path);

}  // namespace drstokes
