// snapshot.hpp
// Field snapshot file: one text header
//   pfield <n> <extents...> <spacings...> <origin...> <bc-codes...>
// followed by the row-major node values, whitespace separated.

#ifndef PFLAB_SNAPSHOT_HPP
#define PFLAB_SNAPSHOT_HPP

#include <iosfwd>
#include <string>

#include "pflab/field.hpp"

namespace pflab {

void write_snapshot(std::ostream& os, const ScalarField& f);
void write_snapshot_file(const std::string& path, const ScalarField& f);

// Rejects malformed headers and mismatched value counts.
ScalarField read_snapshot(std::istream& is);
ScalarField read_snapshot_file(const std::string& path);

} // namespace pflab

#endif
