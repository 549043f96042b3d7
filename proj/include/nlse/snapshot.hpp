#pragma once

#include <iosfwd>
#include <string>

#include "nlse/grid.hpp"

namespace nlse {

// Snapshot layout: one text line
//   NLSEFIELD d=<d> n=<n1[,n2[,n3]]> h=<h>\n
// followed by (re, im) pairs as little-endian IEEE-754 doubles, row-major.
// Only d, n and h are stored; readers place the grid centred on the origin.

void write_snapshot(std::ostream& os, const ComplexField& psi);
ComplexField read_snapshot(std::istream& is);

void write_snapshot_file(const std::string& path, const ComplexField& psi);
ComplexField read_snapshot_file(const std::string& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace nlse
