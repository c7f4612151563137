#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "supralap/block_dft.hpp"
#include "supralap/eigensolver.hpp"
#include "supralap/supra.hpp"

namespace supralap::io {

/// %.17g: enough digits for a lossless double round trip.
std::string format_double(double x);

/// Layered edge list:
///   # supralap v1 N=<N> T=<T>
///   <t> <i> <j>                          one line per edge, t 1-based, i < j
///   # weights uniform <coupling>         optional; followed by one omega line
///   # weights per-node <coupling>        or by "<t> <i> <omega>" lines for pair (t, t+1)
void write_network(std::ostream& out, const TemporalNetwork& net);
std::string network_to_string(const TemporalNetwork& net);

/// Throws parse_error with the offending line number; layer validation errors
/// (disconnected, invalid_argument) propagate.
TemporalNetwork read_network(std::istream& in);
TemporalNetwork network_from_string(std::string_view text);
TemporalNetwork read_network_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// index,eigenvalue,k,method
std::string spectrum_csv(const SpectralResult& r, std::size_t top);
std::string spectrum_csv(const MergedSpectrum& s, std::size_t top);

/// One line per component, one column per eigenvector (the first `top`).
std::string eigenvector_csv(const SpectralResult& r, std::size_t top);

}  // namespace supralap::io
