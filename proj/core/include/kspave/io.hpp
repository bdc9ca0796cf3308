#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kspave/certificate.hpp"
#include "kspave/frames.hpp"
#include "kspave/harmonic.hpp"
#include "kspave/linalg.hpp"
#include "kspave/subspaces.hpp"

namespace kspave::io {

// All parsers throw Error(ErrorCode::Parse, ...) on malformed documents.

/// {"rows":n,"cols":m,"re":[[...]],"im":[[...]]}; "im" omitted for real data.
Matrix parse_matrix(std::string_view text);
std::string dump_matrix(const Matrix& m);

/// {"dim":d,"vectors":[[...],...]}; entries are floats or {"re":x,"im":y}.
Frame parse_frame(std::string_view text);
std::string dump_frame(const Frame& f);

/// {"intervals":[[a,b],...]}; endpoints may also be "p/q" strings.
IntervalSet parse_interval_set(std::string_view text);
std::string dump_interval_set(const IntervalSet& e);

/// {"ambient_dim":n,"basis":[[...],...]}; each inner list is one basis vector.
SubspaceModel parse_subspace(std::string_view text);
std::string dump_subspace(const SubspaceModel& h);

PartitionCertificate parse_certificate(std::string_view text);
std::string dump_certificate(const PartitionCertificate& c);

/// One row per block: block, size, norm, bound, and class bounds when present.
std::string certificate_csv(const PartitionCertificate& c);

/// Which schema a document matches: "matrix", "frame", "intervals",
/// "subspace", "certificate" or "" when none.
std::string detect_schema(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace kspave::io
