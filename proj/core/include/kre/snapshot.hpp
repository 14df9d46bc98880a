#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kre/corpus.hpp"

namespace kre {

inline constexpr std::string_view kSnapshotFormat = "kre-snapshot";
inline constexpr int kSnapshotVersion = 1;

// Processed corpus persistence; layout documented in docs/snapshot-format.md.
// write(read(bytes)) == bytes for every snapshot this library wrote.

void write_snapshot(std::ostream& out, const Corpus& corpus);
std::string snapshot_bytes(const Corpus& corpus);

/// Throws IoError if the file cannot be written.
void save_snapshot(const std::filesystem::path& path, const Corpus& corpus);

/// Throws ParseError on a malformed, inconsistent or unsupported-version snapshot.
Corpus read_snapshot(std::istream& in);

/// Throws IoError if the file cannot be read.
Corpus load_snapshot(const std::filesystem::path& path);

}  // namespace kre
