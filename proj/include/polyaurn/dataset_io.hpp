#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "polyaurn/stats.hpp"
#include "polyaurn/urn.hpp"

namespace polyaurn {

// Replicate CSV: one header row, then one row per replicate with columns
//   replicate_id,seed,popular_share_p1..pm,seats_p1..pm,
//   district1_share_p1,north_share_p1,south_share_p1
// Numbers use '.' and the shortest round-trip representation.

std::string dataset_csv_header(std::size_t num_colours);
void write_dataset_csv(std::ostream& out, const ReplicateDataset& data);
/// Parses the format above; num_districts is recovered from the seat totals.
/// Throws std::invalid_argument on malformed input.
ReplicateDataset read_dataset_csv(std::istream& in);

/// File wrappers; throw IoError when the file cannot be opened.
void save_dataset_csv(const std::filesystem::path& path, const ReplicateDataset& data);
ReplicateDataset load_dataset_csv(const std::filesystem::path& path);

/// State snapshot: header "district,c1..cm" and one row of counts per district.
void write_state_csv(std::ostream& out, const UrnState& state);

/// Swing records: original_district_share,local_swing,national_swing.
void write_swing_csv(std::ostream& out, std::span<const SwingRecord> records);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace polyaurn
