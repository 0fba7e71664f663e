#include "polyaurn/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "polyaurn/experiment.hpp"
#include "polyaurn/number_format.hpp"

namespace polyaurn {

std::string dataset_csv_header(std::size_t m) {
  std::string h = "replicate_id,seed";
  for (std::size_t c = 1; c <= m; ++c) h += ",popular_share_p" + std::to_string(c);
  for (std::size_t c = 1; c <= m; ++c) h += ",seats_p" + std::to_string(c);
  h += ",district1_share_p1,north_share_p1,south_share_p1";
  return h;
}

void write_dataset_csv(std::ostream& out, const ReplicateDataset& data) {
  out << dataset_csv_header(data.num_colours) << '\n';
  for (const auto& row : data.rows) {
    out << row.replicate_id << ',' << row.seed;
    for (double s : row.popular_shares) out << ',' << format_number(s);
    for (auto seats : row.seats) out << ',' << seats;
    out << ',' << format_number(row.district1_share) << ',' << format_number(row.north_share) << ','
        << format_number(row.south_share) << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line_no) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

ReplicateDataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("dataset CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  // 2 id columns + 2m share/seat columns + 3 trailing columns
  if (header.size() < 7 || (header.size() - 5) % 2 != 0) {
    throw std::invalid_argument("dataset CSV header has an unexpected column count");
  }
  const std::size_t m = (header.size() - 5) / 2;
  if (line != dataset_csv_header(m)) throw std::invalid_argument("dataset CSV header mismatch");

  ReplicateDataset data;
  data.num_colours = m;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": wrong column count");
    }
    ReplicateRow row;
    row.replicate_id = parse_field<std::uint64_t>(f[0], line_no);
    row.seed = parse_field<std::uint64_t>(f[1], line_no);
    for (std::size_t c = 0; c < m; ++c) row.popular_shares.push_back(parse_field<double>(f[2 + c], line_no));
    for (std::size_t c = 0; c < m; ++c) row.seats.push_back(parse_field<std::uint64_t>(f[2 + m + c], line_no));
    row.district1_share = parse_field<double>(f[2 + 2 * m], line_no);
    row.north_share = parse_field<double>(f[3 + 2 * m], line_no);
    row.south_share = parse_field<double>(f[4 + 2 * m], line_no);
    const auto n = std::accumulate(row.seats.begin(), row.seats.end(), std::uint64_t{0});
    if (data.rows.empty()) {
      data.num_districts = n;
    } else if (n != data.num_districts) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": seat total differs from earlier rows");
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

void save_dataset_csv(const std::filesystem::path& path, const ReplicateDataset& data) {
  std::ostringstream out;
  write_dataset_csv(out, data);
  write_text_file(path, out.str());
}

ReplicateDataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_dataset_csv(in);
}

void write_state_csv(std::ostream& out, const UrnState& state) {
  out << "district";
  for (std::size_t c = 1; c <= state.num_colours(); ++c) out << ",c" << c;
  out << '\n';
  for (std::size_t u = 0; u < state.num_districts(); ++u) {
    out << (u + 1);
    for (auto x : state.row(u)) out << ',' << x;
    out << '\n';
  }
}

void write_swing_csv(std::ostream& out, std::span<const SwingRecord> records) {
  out << "original_district_share,local_swing,national_swing\n";
  for (const auto& r : records) {
    out << format_number(r.original_district_share) << ',' << format_number(r.local_swing) << ','
        << format_number(r.national_swing) << '\n';
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace polyaurn
