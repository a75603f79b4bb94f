#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace neuralbandit::data {

enum class ColumnKind {
  kContinuous,   // expanded to 5 equal-frequency bin indicators
  kBinary,       // 0/1 column passed through as a single indicator
  kCategorical,  // one indicator per declared level
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kContinuous;
  std::vector<double> levels;  // kCategorical only
};

// Raw rows with integer class labels 1..class_count. Feature values are stored
// row-major in one flat buffer.
struct RawDataset {
  std::vector<ColumnSpec> columns;
  std::vector<double> values;
  std::vector<int> labels;
  std::size_t class_count = 0;

  std::size_t size() const { return labels.size(); }
  std::size_t width() const { return columns.size(); }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * columns.size(), columns.size()};
  }
  void check() const;
};

class DataMissingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kCovertypeClasses = 7;
inline constexpr std::size_t kCovertypeContinuous = 10;
inline constexpr std::size_t kCovertypeWilderness = 4;
inline constexpr std::size_t kCovertypeSoil = 40;

// UCI layout: 10 continuous columns, 4 wilderness-area indicators and 40
// soil-type indicators, followed by the label.
std::vector<ColumnSpec> covertype_columns();

// Reads a covertype CSV (54 feature columns + label 1..7, no header).
// max_rows == 0 reads everything. Throws DataMissingError if the file does not
// exist and std::runtime_error on malformed lines.
RawDataset load_covertype_csv(const std::filesystem::path& path, std::size_t max_rows = 0);

void write_covertype_csv(const RawDataset& data, const std::filesystem::path& path);

// Fisher-Yates shuffle of whole rows with a recorded seed.
void shuffle_rows(RawDataset& data, std::uint64_t seed);

// First n rows (or all of them when n == 0 or n >= size()).
RawDataset take_rows(const RawDataset& data, std::size_t n);

// Synthetic data in the covertype column layout. Continuous features are
// real-valued; the class depends on interactions between elevation band,
// wilderness area, aspect and slope, so it is not linearly separable in the
// binarized encoding. A fraction `label_noise` of labels is uniformly random.
RawDataset synthetic_covertype(std::size_t rows, std::uint64_t seed, double label_noise = 0.05);

}  // namespace neuralbandit::data
