#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "neuralbandit/dataset.hpp"

namespace neuralbandit::data {

inline constexpr std::size_t kBinsPerFeature = 5;

// Equal-frequency bins of one continuous feature.
//
// Cut q (q = 1..4) is the sorted value at 1-based rank ceil(q * n / 5). Bins
// are left-closed: [min, c1), [c1, c2), ..., [c4, max]. Cuts equal to the
// feature minimum, and repeated cuts, are dropped so a feature with few
// distinct values fills the low bins first; a constant feature always lands
// in bin 0.
struct FeatureBins {
  std::array<double, kBinsPerFeature - 1> cuts{};
  std::vector<double> effective_cuts;
  bool degenerate = false;

  std::size_t bin_of(double value) const;
};

struct BinarizationScheme {
  std::vector<ColumnSpec> columns;
  // Indexed like `columns`; only continuous entries are meaningful.
  std::vector<FeatureBins> bins;
  std::vector<std::string> warnings;

  std::size_t output_width() const;
};

// Throws std::invalid_argument on an empty dataset.
BinarizationScheme fit_binarization(const RawDataset& data);

// Concatenated indicator blocks in column order. Throws std::invalid_argument
// for a binary value other than 0/1 or an undeclared categorical level.
std::vector<double> encode(const BinarizationScheme& scheme, std::span<const double> row);
void encode_into(const BinarizationScheme& scheme, std::span<const double> row,
                 std::span<double> out);

}  // namespace neuralbandit::data
