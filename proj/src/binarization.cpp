#include "neuralbandit/binarization.hpp"

#include <algorithm>
#include <stdexcept>

namespace neuralbandit::data {

std::size_t FeatureBins::bin_of(double value) const {
  return static_cast<std::size_t>(
      std::upper_bound(effective_cuts.begin(), effective_cuts.end(), value) - effective_cuts.begin());
}

std::size_t BinarizationScheme::output_width() const {
  std::size_t width = 0;
  for (const ColumnSpec& col : columns) {
    switch (col.kind) {
      case ColumnKind::kContinuous: width += kBinsPerFeature; break;
      case ColumnKind::kBinary: width += 1; break;
      case ColumnKind::kCategorical: width += col.levels.size(); break;
    }
  }
  return width;
}

BinarizationScheme fit_binarization(const RawDataset& data) {
  if (data.size() == 0) throw std::invalid_argument("cannot fit binarization on an empty dataset");
  BinarizationScheme scheme;
  scheme.columns = data.columns;
  scheme.bins.resize(data.width());

  const std::size_t n = data.size();
  std::vector<double> column(n);
  for (std::size_t c = 0; c < data.width(); ++c) {
    if (data.columns[c].kind != ColumnKind::kContinuous) continue;
    for (std::size_t r = 0; r < n; ++r) column[r] = data.values[r * data.width() + c];
    std::sort(column.begin(), column.end());

    FeatureBins& fb = scheme.bins[c];
    for (std::size_t q = 1; q < kBinsPerFeature; ++q) {
      const std::size_t rank = (q * n + kBinsPerFeature - 1) / kBinsPerFeature;
      fb.cuts[q - 1] = column[std::max<std::size_t>(rank, 1) - 1];
    }
    const double lowest = column.front();
    for (double cut : fb.cuts) {
      if (cut == lowest) continue;
      if (!fb.effective_cuts.empty() && fb.effective_cuts.back() == cut) continue;
      fb.effective_cuts.push_back(cut);
    }
    const std::size_t distinct =
        static_cast<std::size_t>(std::unique(column.begin(), column.end()) - column.begin());
    if (distinct < kBinsPerFeature || fb.effective_cuts.size() < kBinsPerFeature - 1) {
      fb.degenerate = true;
      scheme.warnings.push_back("feature '" + data.columns[c].name + "' has " +
                                std::to_string(distinct) + " distinct values; only " +
                                std::to_string(fb.effective_cuts.size() + 1) + " bins are used");
    }
  }
  return scheme;
}

void encode_into(const BinarizationScheme& scheme, std::span<const double> row, std::span<double> out) {
  if (row.size() != scheme.columns.size()) throw std::invalid_argument("row arity does not match scheme");
  if (out.size() != scheme.output_width()) throw std::invalid_argument("output buffer has wrong width");
  std::fill(out.begin(), out.end(), 0.0);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < scheme.columns.size(); ++c) {
    const ColumnSpec& col = scheme.columns[c];
    const double v = row[c];
    switch (col.kind) {
      case ColumnKind::kContinuous:
        out[offset + scheme.bins[c].bin_of(v)] = 1.0;
        offset += kBinsPerFeature;
        break;
      case ColumnKind::kBinary:
        if (v != 0.0 && v != 1.0) {
          throw std::invalid_argument("column '" + col.name + "' expects 0 or 1");
        }
        out[offset] = v;
        offset += 1;
        break;
      case ColumnKind::kCategorical: {
        const auto it = std::find(col.levels.begin(), col.levels.end(), v);
        if (it == col.levels.end()) {
          throw std::invalid_argument("column '" + col.name + "' has undeclared level");
        }
        out[offset + static_cast<std::size_t>(it - col.levels.begin())] = 1.0;
        offset += col.levels.size();
        break;
      }
    }
  }
}

std::vector<double> encode(const BinarizationScheme& scheme, std::span<const double> row) {
  std::vector<double> out(scheme.output_width());
  encode_into(scheme, row, out);
  return out;
}

}  // namespace neuralbandit::data
