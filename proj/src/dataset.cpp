#include "neuralbandit/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "neuralbandit/rng.hpp"

namespace neuralbandit::data {

namespace {

constexpr std::array<const char*, kCovertypeContinuous> kContinuousNames = {
    "elevation",
    "aspect",
    "slope",
    "horizontal_distance_to_hydrology",
    "vertical_distance_to_hydrology",
    "horizontal_distance_to_roadways",
    "hillshade_9am",
    "hillshade_noon",
    "hillshade_3pm",
    "horizontal_distance_to_fire_points",
};

double parse_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse '" +
                             std::string(field) + "'");
  }
  return v;
}

}  // namespace

void RawDataset::check() const {
  if (values.size() != labels.size() * columns.size()) {
    throw std::invalid_argument("dataset value buffer does not match rows x columns");
  }
  for (int label : labels) {
    if (label < 1 || static_cast<std::size_t>(label) > class_count) {
      throw std::invalid_argument("label " + std::to_string(label) + " outside 1.." +
                                  std::to_string(class_count));
    }
  }
}

std::vector<ColumnSpec> covertype_columns() {
  std::vector<ColumnSpec> cols;
  for (const char* name : kContinuousNames) cols.push_back({name, ColumnKind::kContinuous, {}});
  for (std::size_t i = 1; i <= kCovertypeWilderness; ++i) {
    cols.push_back({"wilderness_area_" + std::to_string(i), ColumnKind::kBinary, {}});
  }
  for (std::size_t i = 1; i <= kCovertypeSoil; ++i) {
    cols.push_back({"soil_type_" + std::to_string(i), ColumnKind::kBinary, {}});
  }
  return cols;
}

RawDataset load_covertype_csv(const std::filesystem::path& path, std::size_t max_rows) {
  std::ifstream in(path);
  if (!in) throw DataMissingError("dataset not found: " + path.string());

  RawDataset data;
  data.columns = covertype_columns();
  data.class_count = kCovertypeClasses;
  const std::size_t width = data.columns.size();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
      const double v = parse_double(field, line_no);
      if (fields < width) {
        data.values.push_back(v);
      } else if (fields == width) {
        if (v != std::floor(v) || v < 1 || v > static_cast<double>(kCovertypeClasses)) {
          throw std::runtime_error("line " + std::to_string(line_no) + ": label must be 1..7");
        }
        data.labels.push_back(static_cast<int>(v));
      }
      ++fields;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields != width + 1) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(width + 1) + " fields, got " + std::to_string(fields));
    }
    if (max_rows != 0 && data.labels.size() == max_rows) break;
  }
  if (data.labels.empty()) throw std::runtime_error("dataset is empty: " + path.string());
  return data;
}

void write_covertype_csv(const RawDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.precision(17);
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (double v : data.row(r)) out << v << ',';
    out << data.labels[r] << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void shuffle_rows(RawDataset& data, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t w = data.width();
  for (std::size_t i = data.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    const std::size_t a = i - 1;
    if (j == a) continue;
    std::swap(data.labels[a], data.labels[j]);
    std::swap_ranges(data.values.begin() + a * w, data.values.begin() + (a + 1) * w,
                     data.values.begin() + j * w);
  }
}

RawDataset take_rows(const RawDataset& data, std::size_t n) {
  if (n == 0 || n >= data.size()) return data;
  RawDataset out;
  out.columns = data.columns;
  out.class_count = data.class_count;
  out.labels.assign(data.labels.begin(), data.labels.begin() + n);
  out.values.assign(data.values.begin(), data.values.begin() + n * data.width());
  return out;
}

RawDataset synthetic_covertype(std::size_t rows, std::uint64_t seed, double label_noise) {
  RawDataset data;
  data.columns = covertype_columns();
  data.class_count = kCovertypeClasses;
  data.values.reserve(rows * data.width());
  data.labels.reserve(rows);

  // Latent class scores: additive effects of elevation band, wilderness area
  // and soil type, plus a band x wilderness interaction and an aspect/hillshade
  // parity term that no per-indicator linear score can express. Every
  // threshold sits on a population quintile so the class is a function of the
  // binarized context. The class is the argmax score.
  constexpr std::size_t kBands = 5;
  constexpr std::size_t K = kCovertypeClasses;
  Rng table_rng(mix_seed(seed, 1));
  const auto draw = [&table_rng](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = table_rng.normal();
    return v;
  };
  const std::vector<double> band_effect = draw(K * kBands);
  const std::vector<double> wilderness_effect = draw(K * kCovertypeWilderness);
  const std::vector<double> soil_effect = draw(K * kCovertypeSoil);
  const std::vector<double> interaction = draw(K * kBands * kCovertypeWilderness);
  const std::vector<double> parity_effect = draw(K * 2);

  constexpr std::array<double, kCovertypeWilderness> kWildernessShare = {0.45, 0.05, 0.44, 0.06};
  constexpr std::array<double, 4> kNormalQuintiles = {-0.8416212335729143, -0.2533471031357997,
                                                      0.2533471031357997, 0.8416212335729143};
  std::array<double, 4> elevation_bands{};
  for (std::size_t i = 0; i < 4; ++i) elevation_bands[i] = 2950.0 + 280.0 * kNormalQuintiles[i];
  const double shade_threshold = 212.0 + 27.0 * kNormalQuintiles[2];

  Rng rng(seed);
  for (std::size_t r = 0; r < rows; ++r) {
    const double elevation = 2950.0 + 280.0 * rng.normal();
    const double aspect = 360.0 * rng.uniform();
    const double slope = std::abs(14.0 + 7.5 * rng.normal());
    const double hydro_h = -270.0 * std::log(1.0 - rng.uniform());
    const double hydro_v = 45.0 + 58.0 * rng.normal();
    const double road_h = -2350.0 * std::log(1.0 - rng.uniform());
    const double shade_9 = 212.0 + 27.0 * rng.normal();
    const double shade_noon = 223.0 + 20.0 * rng.normal();
    const double shade_3 = 142.0 + 38.0 * rng.normal();
    const double fire_h = -1980.0 * std::log(1.0 - rng.uniform());
    const std::size_t wilderness = rng.sample(kWildernessShare);
    // Soil types cluster by wilderness area.
    const std::size_t soil = (wilderness * 10 + rng.below(16)) % kCovertypeSoil;

    for (double v : {elevation, aspect, slope, hydro_h, hydro_v, road_h, shade_9, shade_noon,
                     shade_3, fire_h}) {
      data.values.push_back(v);
    }
    for (std::size_t w = 0; w < kCovertypeWilderness; ++w) data.values.push_back(w == wilderness);
    for (std::size_t s = 0; s < kCovertypeSoil; ++s) data.values.push_back(s == soil);

    const std::size_t band = static_cast<std::size_t>(
        std::upper_bound(elevation_bands.begin(), elevation_bands.end(), elevation) -
        elevation_bands.begin());
    const std::size_t parity = (aspect < 144.0) != (shade_9 >= shade_threshold) ? 1 : 0;
    std::size_t best = 0;
    double best_score = -1e300;
    for (std::size_t c = 0; c < K; ++c) {
      const double score = 2.0 * band_effect[c * kBands + band] +
                           wilderness_effect[c * kCovertypeWilderness + wilderness] +
                           soil_effect[c * kCovertypeSoil + soil] +
                           1.5 * interaction[(c * kBands + band) * kCovertypeWilderness + wilderness] +
                           1.5 * parity_effect[c * 2 + parity];
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    int label = 1 + static_cast<int>(best);
    if (rng.bernoulli(label_noise)) label = 1 + static_cast<int>(rng.below(kCovertypeClasses));
    data.labels.push_back(label);
  }
  return data;
}

}  // namespace neuralbandit::data
