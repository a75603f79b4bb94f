// Writes a synthetic dataset in the covertype CSV layout.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "neuralbandit/dataset.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic covertype-layout CSV"};
  std::string out;
  std::size_t rows = 2000;
  std::uint64_t seed = 7;
  app.add_option("--out", out, "Output CSV")->required();
  app.add_option("--rows", rows, "Row count");
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  const auto data = neuralbandit::data::synthetic_covertype(rows, seed);
  neuralbandit::data::write_covertype_csv(data, out);
  std::cout << "wrote " << rows << " rows to " << out << '\n';
  return 0;
}
