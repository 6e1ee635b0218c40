// Regenerates the bundled filter circuit file from the canonical builder so
// the fixture can never drift from the library netlist.
#include <fstream>
#include <iostream>

#include "qfilter/circuit.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "filter.json";
  qfilter::Circuit circuit = qfilter::build_filter_circuit();
  circuit.default_input = {{"p1H", 1}, {"p2H", 1}};
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot open " << path << " for writing\n";
    return 1;
  }
  out << qfilter::serialize_circuit(circuit);
  std::cout << "wrote " << path << "\n";
  return 0;
}
