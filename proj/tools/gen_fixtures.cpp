// Writes the benchmark problem files shipped under fixtures/. Regenerate
// with: dsing-gen-fixtures [output-dir]

#include <filesystem>
#include <fstream>
#include <iostream>

#include "dsing/benchmarks.hpp"
#include "dsing/problem_io.hpp"

using namespace dsing;
namespace bm = dsing::benchmarks;

namespace {

void write(const std::filesystem::path& dir, const Problem& p) {
  const auto path = dir / (p.name + ".json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_problem(p);
  std::cout << "wrote " << path.string() << "\n";
}

Problem constant_diag12() {
  Problem p;
  p.name = "diag12";
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = Complex(1.0, 0.0);
  a(1, 1) = Complex(2.0, 0.0);
  p.function = make_function({{ScalarTerm::monomial(0), a}});
  p.options.tol2 = 1e-4;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);

  {
    Problem p;
    p.name = "time_delay_real";
    p.function = bm::time_delay();
    p.structure = bm::time_delay_real();
    p.options.tol1 = 16e-8;
    p.options.tol2 = 1e-6;
    write(dir, p);

    p.name = "time_delay_sparsity";
    p.structure = bm::time_delay_sparsity();
    write(dir, p);

    p.name = "time_delay_rows";
    p.structure = bm::time_delay_rows();
    write(dir, p);
  }

  for (const Real tau : {1.0, 1e-5}) {
    Problem p;
    p.name = tau == 1.0 ? "motivating_tau1" : "motivating_tau1e-5";
    p.function = bm::motivating_dde(tau);
    write(dir, p);
  }

  {
    Problem p;
    p.name = "singular_pencil";
    p.function = bm::singular_pencil();
    write(dir, p);
  }

  {
    Problem p;
    p.name = "mixed_type";
    p.function = bm::mixed_type();
    p.structure = bm::mixed_type_sparsity();
    p.options.tol1 = 23e-9;  // m * 1e-9 at the expected m = 23
    p.options.tol2 = 1e-6;
    write(dir, p);
  }

  for (const Real tau : {0.5, 1.0, 2.0, 3.0}) {
    Problem p;
    p.name = "delay_sweep_tau" + std::to_string(tau).substr(0, 3);
    p.function = bm::delay_sweep(tau);
    write(dir, p);
  }

  {
    Problem p;
    p.name = "omnicam1";
    p.function = bm::omnicam1_like();
    p.options.tol3 = 1e-11;
    p.options.tol1 = 1e-12;
    p.options.scaled_functional = true;
    write(dir, p);

    p.name = "omnicam2";
    p.function = bm::omnicam2_like();
    write(dir, p);
  }

  {
    Problem p;
    p.name = "mirror";
    p.function = bm::mirror_like();
    p.options.tol3 = 1e-12;
    p.options.tol1 = 1e-12;
    p.options.scaled_functional = true;
    write(dir, p);
  }

  write(dir, constant_diag12());
  return 0;
}
