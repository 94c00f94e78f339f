#pragma once

// Shared fixtures for the test binaries.

#include <eigen3/Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fixtures {

// Two-state chain with a known fixed point (2/3, 1/3).
inline Eigen::MatrixXd two_country() {
  Eigen::MatrixXd P(2, 2);
  P << 0.8, 0.2,
       0.4, 0.6;
  return P;
}

// Doubly stochastic, so the fixed point is uniform.
inline Eigen::MatrixXd circulant_three() {
  Eigen::MatrixXd P(3, 3);
  P << 0.5, 0.3, 0.2,
       0.2, 0.5, 0.3,
       0.3, 0.2, 0.5;
  return P;
}

// Dense 4x4 with distinct rows; used where exact values do not matter.
inline Eigen::MatrixXd dense_four() {
  Eigen::MatrixXd P(4, 4);
  P << 0.70, 0.10, 0.12, 0.08,
       0.05, 0.80, 0.09, 0.06,
       0.15, 0.07, 0.60, 0.18,
       0.04, 0.16, 0.10, 0.70;
  return P;
}

// Writes content to a fresh file under the system temp directory and
// returns its path. Files persist for the process lifetime only by name
// uniqueness; tests overwrite freely.
inline std::string write_temp(const std::string& name,
                              const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "cbal_tests";
  fs::create_directories(dir);
  fs::path path = dir / name;
  std::ofstream out(path);
  out << content;
  out.close();
  return path.string();
}

}  // namespace fixtures
