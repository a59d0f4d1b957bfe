#pragma once

#include <stdexcept>
#include <string>

#include "seldist/geometry.hpp"

namespace seldist {

/// Malformed or out-of-contract input file; messages carry the offending
/// sample or atom index.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Workload parse_workload(const std::string& text);
std::string serialize_workload(const Workload& z);
Workload load_workload(const std::string& path);
void save_workload(const Workload& z, const std::string& path);

DiscreteDistribution parse_distribution(const std::string& text);
std::string serialize_distribution(const DiscreteDistribution& dist);
DiscreteDistribution load_distribution(const std::string& path);
void save_distribution(const DiscreteDistribution& dist, const std::string& path);

/// Plain JSON array of n numbers, the per-rect weights of oracle-depth.
std::vector<double> load_weights(const std::string& path, std::size_t expected_n);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace seldist
