#include "seldist/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace seldist {

namespace {

using nlohmann::ordered_json;

double finite_number(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) throw ValidationError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(where + ": non-finite number");
  return x;
}

Point point_field(const ordered_json& v, std::size_t d, const std::string& where) {
  if (!v.is_array() || v.size() != d) {
    throw ValidationError(where + ": expected an array of " + std::to_string(d) + " numbers");
  }
  Point p;
  p.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    p.push_back(finite_number(v[j], where + "[" + std::to_string(j) + "]"));
  }
  return p;
}

ordered_json parse_root(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
}

int dim_field(const ordered_json& root) {
  if (!root.is_object() || !root.contains("d") || !root["d"].is_number_integer()) {
    throw ValidationError("expected a top-level object with integer field \"d\"");
  }
  const auto d = root["d"].get<long long>();
  if (d < 1 || d > 64) throw ValidationError("field \"d\" out of range");
  return static_cast<int>(d);
}

ordered_json point_json(const Point& p) {
  ordered_json arr = ordered_json::array();
  for (double x : p) arr.push_back(x);
  return arr;
}

}  // namespace

Workload parse_workload(const std::string& text) {
  const ordered_json root = parse_root(text);
  const int d = dim_field(root);
  if (!root.contains("samples") || !root["samples"].is_array() || root["samples"].empty()) {
    throw ValidationError("field \"samples\" must be a nonempty array");
  }

  Workload z;
  z.d = d;
  const auto& samples = root["samples"];
  z.samples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string where = "sample " + std::to_string(i);
    const auto& item = samples[i];
    if (!item.is_object() || !item.contains("lo") || !item.contains("hi") || !item.contains("s")) {
      throw ValidationError(where + ": expected fields lo, hi, s");
    }
    Point lo = point_field(item["lo"], static_cast<std::size_t>(d), where + ".lo");
    Point hi = point_field(item["hi"], static_cast<std::size_t>(d), where + ".hi");
    for (int j = 0; j < d; ++j) {
      if (lo[static_cast<std::size_t>(j)] > hi[static_cast<std::size_t>(j)]) {
        throw ValidationError(where + ": lo[" + std::to_string(j) + "] > hi[" + std::to_string(j) +
                              "]");
      }
    }
    const double s = finite_number(item["s"], where + ".s");
    if (s < 0.0 || s > 1.0) throw ValidationError(where + ": selectivity outside [0, 1]");
    z.samples.push_back(TrainingSample{Rect(std::move(lo), std::move(hi)), s});
  }
  return z;
}

std::string serialize_workload(const Workload& z) {
  ordered_json root;
  root["d"] = z.d;
  ordered_json samples = ordered_json::array();
  for (const auto& sample : z.samples) {
    ordered_json item;
    item["lo"] = point_json(sample.rect.lo);
    item["hi"] = point_json(sample.rect.hi);
    item["s"] = sample.s;
    samples.push_back(std::move(item));
  }
  root["samples"] = std::move(samples);
  return root.dump(2) + "\n";
}

DiscreteDistribution parse_distribution(const std::string& text) {
  const ordered_json root = parse_root(text);
  const int d = dim_field(root);
  if (!root.contains("atoms") || !root["atoms"].is_array()) {
    throw ValidationError("field \"atoms\" must be an array");
  }

  DiscreteDistribution dist;
  dist.d = d;
  const auto& atoms = root["atoms"];
  dist.atoms.reserve(atoms.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string where = "atom " + std::to_string(i);
    const auto& item = atoms[i];
    if (!item.is_object() || !item.contains("x") || !item.contains("w")) {
      throw ValidationError(where + ": expected fields x, w");
    }
    Point x = point_field(item["x"], static_cast<std::size_t>(d), where + ".x");
    const double w = finite_number(item["w"], where + ".w");
    if (!(w > 0.0)) throw ValidationError(where + ": weight must be positive");
    mass += w;
    dist.atoms.push_back(Atom{std::move(x), w});
  }
  if (mass > 1.0 + 1e-9) throw ValidationError("total weight exceeds 1");
  return dist;
}

std::string serialize_distribution(const DiscreteDistribution& dist) {
  ordered_json root;
  root["d"] = dist.d;
  ordered_json atoms = ordered_json::array();
  for (const auto& a : dist.atoms) {
    ordered_json item;
    item["x"] = point_json(a.x);
    item["w"] = a.w;
    atoms.push_back(std::move(item));
  }
  root["atoms"] = std::move(atoms);
  return root.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

Workload load_workload(const std::string& path) {
  try {
    return parse_workload(read_text_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void save_workload(const Workload& z, const std::string& path) {
  write_text_file(path, serialize_workload(z));
}

DiscreteDistribution load_distribution(const std::string& path) {
  try {
    return parse_distribution(read_text_file(path));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void save_distribution(const DiscreteDistribution& dist, const std::string& path) {
  write_text_file(path, serialize_distribution(dist));
}

std::vector<double> load_weights(const std::string& path, std::size_t expected_n) {
  const ordered_json root = parse_root(read_text_file(path));
  if (!root.is_array()) {
    throw ValidationError(path + ": expected a JSON array of weights");
  }
  if (root.size() != expected_n) {
    throw ValidationError(path + ": expected " + std::to_string(expected_n) + " weights, got " +
                          std::to_string(root.size()));
  }
  std::vector<double> weights;
  weights.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    weights.push_back(finite_number(root[i], path + "[" + std::to_string(i) + "]"));
  }
  return weights;
}

}  // namespace seldist
