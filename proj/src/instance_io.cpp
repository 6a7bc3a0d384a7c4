#include "gapbp/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gapbp {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_instance(std::ostream& out, const GapInstance& instance) {
  const int n = instance.n_agents();
  const int m = instance.n_tasks();
  out << n << ' ' << m << '\n';
  auto write_matrix = [&](const Eigen::MatrixXd& matrix) {
    for (int i = 0; i < n; ++i) {
      for (int task = 0; task < m; ++task) {
        if (task) out << ' ';
        out << format_number(matrix(i, task));
      }
      out << '\n';
    }
  };
  write_matrix(instance.profits);
  write_matrix(instance.weights);
  for (int i = 0; i < n; ++i) {
    if (i) out << ' ';
    out << format_number(instance.capacity(i));
  }
  out << '\n';
}

std::string format_instance(const GapInstance& instance) {
  std::ostringstream out;
  write_instance(out, instance);
  return out.str();
}

GapInstance parse_instance(std::istream& in) {
  auto next = [&](const char* what) {
    double value;
    if (!(in >> value)) {
      throw std::runtime_error(std::string("instance parse error: expected ") + what);
    }
    return value;
  };

  const double n_raw = next("agent count");
  const double m_raw = next("task count");
  const int n = static_cast<int>(n_raw);
  const int m = static_cast<int>(m_raw);
  if (n < 1 || m < 1 || n != n_raw || m != m_raw) {
    throw std::runtime_error("instance parse error: bad header counts");
  }

  GapInstance instance;
  instance.profits.resize(n, m);
  instance.weights.resize(n, m);
  instance.capacity.resize(n);
  for (int i = 0; i < n; ++i)
    for (int task = 0; task < m; ++task) instance.profits(i, task) = next("profit entry");
  for (int i = 0; i < n; ++i)
    for (int task = 0; task < m; ++task) instance.weights(i, task) = next("weight entry");
  for (int i = 0; i < n; ++i) instance.capacity(i) = next("capacity entry");

  double extra;
  if (in >> extra) {
    throw std::runtime_error("instance parse error: trailing data");
  }
  validate(instance);
  return instance;
}

GapInstance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

GapInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(in);
}

void save_instance_file(const std::string& path, const GapInstance& instance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  write_instance(out, instance);
}

}  // namespace gapbp
