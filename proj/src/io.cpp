#include "dcs/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  // Next non-blank, non-comment line.
  std::optional<Line> next() {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      std::istringstream ss(text);
      Line line{number_, {}};
      std::string tok;
      while (ss >> tok) line.tokens.push_back(tok);
      if (line.tokens.empty() || line.tokens.front().starts_with('#')) continue;
      return line;
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw Error(ErrorCode::ParseError, source_ + ":" + std::to_string(line) + ": " + what);
  }

  int parse_int(const Line& line, std::size_t k) const {
    const std::string& s = line.tokens.at(k);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(line.number, "expected an integer, got '" + s + "'");
    return value;
  }

  double parse_double(const Line& line, std::size_t k) const {
    const std::string& s = line.tokens.at(k);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
      fail(line.number, "expected a finite number, got '" + s + "'");
    }
    return value;
  }

  void expect_size(const Line& line, std::size_t n) const {
    if (line.tokens.size() != n) {
      fail(line.number, "expected " + std::to_string(n) + " fields, got " + std::to_string(line.tokens.size()));
    }
  }

  int vertex(const Line& line, std::size_t k, int n) const {
    const int v = parse_int(line, k);
    if (v < 0 || v >= n) fail(line.number, "vertex " + std::to_string(v) + " outside [0," + std::to_string(n) + ")");
    return v;
  }

 private:
  std::istream& in_;
  std::string source_;
  int number_ = 0;
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return in;
}

std::string format_g(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace

TriangulatedSurface parse_mesh(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  auto header = [&](const char* keyword) {
    auto line = reader.next();
    if (!line) reader.fail(0, std::string("missing '") + keyword + "' line");
    if (line->tokens.size() != 2 || line->tokens[0] != keyword) {
      reader.fail(line->number, std::string("expected '") + keyword + " <count>'");
    }
    const int count = reader.parse_int(*line, 1);
    if (count <= 0) reader.fail(line->number, std::string(keyword) + " count must be positive");
    return count;
  };
  const int n = header("vertices");
  const int m = header("faces");
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    auto line = reader.next();
    if (!line) reader.fail(0, "expected " + std::to_string(m) + " faces, found " + std::to_string(k));
    reader.expect_size(*line, 3);
    faces.push_back({reader.parse_int(*line, 0), reader.parse_int(*line, 1), reader.parse_int(*line, 2)});
  }
  if (auto extra = reader.next()) reader.fail(extra->number, "unexpected content after the face list");
  return TriangulatedSurface::build(n, std::move(faces));
}

TriangulatedSurface read_mesh(const std::string& path) {
  std::ifstream in = open(path);
  return parse_mesh(in, path);
}

WeightScheme parse_weights(std::istream& in, const TriangulatedSurface& surface, const std::string& source) {
  LineReader reader(in, source);
  const int n = surface.vertex_count();
  WeightScheme scheme;
  scheme.epsilon.assign(static_cast<std::size_t>(n), 1);
  while (auto line = reader.next()) {
    const std::string& key = line->tokens.front();
    if (key == "epsilon") {
      reader.expect_size(*line, 3);
      const int v = reader.vertex(*line, 1, n);
      const int value = reader.parse_int(*line, 2);
      if (value != 0 && value != 1) reader.fail(line->number, "epsilon must be 0 or 1");
      scheme.epsilon[static_cast<std::size_t>(v)] = value;
    } else if (key == "eta") {
      reader.expect_size(*line, 4);
      const int i = reader.vertex(*line, 1, n);
      const int j = reader.vertex(*line, 2, n);
      if (!surface.has_edge(i, j)) {
        reader.fail(line->number, "{" + std::to_string(i) + "," + std::to_string(j) + "} is not an edge");
      }
      scheme.set_eta(i, j, reader.parse_double(*line, 3));
    } else {
      reader.fail(line->number, "unknown keyword '" + key + "'");
    }
  }
  return scheme;
}

WeightScheme read_weights(const std::string& path, const TriangulatedSurface& surface) {
  std::ifstream in = open(path);
  return parse_weights(in, surface, path);
}

ConformalState parse_factors(std::istream& in, const TriangulatedSurface& surface, Background b,
                             const std::string& source) {
  LineReader reader(in, source);
  const int n = surface.vertex_count();
  ConformalState state{b, Eigen::VectorXd::Zero(n)};
  while (auto line = reader.next()) {
    const std::string& key = line->tokens.front();
    if (key != "f" && key != "r") reader.fail(line->number, "unknown keyword '" + key + "'");
    reader.expect_size(*line, 3);
    const int v = reader.vertex(*line, 1, n);
    const double value = reader.parse_double(*line, 2);
    if (key == "r") {
      if (!(value > 0.0)) reader.fail(line->number, "r must be positive");
      state.f[v] = std::log(value);
    } else {
      state.f[v] = value;
    }
  }
  return state;
}

ConformalState read_factors(const std::string& path, const TriangulatedSurface& surface, Background b) {
  std::ifstream in = open(path);
  return parse_factors(in, surface, b, path);
}

Eigen::VectorXd parse_target(std::istream& in, const TriangulatedSurface& surface, const std::string& source) {
  LineReader reader(in, source);
  const int n = surface.vertex_count();
  Eigen::VectorXd k = Eigen::VectorXd::Constant(n, std::nan(""));
  while (auto line = reader.next()) {
    if (line->tokens.front() != "K") reader.fail(line->number, "unknown keyword '" + line->tokens.front() + "'");
    reader.expect_size(*line, 3);
    k[reader.vertex(*line, 1, n)] = reader.parse_double(*line, 2);
  }
  for (int v = 0; v < n; ++v) {
    if (std::isnan(k[v])) reader.fail(0, "no target curvature for vertex " + std::to_string(v));
  }
  return k;
}

Eigen::VectorXd resolve_target(const std::string& text, const TriangulatedSurface& surface, Background b) {
  const int n = surface.vertex_count();
  if (text == "constant") {
    if (b == Background::Hyperbolic) {
      throw Error(ErrorCode::BadTarget, "hyperbolic targets need an explicit value: constant:<K>");
    }
    return Eigen::VectorXd::Constant(n, 2.0 * std::numbers::pi * surface.euler_characteristic() / n);
  }
  if (text.starts_with("constant:")) {
    const std::string value = text.substr(9);
    double k = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error(ErrorCode::ParseError, "bad constant target '" + text + "'");
    }
    return Eigen::VectorXd::Constant(n, k);
  }
  std::ifstream in = open(text);
  return parse_target(in, surface, text);
}

void write_trace_csv(std::ostream& out, const FlowTrace& trace) {
  const Eigen::Index n = trace.states.empty() ? 0 : trace.states.front().size();
  out << "t,err,sum_u";
  for (Eigen::Index i = 0; i < n; ++i) out << ",u_" << i;
  out << '\n';
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_g(trace.times[k], 17) << ',' << format_g(trace.errors[k], 12) << ','
        << format_g(trace.sum_u[k], 17);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_g(trace.states[k][i], 17);
    out << '\n';
  }
}

void write_factors(std::ostream& out, const ConformalState& state) {
  for (Eigen::Index i = 0; i < state.f.size(); ++i) out << "f " << i << ' ' << format_g(state.f[i], 17) << '\n';
}

}  // namespace dcs
