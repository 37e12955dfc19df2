#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "dcs/flow.hpp"
#include "dcs/geometry.hpp"
#include "dcs/surface.hpp"
#include "dcs/weights.hpp"

namespace dcs {

// Line-oriented text formats; '#' starts a comment line and blank lines are skipped.
// Parse failures throw ParseError with "<source>:<line>: ..." messages; unreadable files throw IoError.

// vertices N / faces M / M lines of three vertex indices.
TriangulatedSurface parse_mesh(std::istream& in, const std::string& source = "<mesh>");
TriangulatedSurface read_mesh(const std::string& path);

// `epsilon v value` (value 0 or 1, default 1) and `eta i j value`. Missing eta is left for
// validation to report as MissingWeight.
WeightScheme parse_weights(std::istream& in, const TriangulatedSurface& surface, const std::string& source = "<weights>");
WeightScheme read_weights(const std::string& path, const TriangulatedSurface& surface);

// `f v value` or `r v value` (r > 0); unlisted vertices get f = 0.
ConformalState parse_factors(std::istream& in, const TriangulatedSurface& surface, Background b,
                             const std::string& source = "<factors>");
ConformalState read_factors(const std::string& path, const TriangulatedSurface& surface, Background b);

// `K v value` for every vertex.
Eigen::VectorXd parse_target(std::istream& in, const TriangulatedSurface& surface, const std::string& source = "<target>");
// "constant" (2 pi chi / N, Euclidean only), "constant:<value>", or a path to a target file.
Eigen::VectorXd resolve_target(const std::string& text, const TriangulatedSurface& surface, Background b);

// Header t,err,sum_u,u_0,...,u_{N-1}; t, sum_u and u printed with 17 significant digits, err with 12.
void write_trace_csv(std::ostream& out, const FlowTrace& trace);
// `f v value` lines with 17 significant digits.
void write_factors(std::ostream& out, const ConformalState& state);

}  // namespace dcs
