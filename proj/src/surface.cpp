#include "dcs/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "dcs/errors.hpp"

namespace dcs {

namespace {

std::string face_string(int f, const Face& face) {
  return "face " + std::to_string(f) + " (" + std::to_string(face[0]) + "," + std::to_string(face[1]) + "," +
         std::to_string(face[2]) + ")";
}

}  // namespace

TriangulatedSurface TriangulatedSurface::build(int vertex_count, std::vector<Face> faces) {
  if (vertex_count <= 0) throw Error(ErrorCode::InvalidArgument, "vertex count must be positive");
  if (faces.empty()) throw Error(ErrorCode::InvalidArgument, "face list is empty");

  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int v : faces[f]) {
      if (v < 0 || v >= vertex_count) {
        throw Error(ErrorCode::BadIndex, face_string(static_cast<int>(f), faces[f]) + " references vertex " +
                                             std::to_string(v) + " outside [0," + std::to_string(vertex_count) + ")");
      }
    }
    const Face& t = faces[f];
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorCode::DegenerateFace, face_string(static_cast<int>(f), t) + " repeats a vertex");
    }
  }

  TriangulatedSurface s;
  s.vertex_count_ = vertex_count;
  s.faces_ = std::move(faces);

  // Deterministic edge numbering: order of first appearance.
  std::map<EdgeKey, int> index;
  std::vector<std::vector<int>> incident;
  s.face_edges_.resize(s.faces_.size());
  for (std::size_t f = 0; f < s.faces_.size(); ++f) {
    const Face& t = s.faces_[f];
    for (int q = 0; q < 3; ++q) {
      EdgeKey key(t[(q + 1) % 3], t[(q + 2) % 3]);
      auto [it, inserted] = index.try_emplace(key, static_cast<int>(s.edges_.size()));
      if (inserted) {
        s.edges_.push_back(key);
        incident.emplace_back();
      }
      s.face_edges_[f][static_cast<std::size_t>(q)] = it->second;
      incident[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(f));
    }
  }

  s.edge_faces_.resize(s.edges_.size());
  for (std::size_t e = 0; e < s.edges_.size(); ++e) {
    if (incident[e].size() != 2) {
      throw Error(ErrorCode::NonManifoldEdge, "edge {" + std::to_string(s.edges_[e].a) + "," +
                                                  std::to_string(s.edges_[e].b) + "} has " +
                                                  std::to_string(incident[e].size()) + " incident faces");
    }
    s.edge_faces_[e] = {incident[e][0], incident[e][1]};
  }

  s.vertex_faces_.assign(static_cast<std::size_t>(vertex_count), {});
  for (std::size_t f = 0; f < s.faces_.size(); ++f) {
    for (int v : s.faces_[f]) s.vertex_faces_[static_cast<std::size_t>(v)].push_back(static_cast<int>(f));
  }
  for (int v = 0; v < vertex_count; ++v) {
    if (s.vertex_faces_[static_cast<std::size_t>(v)].empty()) {
      throw Error(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " belongs to no face");
    }
  }

  // Face-adjacency connectivity by flood fill across shared edges.
  std::vector<char> seen(s.faces_.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int e : s.face_edges_[static_cast<std::size_t>(f)]) {
      for (int g : s.edge_faces_[static_cast<std::size_t>(e)]) {
        if (!seen[static_cast<std::size_t>(g)]) {
          seen[static_cast<std::size_t>(g)] = 1;
          ++reached;
          stack.push_back(g);
        }
      }
    }
  }
  if (reached != s.faces_.size()) {
    throw Error(ErrorCode::Disconnected, "face adjacency graph has more than one component (" +
                                             std::to_string(reached) + " of " + std::to_string(s.faces_.size()) +
                                             " faces reachable from face 0)");
  }
  return s;
}

bool TriangulatedSurface::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_ || u == v) return false;
  EdgeKey key(u, v);
  for (int f : vertex_faces_[static_cast<std::size_t>(u)]) {
    for (int e : face_edges_[static_cast<std::size_t>(f)]) {
      if (edges_[static_cast<std::size_t>(e)] == key) return true;
    }
  }
  return false;
}

int TriangulatedSurface::edge_index(int u, int v) const {
  if (u >= 0 && v >= 0 && u < vertex_count_ && v < vertex_count_ && u != v) {
    EdgeKey key(u, v);
    for (int f : vertex_faces_[static_cast<std::size_t>(u)]) {
      for (int e : face_edges_[static_cast<std::size_t>(f)]) {
        if (edges_[static_cast<std::size_t>(e)] == key) return e;
      }
    }
  }
  throw Error(ErrorCode::BadIndex, "{" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge");
}

std::vector<int> TriangulatedSurface::vertex_neighbors(int v) const {
  std::vector<int> out;
  for (int f : vertex_faces(v)) {
    for (int w : faces_[static_cast<std::size_t>(f)]) {
      if (w != v) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int TriangulatedSurface::corner_of(int f, int v) const {
  const Face& t = face(f);
  for (int q = 0; q < 3; ++q) {
    if (t[static_cast<std::size_t>(q)] == v) return q;
  }
  return -1;
}

int euler_characteristic(const TriangulatedSurface& surface) { return surface.euler_characteristic(); }

TriangulatedSurface make_tetrahedron() {
  return TriangulatedSurface::build(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

TriangulatedSurface make_octahedron() {
  // 0/5 are the poles, 1..4 the equator.
  return TriangulatedSurface::build(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                        {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}});
}

TriangulatedSurface make_icosahedron() {
  return TriangulatedSurface::build(
      12, {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
           {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
           {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}});
}

TriangulatedSurface make_torus(int rows, int cols) {
  if (rows < 3 || cols < 3) throw Error(ErrorCode::InvalidArgument, "torus grid needs at least 3x3 vertices");
  auto id = [&](int r, int c) { return ((r + rows) % rows) * cols + (c + cols) % cols; };
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>(2 * rows * cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      faces.push_back({id(r, c), id(r, c + 1), id(r + 1, c + 1)});
      faces.push_back({id(r, c), id(r + 1, c + 1), id(r + 1, c)});
    }
  }
  return TriangulatedSurface::build(rows * cols, std::move(faces));
}

}  // namespace dcs
