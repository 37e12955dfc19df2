#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

namespace dcs {

using Face = std::array<int, 3>;

// Unordered vertex pair stored as (min, max).
struct EdgeKey {
  int a = 0;
  int b = 0;

  EdgeKey() = default;
  EdgeKey(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

// Closed connected triangulated surface. Faces are unoriented vertex triples;
// adjacency is derived once at construction and the object is immutable after.
class TriangulatedSurface {
 public:
  // Throws Error with BadIndex, DegenerateFace, NonManifoldEdge or Disconnected.
  static TriangulatedSurface build(int vertex_count, std::vector<Face> faces);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_.at(static_cast<std::size_t>(f)); }
  const std::vector<EdgeKey>& edges() const { return edges_; }

  // Index of edge {u, v}; throws BadIndex when the pair is not an edge.
  int edge_index(int u, int v) const;
  bool has_edge(int u, int v) const;

  // face_edges(f)[q] is the edge opposite corner q of face f.
  const std::array<int, 3>& face_edges(int f) const { return face_edges_.at(static_cast<std::size_t>(f)); }
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_.at(static_cast<std::size_t>(v)); }
  const std::array<int, 2>& edge_faces(int e) const { return edge_faces_.at(static_cast<std::size_t>(e)); }
  std::vector<int> vertex_neighbors(int v) const;

  // Position of vertex v inside face f, or -1.
  int corner_of(int f, int v) const;

  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

 private:
  TriangulatedSurface() = default;

  int vertex_count_ = 0;
  std::vector<Face> faces_;
  std::vector<EdgeKey> edges_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::array<int, 2>> edge_faces_;
};

int euler_characteristic(const TriangulatedSurface& surface);

// Standard closed test surfaces.
TriangulatedSurface make_tetrahedron();
TriangulatedSurface make_octahedron();
TriangulatedSurface make_icosahedron();
// rows x cols vertex grid on a torus, each quad split along one diagonal.
TriangulatedSurface make_torus(int rows, int cols);

}  // namespace dcs
