#pragma once

#include <map>
#include <set>
#include <vector>

namespace riemsimplex {

using Simplex = std::vector<int>;  // sorted vertex indices

// Finite abstract simplicial complex, closed under taking faces.
class AbstractComplex {
 public:
  AbstractComplex() = default;
  // Builds the face closure of the given simplices.
  AbstractComplex(int vertex_count, const std::vector<Simplex>& simplices);

  int vertex_count() const { return vertex_count_; }
  int dimension() const { return dimension_; }
  const std::set<Simplex>& simplices() const { return simplices_; }
  std::vector<Simplex> simplices_of_dimension(int d) const;
  // Simplices that are not a proper face of another simplex.
  std::vector<Simplex> maximal_simplices() const;
  bool contains(const Simplex& s) const;
  std::size_t size() const { return simplices_.size(); }

  AbstractComplex star(int p) const;
  AbstractComplex link(int p) const;
  long euler_characteristic() const;
  bool is_pure() const;

 private:
  void check_vertex(int p) const;

  int vertex_count_ = 0;
  int dimension_ = -1;
  std::set<Simplex> simplices_;
  std::map<int, std::vector<Simplex>> cofaces_;  // maximal simplices containing each vertex
};

struct ManifoldReport {
  int dimension = -1;
  bool pure = false;
  bool closed_pseudomanifold = false;
  bool links_checked = false;
  bool links_ok = false;
  std::vector<int> bad_link_vertices;
  long euler_characteristic = 0;
  bool is_manifold() const { return pure && closed_pseudomanifold && (!links_checked || links_ok); }
};
ManifoldReport is_manifold_complex(const AbstractComplex& a);

bool is_closed_pseudomanifold(const AbstractComplex& a);
bool is_connected(const AbstractComplex& a);

}  // namespace riemsimplex
