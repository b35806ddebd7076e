#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riemsimplex/complex.hpp"
#include "riemsimplex/model_manifold.hpp"

namespace riemsimplex {

struct GeneratedMesh {
  ModelManifold manifold = ModelManifold::euclidean(2);
  std::vector<Vec> points;
  AbstractComplex complex;
  std::string name;
};

// Subdivided icosahedron projected onto S^2(radius); level m has 10*4^m + 2 vertices.
GeneratedMesh icosahedron_sphere(int level, double radius = 1.0);
GeneratedMesh octahedron_sphere(int level = 0, double radius = 1.0);
// Grid of N points per axis on the flat torus, each cube cut into d! simplices.
GeneratedMesh grid_torus(int n_per_axis, std::vector<double> periods);
// Moves every vertex to exp of a random tangent vector of length at most `magnitude`.
GeneratedMesh perturbed(const GeneratedMesh& mesh, double magnitude, std::uint64_t seed);

}  // namespace riemsimplex
