#include "riemsimplex/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "riemsimplex/error.hpp"

namespace riemsimplex {

namespace {

bool is_face_of(const Simplex& small, const Simplex& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

int find_root(std::map<int, int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

bool is_combinatorial_sphere(const AbstractComplex& l, int d);

bool links_are_spheres(const AbstractComplex& a, int n, std::vector<int>* bad) {
  bool ok = true;
  for (const auto& v : a.simplices_of_dimension(0)) {
    if (!is_combinatorial_sphere(a.link(v[0]), n - 1)) {
      ok = false;
      if (bad) bad->push_back(v[0]);
      else return false;
    }
  }
  return ok;
}

bool is_combinatorial_sphere(const AbstractComplex& l, int d) {
  if (d == 0) return l.size() == 2 && l.dimension() == 0;
  if (l.dimension() != d || !is_closed_pseudomanifold(l) || !is_connected(l)) return false;
  if (d == 2 && l.euler_characteristic() != 2) return false;
  return links_are_spheres(l, d, nullptr);
}

}  // namespace

AbstractComplex::AbstractComplex(int vertex_count, const std::vector<Simplex>& simplices)
    : vertex_count_(vertex_count) {
  if (vertex_count < 0) throw Error(ErrorCode::BadParams, "negative vertex count");
  std::set<Simplex> inputs;
  for (const auto& raw : simplices) {
    if (raw.empty()) continue;
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw Error(ErrorCode::BadParams, "simplex repeats a vertex");
    if (s.front() < 0 || s.back() >= vertex_count)
      throw Error(ErrorCode::UnknownVertex, "simplex index out of range");
    if (s.size() > 20) throw Error(ErrorCode::DimensionUnsupported, "simplex dimension too large");
    inputs.insert(std::move(s));
  }
  for (const auto& s : inputs) {
    const std::size_t m = s.size();
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) f.push_back(s[i]);
      simplices_.insert(std::move(f));
    }
    dimension_ = std::max(dimension_, static_cast<int>(m) - 1);
  }
  std::map<int, std::vector<const Simplex*>> incident;
  for (const auto& s : inputs)
    for (int v : s) incident[v].push_back(&s);
  for (const auto& s : inputs) {
    bool maximal = true;
    for (const Simplex* other : incident[s.front()])
      if (other->size() > s.size() && is_face_of(s, *other)) {
        maximal = false;
        break;
      }
    if (maximal)
      for (int v : s) cofaces_[v].push_back(s);
  }
}

std::vector<Simplex> AbstractComplex::simplices_of_dimension(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
  return out;
}

std::vector<Simplex> AbstractComplex::maximal_simplices() const {
  std::set<Simplex> out;
  for (const auto& [v, list] : cofaces_) out.insert(list.begin(), list.end());
  return {out.begin(), out.end()};
}

bool AbstractComplex::contains(const Simplex& s) const {
  Simplex t = s;
  std::sort(t.begin(), t.end());
  return simplices_.count(t) > 0;
}

void AbstractComplex::check_vertex(int p) const {
  if (!simplices_.count(Simplex{p})) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(p) + " is not in the complex");
}

AbstractComplex AbstractComplex::star(int p) const {
  check_vertex(p);
  return AbstractComplex(vertex_count_, cofaces_.at(p));
}

AbstractComplex AbstractComplex::link(int p) const {
  check_vertex(p);
  std::vector<Simplex> rest;
  for (const auto& s : cofaces_.at(p)) {
    Simplex t;
    for (int v : s)
      if (v != p) t.push_back(v);
    if (!t.empty()) rest.push_back(std::move(t));
  }
  return AbstractComplex(vertex_count_, rest);
}

long AbstractComplex::euler_characteristic() const {
  long chi = 0;
  for (const auto& s : simplices_) chi += (s.size() % 2 == 1) ? 1 : -1;
  return chi;
}

bool AbstractComplex::is_pure() const {
  for (const auto& s : maximal_simplices())
    if (static_cast<int>(s.size()) - 1 != dimension_) return false;
  return dimension_ >= 0;
}

bool is_closed_pseudomanifold(const AbstractComplex& a) {
  const int n = a.dimension();
  if (n < 1 || !a.is_pure()) return false;
  std::map<Simplex, int> count;
  for (const auto& s : a.simplices_of_dimension(n))
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
      ++count[f];
    }
  for (const auto& f : a.simplices_of_dimension(n - 1))
    if (count[f] != 2) return false;
  return true;
}

bool is_connected(const AbstractComplex& a) {
  std::map<int, int> parent;
  for (const auto& v : a.simplices_of_dimension(0)) parent[v[0]] = v[0];
  if (parent.empty()) return false;
  for (const auto& e : a.simplices_of_dimension(1)) {
    const int r0 = find_root(parent, e[0]), r1 = find_root(parent, e[1]);
    if (r0 != r1) parent[r0] = r1;
  }
  const int root = find_root(parent, parent.begin()->first);
  for (auto& [v, _] : parent)
    if (find_root(parent, v) != root) return false;
  return true;
}

ManifoldReport is_manifold_complex(const AbstractComplex& a) {
  ManifoldReport r;
  r.dimension = a.dimension();
  r.pure = a.is_pure();
  r.closed_pseudomanifold = is_closed_pseudomanifold(a);
  r.euler_characteristic = a.euler_characteristic();
  if (r.dimension >= 1 && r.dimension <= 3) {
    r.links_checked = true;
    r.links_ok = links_are_spheres(a, r.dimension, &r.bad_link_vertices);
  }
  return r;
}

}  // namespace riemsimplex
