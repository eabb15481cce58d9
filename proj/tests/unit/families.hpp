#pragma once

#include "orlab/enlargement.hpp"

// X = circle a (vertex 0, edge 0) and circle b (vertex 1, edge 1); e = edge 2
// from 1 to 0; R = e a e^-1 b.
inline orlab::TwoComplex two_circles() {
  orlab::TwoComplex x;
  x.vertices = {0, 1};
  x.edges[0] = {0, 0};
  x.edges[1] = {1, 1};
  return x;
}

inline std::vector<orlab::DirectedEdge> ab_relator() { return {{2, 1}, {0, 1}, {2, -1}, {1, 1}}; }

inline orlab::SimpleEnlargement ab_enlargement() {
  return orlab::build_simple_enlargement(two_circles(), {1, 0, 2}, ab_relator(), 0);
}

// X = circle a (vertex 0, edge 0); e = loop t (edge 1); R = a t a t^-1.
inline orlab::TwoComplex one_circle() {
  orlab::TwoComplex x;
  x.vertices = {0};
  x.edges[0] = {0, 0};
  return x;
}

inline std::vector<orlab::DirectedEdge> klein_relator() { return {{0, 1}, {1, 1}, {0, 1}, {1, -1}}; }

inline orlab::SimpleEnlargement klein_enlargement() {
  return orlab::build_simple_enlargement(one_circle(), {0, 0, 1}, klein_relator(), 0);
}

// Square disc lifting R = e a e^-1 b, its cell wrapped `degree` times.
// Edges: 0 over e (v0 -> v1), 1 over a, 2 over e (v3 -> v2), 3 over b.
inline orlab::CombMap square_disc(int degree) {
  orlab::CombMap f;
  f.target = ab_enlargement().complex;
  f.source.vertices = {0, 1, 2, 3};
  f.source.edges[0] = {0, 1};
  f.source.edges[1] = {1, 2};
  f.source.edges[2] = {3, 2};
  f.source.edges[3] = {3, 0};
  for (int k = 0; k < degree; ++k) {
    for (auto d : std::vector<orlab::DirectedEdge>{{0, 1}, {1, 1}, {2, -1}, {3, 1}}) {
      f.source.cells[0].edges.push_back(d);
    }
  }
  f.vertex_map = {{0, 1}, {1, 0}, {2, 0}, {3, 1}};
  f.edge_map = {{0, {2, 1}}, {1, {0, 1}}, {2, {2, 1}}, {3, {1, 1}}};
  f.cell_map[0] = {0, 0, degree};
  return f;
}
