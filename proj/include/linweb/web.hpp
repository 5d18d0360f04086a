#ifndef LINWEB_WEB_HPP
#define LINWEB_WEB_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linweb/term.hpp"

namespace linweb {

enum class EdgeLabel : uint8_t { Or = 0, And = 1 };

// Complete {&,|}-edge-labelled graph over a duplicate-free sorted vertex
// set. For constant-free negation-free linear terms this is the relation
// web: each edge carries the least common connective of its endpoints.
struct RelationWeb {
  std::vector<std::string> vertices; // sorted, unique
  std::vector<uint8_t> matrix;       // n*n, diagonal unused

  RelationWeb() = default;
  explicit RelationWeb(std::vector<std::string> verts);

  size_t size() const { return vertices.size(); }
  size_t index_of(const std::string& v) const;
  EdgeLabel at(size_t i, size_t j) const {
    return static_cast<EdgeLabel>(matrix[i * vertices.size() + j]);
  }
  void set(size_t i, size_t j, EdgeLabel l) {
    matrix[i * vertices.size() + j] = static_cast<uint8_t>(l);
    matrix[j * vertices.size() + i] = static_cast<uint8_t>(l);
  }

  friend bool operator==(const RelationWeb& a, const RelationWeb& b) {
    return a.vertices == b.vertices && a.matrix == b.matrix;
  }
};

// Arbitrary labelled complete graph, same shape as a web but with no
// P4-freeness expectation.
using LabelledGraph = RelationWeb;

// Web of a constant-free negation-free linear term. Throws
// std::invalid_argument when the precondition fails.
RelationWeb web_of(const Term& t);

struct EdgeCounts {
  size_t e_and = 0;
  size_t e_or = 0;
};
EdgeCounts edge_counts(const RelationWeb& w);

// Four vertices inducing the forbidden configuration: the &-edges of the
// quadruple form the path p0-p1-p2-p3 and all other pairs are |-edges.
struct P4Witness {
  std::array<std::string, 4> path;
};
std::optional<P4Witness> find_p4(const RelationWeb& w);
bool is_p4_free(const RelationWeb& w);

// Inverse of web_of up to AC: cotree reconstruction. Throws
// std::invalid_argument carrying the witness when the graph is not P4-free.
Term term_of_web(const RelationWeb& w);

// All maximal cliques under one label, each sorted, family sorted by
// (size, lex). Plain branch-and-bound with pivoting; fine at desk scale.
std::vector<std::vector<std::string>> max_cliques(const RelationWeb& w, EdgeLabel label);

std::string web_to_json(const RelationWeb& w);
RelationWeb web_from_json(const std::string& text);
std::string web_to_dot(const RelationWeb& w);

} // namespace linweb

#endif
