#include "linweb/web.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace linweb {

RelationWeb::RelationWeb(std::vector<std::string> verts) {
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end())
    throw std::invalid_argument("web: duplicate vertex");
  vertices = std::move(verts);
  matrix.assign(vertices.size() * vertices.size(), 0);
}

size_t RelationWeb::index_of(const std::string& v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v)
    throw std::invalid_argument("web: unknown vertex " + v);
  return static_cast<size_t>(it - vertices.begin());
}

namespace {

void label_pairs(const Term& t, RelationWeb& w) {
  if (t->kind != TermKind::And && t->kind != TermKind::Or) return;
  label_pairs(t->left, w);
  label_pairs(t->right, w);
  EdgeLabel l = t->kind == TermKind::And ? EdgeLabel::And : EdgeLabel::Or;
  for (const auto& a : var_occurrences(t->left))
    for (const auto& b : var_occurrences(t->right))
      w.set(w.index_of(a.name), w.index_of(b.name), l);
}

} // namespace

RelationWeb web_of(const Term& t) {
  if (!is_linear(t)) throw std::invalid_argument("web_of: term is not linear");
  if (!is_constant_free(t)) throw std::invalid_argument("web_of: term has constants");
  if (!is_negation_free(t)) throw std::invalid_argument("web_of: term has negative variables");
  RelationWeb w(term_var_names(t));
  label_pairs(t, w);
  return w;
}

EdgeCounts edge_counts(const RelationWeb& w) {
  EdgeCounts c;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      (w.at(i, j) == EdgeLabel::And ? c.e_and : c.e_or)++;
  return c;
}

std::optional<P4Witness> find_p4(const RelationWeb& w) {
  const size_t n = w.size();
  auto conn = [&](size_t a, size_t b) { return w.at(a, b) == EdgeLabel::And; };
  // On four vertices of a complete labelled graph, the forbidden pattern is
  // exactly "the &-edges form a path"; scan quadruples in lex order and try
  // each as the middle pair of the path.
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      for (size_t c = b + 1; c < n; ++c)
        for (size_t d = c + 1; d < n; ++d) {
          std::array<size_t, 4> q{a, b, c, d};
          std::sort(q.begin(), q.end());
          do {
            auto [p0, p1, p2, p3] = std::tuple{q[0], q[1], q[2], q[3]};
            if (p0 > p3) continue; // one orientation per path
            if (conn(p0, p1) && conn(p1, p2) && conn(p2, p3) &&
                !conn(p0, p2) && !conn(p0, p3) && !conn(p1, p3)) {
              return P4Witness{{w.vertices[p0], w.vertices[p1],
                                w.vertices[p2], w.vertices[p3]}};
            }
          } while (std::next_permutation(q.begin(), q.end()));
        }
  return std::nullopt;
}

bool is_p4_free(const RelationWeb& w) { return !find_p4(w).has_value(); }

namespace {

// Connected components of the subgraph restricted to `verts` keeping only
// `label`-edges.
std::vector<std::vector<size_t>> components(const RelationWeb& w,
                                            const std::vector<size_t>& verts,
                                            EdgeLabel label) {
  std::vector<std::vector<size_t>> comps;
  std::set<size_t> todo(verts.begin(), verts.end());
  while (!todo.empty()) {
    std::vector<size_t> comp;
    std::vector<size_t> stack{*todo.begin()};
    todo.erase(todo.begin());
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto it = todo.begin(); it != todo.end();) {
        if (w.at(v, *it) == label) {
          stack.push_back(*it);
          it = todo.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Term cotree(const RelationWeb& w, const std::vector<size_t>& verts) {
  if (verts.size() == 1) return mk_var(w.vertices[verts[0]]);
  auto and_comps = components(w, verts, EdgeLabel::And);
  if (and_comps.size() > 1) {
    std::vector<Term> parts;
    for (const auto& c : and_comps) parts.push_back(cotree(w, c));
    return rebuild(TermKind::Or, parts);
  }
  auto or_comps = components(w, verts, EdgeLabel::Or);
  if (or_comps.size() > 1) {
    std::vector<Term> parts;
    for (const auto& c : or_comps) parts.push_back(cotree(w, c));
    return rebuild(TermKind::And, parts);
  }
  // both restrictions connected: a P4 must be present
  throw std::invalid_argument("term_of_web: graph is not P4-free");
}

} // namespace

Term term_of_web(const RelationWeb& w) {
  if (w.size() == 0) throw std::invalid_argument("term_of_web: empty vertex set");
  if (auto wit = find_p4(w))
    throw std::invalid_argument("term_of_web: graph is not P4-free, witness " +
                                wit->path[0] + "," + wit->path[1] + "," +
                                wit->path[2] + "," + wit->path[3]);
  std::vector<size_t> all(w.size());
  for (size_t i = 0; i < w.size(); ++i) all[i] = i;
  return ac_canonical(cotree(w, all));
}

namespace {

void bron_kerbosch(const RelationWeb& w, EdgeLabel label, uint64_t r, uint64_t p,
                   uint64_t x, const std::vector<uint64_t>& adj,
                   std::vector<uint64_t>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  uint64_t px = p | x;
  size_t pivot = static_cast<size_t>(std::countr_zero(px));
  uint64_t best = adj[pivot];
  // pivot to minimise branching
  for (uint64_t m = px; m;) {
    size_t v = static_cast<size_t>(std::countr_zero(m));
    m &= m - 1;
    if (std::popcount(p & adj[v]) > std::popcount(p & best)) {
      pivot = v;
      best = adj[v];
    }
  }
  uint64_t cand = p & ~adj[pivot];
  while (cand) {
    size_t v = static_cast<size_t>(std::countr_zero(cand));
    cand &= cand - 1;
    uint64_t vb = 1ull << v;
    bron_kerbosch(w, label, r | vb, p & adj[v], x & adj[v], adj, out);
    p &= ~vb;
    x |= vb;
  }
}

} // namespace

std::vector<std::vector<std::string>> max_cliques(const RelationWeb& w, EdgeLabel label) {
  const size_t n = w.size();
  if (n > 63) throw std::invalid_argument("max_cliques: too many vertices");
  if (n == 0) return {};
  std::vector<uint64_t> adj(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && w.at(i, j) == label) adj[i] |= 1ull << j;
  std::vector<uint64_t> raw;
  bron_kerbosch(w, label, 0, (1ull << n) - 1, 0, adj, raw);
  std::vector<std::vector<std::string>> out;
  for (uint64_t m : raw) {
    std::vector<std::string> clique;
    for (uint64_t b = m; b;) {
      size_t v = static_cast<size_t>(std::countr_zero(b));
      b &= b - 1;
      clique.push_back(w.vertices[v]);
    }
    out.push_back(std::move(clique));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::string web_to_json(const RelationWeb& w) {
  nlohmann::json j;
  j["vertices"] = w.vertices;
  auto edges = nlohmann::json::array();
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j2 = i + 1; j2 < w.size(); ++j2)
      if (w.at(i, j2) == EdgeLabel::And)
        edges.push_back({w.vertices[i], w.vertices[j2]});
  j["and_edges"] = edges;
  return j.dump();
}

RelationWeb web_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  RelationWeb w(j.at("vertices").get<std::vector<std::string>>());
  for (const auto& e : j.at("and_edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("web json: and_edges entries must be pairs");
    w.set(w.index_of(e[0].get<std::string>()), w.index_of(e[1].get<std::string>()),
          EdgeLabel::And);
  }
  return w;
}

std::string web_to_dot(const RelationWeb& w) {
  std::ostringstream os;
  os << "graph web {\n";
  for (const auto& v : w.vertices) os << "  \"" << v << "\";\n";
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t j = i + 1; j < w.size(); ++j)
      os << "  \"" << w.vertices[i] << "\" -- \"" << w.vertices[j] << "\" [style="
         << (w.at(i, j) == EdgeLabel::And ? "solid" : "dashed") << "];\n";
  os << "}\n";
  return os.str();
}

} // namespace linweb
