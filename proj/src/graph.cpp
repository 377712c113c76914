#include "sqperc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace sqperc {

VertexPair PairIndexer::decode(PairId id) const {
  if (id.index >= pair_count()) throw std::out_of_range("PairId out of range");
  // Row u starts at u(2n-u-1)/2; invert the quadratic, then fix rounding.
  const double nn = static_cast<double>(n_);
  const double k = static_cast<double>(id.index);
  double disc = (2 * nn - 1) * (2 * nn - 1) - 8 * k;
  auto u = static_cast<std::uint64_t>(std::max(0.0, std::floor(((2 * nn - 1) - std::sqrt(disc)) / 2)));
  while (u > 0 && row_offset(static_cast<Vertex>(u)) > id.index) --u;
  while (u + 1 < n_ && row_offset(static_cast<Vertex>(u + 1)) <= id.index) ++u;
  const std::uint64_t v = u + 1 + (id.index - row_offset(static_cast<Vertex>(u)));
  VertexPair p;
  p.u = static_cast<Vertex>(u);
  p.v = static_cast<Vertex>(v);
  return p;
}

Graph::Graph(std::size_t n)
    : n_(n), words_(Bitset::word_count(n)), adj_(n * Bitset::word_count(n), 0) {
  if (n > std::numeric_limits<Vertex>::max()) throw std::invalid_argument("graph too large");
}

VertexSet Graph::neighbors(Vertex v) const { return Bitset::from_words(n_, row(v)); }

std::size_t Graph::degree(Vertex v) const {
  std::size_t d = 0;
  for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < n_; ++u) {
    const auto r = row(u);
    for (std::size_t wi = u / 64; wi < words_; ++wi) {
      auto w = r[wi];
      if (wi == u / 64) w &= ~((Bitset::Word{2} << (u % 64)) - 1);
      while (w) {
        VertexPair p;
        p.u = u;
        p.v = static_cast<Vertex>(wi * 64 + std::countr_zero(w));
        out.push_back(p);
        w &= w - 1;
      }
    }
  }
  return out;
}

GraphBuilder::GraphBuilder(std::size_t n) : g_(n) {}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u >= g_.n_ || v >= g_.n_) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  auto& wu = g_.adj_[std::size_t{u} * g_.words_ + v / 64];
  const auto bit = Bitset::Word{1} << (v % 64);
  if (wu & bit) return;
  wu |= bit;
  g_.adj_[std::size_t{v} * g_.words_ + u / 64] |= Bitset::Word{1} << (u % 64);
  ++g_.edge_count_;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const { return g_.has_edge(u, v); }

Graph GraphBuilder::build() && { return std::move(g_); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Parses exactly two non-negative integers separated by whitespace.
bool parse_two(std::string_view s, std::uint64_t& a, std::uint64_t& b) {
  auto read = [&](std::uint64_t& out) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr == s.data()) return false;
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return true;
  };
  if (!read(a)) return false;
  if (s.empty() || (s.front() != ' ' && s.front() != '\t')) return false;
  if (!read(b)) return false;
  return trim(s).empty();
}

}  // namespace

Graph from_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0, m = 0, seen = 0;
  std::optional<GraphBuilder> builder;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::uint64_t a = 0, b = 0;
    if (!parse_two(line, a, b))
      throw ParseError(line_no, have_header ? "expected \"u v\"" : "expected header \"n m\"");
    if (!have_header) {
      if (a > std::numeric_limits<Vertex>::max()) throw ParseError(line_no, "vertex count too large");
      n = a;
      m = b;
      have_header = true;
      builder.emplace(static_cast<std::size_t>(n));
      continue;
    }
    if (seen == m) throw ParseError(line_no, "more edge lines than the header's m=" + std::to_string(m));
    if (a >= n || b >= n)
      throw ParseError(line_no, "vertex out of range (n=" + std::to_string(n) + ")");
    if (a == b) throw ParseError(line_no, "self-loop " + std::to_string(a) + " " + std::to_string(b));
    builder->add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    ++seen;
  }
  if (!have_header) throw ParseError(std::max<std::size_t>(line_no, 1), "missing header \"n m\"");
  if (seen != m)
    throw ParseError(line_no, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(seen));
  return std::move(*builder).build();
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph from_edges(std::size_t n, std::span<const VertexPair> edges) {
  GraphBuilder b(n);
  for (const auto& e : edges) b.add_edge(e.u, e.v);
  return std::move(b).build();
}

Graph complement(const Graph& g) {
  const std::size_t n = g.vertex_count();
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) b.add_edge(u, v);
  return std::move(b).build();
}

VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.vertex_count() || v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("common_neighbors needs distinct vertices");
  VertexSet out(g.vertex_count());
  auto ru = g.row(u), rv = g.row(v);
  auto w = out.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ru[i] & rv[i];
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  if (keep.size() != g.vertex_count()) throw std::invalid_argument("vertex set size mismatch");
  InducedSubgraph out;
  out.to_original = keep.to_vector<Vertex>();
  const std::size_t k = out.to_original.size();
  GraphBuilder b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.has_edge(out.to_original[i], out.to_original[j]))
        b.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  out.graph = std::move(b).build();
  return out;
}

bool is_clique(const Graph& g, const VertexSet& vertices) {
  const auto vs = vertices.to_vector<Vertex>();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!g.has_edge(vs[i], vs[j])) return false;
  return true;
}

bool is_complete(const Graph& g) {
  const std::uint64_t n = g.vertex_count();
  return g.edge_count() == n * (n ? n - 1 : 0) / 2;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  VertexSet unseen(n);
  unseen.set_all();
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (!unseen.test(s)) continue;
    std::vector<Vertex> comp;
    unseen.reset(s);
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      const auto r = g.row(x);
      auto uw = unseen.words();
      for (std::size_t wi = 0; wi < uw.size(); ++wi) {
        auto w = r[wi] & uw[wi];
        uw[wi] &= ~w;
        while (w) {
          stack.push_back(static_cast<Vertex>(wi * 64 + std::countr_zero(w)));
          w &= w - 1;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace named {

Graph empty(std::size_t n) { return Graph(n); }

Graph complete(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

Graph cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) b.add_edge(u, static_cast<Vertex>((u + 1) % n));
  return std::move(b).build();
}

Graph path(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u + 1 < n; ++u) b.add_edge(u, u + 1);
  return std::move(b).build();
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  GraphBuilder gb(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) gb.add_edge(u, static_cast<Vertex>(a + v));
  return std::move(gb).build();
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
  const auto n1 = g1.vertex_count();
  GraphBuilder b(n1 + g2.vertex_count());
  for (const auto& e : g1.edges()) b.add_edge(e.u, e.v);
  for (const auto& e : g2.edges())
    b.add_edge(static_cast<Vertex>(e.u + n1), static_cast<Vertex>(e.v + n1));
  return std::move(b).build();
}

Graph join(const Graph& g1, const Graph& g2) {
  const auto n1 = g1.vertex_count(), n2 = g2.vertex_count();
  GraphBuilder b(n1 + n2);
  for (const auto& e : g1.edges()) b.add_edge(e.u, e.v);
  for (const auto& e : g2.edges())
    b.add_edge(static_cast<Vertex>(e.u + n1), static_cast<Vertex>(e.v + n1));
  for (Vertex u = 0; u < n1; ++u)
    for (Vertex v = 0; v < n2; ++v) b.add_edge(u, static_cast<Vertex>(v + n1));
  return std::move(b).build();
}

}  // namespace named

}  // namespace sqperc
