#include "arlab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "arlab/errors.hpp"
#include "arlab/morphism.hpp"

namespace arlab {

namespace {

std::string_view key_of(const Letter* data, std::size_t off, std::size_t n) {
  return std::string_view(reinterpret_cast<const char*>(data + off), n);
}

}  // namespace

FactorSet::FactorSet(const ARWordPrefix& p, std::size_t n)
    : FactorSet(p, n, p.size()) {}

FactorSet::FactorSet(const ARWordPrefix& p, std::size_t n, std::size_t limit)
    : buffer_(p.buffer),
      d_(p.directive.alphabet_size()),
      n_(n),
      limit_(std::min(limit, p.size())) {
  if (n_ > limit_) {
    throw std::invalid_argument("factor length " + std::to_string(n_) +
                                " exceeds scanned length " +
                                std::to_string(limit_));
  }
  if (limit_ >= static_cast<std::size_t>(UINT32_MAX)) {
    throw std::domain_error("buffer too large for 32-bit occurrence indexing");
  }
  const Letter* data = buffer_->data();
  const std::size_t positions = limit_ - n_ + 1;
  index_.reserve(positions / 2 + 8);
  for (std::size_t j = 0; j < positions; ++j) {
    auto [it, inserted] =
        index_.try_emplace(key_of(data, j, n_),
                           static_cast<std::uint32_t>(entries_.size()));
    if (inserted) entries_.emplace_back();
    Entry& e = entries_[it->second];
    e.occ.push_back(static_cast<std::uint32_t>(j));
    if (j > 0) e.lmask |= std::uint64_t{1} << data[j - 1];
    if (j + n_ < limit_) e.rmask |= std::uint64_t{1} << data[j + n_];
  }
}

std::size_t FactorSet::find(std::span<const Letter> factor) const {
  if (factor.size() != n_) return npos;
  auto it = index_.find(
      std::string_view(reinterpret_cast<const char*>(factor.data()), n_));
  return it == index_.end() ? npos : it->second;
}

std::span<const std::uint32_t> FactorSet::occurrences(std::size_t idx) const {
  return entries_[idx].occ;
}

std::span<const Letter> FactorSet::factor_view(std::size_t idx) const {
  return std::span<const Letter>(buffer_->data() + entries_[idx].occ.front(),
                                 n_);
}

FiniteWord FactorSet::factor(std::size_t idx) const {
  return FiniteWord(d_, factor_view(idx));
}

std::uint64_t FactorSet::left_mask(std::size_t idx) const {
  return entries_[idx].lmask;
}

std::uint64_t FactorSet::right_mask(std::size_t idx) const {
  return entries_[idx].rmask;
}

int FactorSet::left_degree(std::size_t idx) const {
  return std::popcount(entries_[idx].lmask);
}

int FactorSet::right_degree(std::size_t idx) const {
  return std::popcount(entries_[idx].rmask);
}

bool FactorSet::occurs_within(std::size_t idx, std::uint32_t lo,
                              std::uint32_t hi) const {
  const auto& occ = entries_[idx].occ;
  auto it = std::lower_bound(occ.begin(), occ.end(), lo);
  return it != occ.end() && *it <= hi;
}

FactorSet factor_set(const ARWordPrefix& p, std::size_t n) {
  return FactorSet(p, n);
}

std::size_t factor_complexity(const ARWordPrefix& p, std::size_t n) {
  return FactorSet(p, n).count();
}

SpecialFactors special_factors(const ARWordPrefix& p, std::size_t n) {
  auto compute = [n](const ARWordPrefix& q, std::size_t limit) {
    FactorSet fs(q, n, limit);
    SpecialFactors out;
    for (std::size_t i = 0; i < fs.count(); ++i) {
      if (fs.left_special(i)) out.left.push_back(fs.factor(i));
      if (fs.right_special(i)) out.right.push_back(fs.factor(i));
    }
    std::sort(out.left.begin(), out.left.end());
    std::sort(out.right.begin(), out.right.end());
    return out;
  };
  auto [value, stable] = detail::stabilize(p, n + 1, compute);
  if (!stable) {
    throw InstabilityError("special factors of length " + std::to_string(n) +
                           " did not stabilize within the budget");
  }
  return value;
}

BispecialRecord bispecial(const DirectiveSequence& ds, std::size_t k,
                          std::size_t budget) {
  ds.require_valid_ar();
  const int d = ds.alphabet_size();
  BispecialRecord rec;
  rec.k = k;
  rec.d = d;

  // Parikh vector of B(k): V <- M_{i_j} V + e_{i_j} for j = k-1 .. 0, where
  // M_{phi_i} V only replaces component i by the total of V.
  std::vector<Int> v(d, Int(0));
  for (std::size_t j = k; j-- > 0;) {
    Letter i = ds.letter(j);
    Int total = 0;
    for (const Int& c : v) total += c;
    v[i] = total + 1;
  }
  rec.length = std::accumulate(v.begin(), v.end(), Int(0));

  // |psi_k(a)| via the incidence length recurrence.
  std::vector<Int> lengths(d, Int(1));
  for (std::size_t j = 0; j < k; ++j) {
    Letter i = ds.letter(j);
    for (int b = 0; b < d; ++b) {
      if (b != int(i)) lengths[b] += lengths[i];
    }
  }
  rec.return_word_lengths = lengths;

  if (rec.length <= Int(budget)) {
    FiniteWord b(d);
    for (std::size_t j = k; j-- > 0;) {
      Letter i = ds.letter(j);
      b = elementary_morphism(i, d).apply(b);
      b.push_back(i);
    }
    rec.factor = std::move(b);
  }

  Int total_return_len = std::accumulate(lengths.begin(), lengths.end(), Int(0));
  if (total_return_len <= Int(budget)) {
    std::vector<FiniteWord> returns;
    returns.reserve(d);
    for (int a = 0; a < d; ++a) {
      FiniteWord r(d, {a});
      for (std::size_t j = k; j-- > 0;) {
        r = elementary_morphism(ds.letter(j), d).apply(r);
      }
      returns.push_back(std::move(r));
    }
    rec.return_words = std::move(returns);
  }
  return rec;
}

std::set<FiniteWord> return_words_bruteforce(const ARWordPrefix& p,
                                             const FiniteWord& w) {
  const int d = p.directive.alphabet_size();
  if (w.alphabet_size() != d) {
    throw std::domain_error("factor over mismatched alphabet");
  }
  FactorSet fs(p, w.size());
  std::size_t idx = fs.find(w.view());
  if (idx == FactorSet::npos || fs.occurrences(idx).size() < 2) {
    throw std::invalid_argument(
        "factor must occur at least twice in the buffer");
  }
  auto occ = fs.occurrences(idx);
  const Letter* data = p.buffer->data();
  std::set<FiniteWord> out;
  for (std::size_t t = 0; t + 1 < occ.size(); ++t) {
    out.insert(FiniteWord(
        d, std::span<const Letter>(data + occ[t], occ[t + 1] - occ[t])));
  }
  return out;
}

DerivedWord derived_word(const ARWordPrefix& p0, const FiniteWord& w,
                         std::size_t coding_length) {
  const int d = p0.directive.alphabet_size();
  if (w.alphabet_size() != d) {
    throw std::domain_error("base word over mismatched alphabet");
  }

  ARWordPrefix p = grow(
      p0, std::min(std::max<std::size_t>(p0.size(), 2 * w.size() + 2),
                   p0.budget));
  if (p.size() < w.size() ||
      !std::equal(w.begin(), w.end(), p.view().begin())) {
    throw std::invalid_argument("base word is not a prefix of the buffer");
  }

  const std::size_t wn = w.size();
  std::vector<std::size_t> occ;
  for (;;) {
    occ.clear();
    const Letter* data = p.buffer->data();
    if (wn == 0) {
      occ.resize(p.size() + 1);
      std::iota(occ.begin(), occ.end(), std::size_t{0});
    } else {
      for (std::size_t j = 0; j + wn <= p.size(); ++j) {
        if (std::memcmp(data + j, w.symbols().data(), wn) == 0) {
          occ.push_back(j);
        }
      }
    }
    if (occ.size() >= coding_length + 1) break;
    if (p.size() >= p.budget) {
      throw InstabilityError("buffer budget too small for a coding of length " +
                             std::to_string(coding_length));
    }
    p = grow(p, std::min(2 * p.size(), p.budget));
  }

  DerivedWord out{w, FiniteWord(d), {}};
  const Letter* data = p.buffer->data();
  std::unordered_map<std::string_view, Letter> ids;
  for (std::size_t t = 0; t < coding_length; ++t) {
    std::size_t len = occ[t + 1] - occ[t];
    std::string_view key = key_of(data, occ[t], len);
    auto it = ids.find(key);
    if (it == ids.end()) {
      if (static_cast<int>(ids.size()) >= d) {
        throw std::logic_error("more than d distinct return words observed");
      }
      Letter id = static_cast<Letter>(ids.size());
      ids.emplace(key, id);
      out.return_words.push_back(
          FiniteWord(d, std::span<const Letter>(data + occ[t], len)));
      out.coding.push_back(id);
    } else {
      out.coding.push_back(it->second);
    }
  }
  return out;
}

std::span<const Letter> RauzyGraph::vertex_view(std::size_t idx) const {
  return std::span<const Letter>(buffer->data() + vertices[idx].first_occurrence,
                                 n);
}

std::string RauzyGraph::vertex_label(std::size_t idx) const {
  const Vertex& v = vertices[idx];
  std::string label;
  if (n == 0) {
    label = "\xce\xb5";  // epsilon
  } else if (n <= 32) {
    label = format_symbols(vertex_view(idx), d);
  } else {
    label = "len=" + std::to_string(n) + "@" +
            std::to_string(v.first_occurrence);
  }
  if (v.left_special && v.right_special) {
    label += " B";
  } else if (v.left_special) {
    label += " L";
  } else if (v.right_special) {
    label += " R";
  }
  return label;
}

int RauzyGraph::out_degree(std::size_t idx) const {
  int deg = 0;
  for (const Edge& e : edges) deg += (e.from == idx);
  return deg;
}

int RauzyGraph::in_degree(std::size_t idx) const {
  int deg = 0;
  for (const Edge& e : edges) deg += (e.to == idx);
  return deg;
}

std::string RauzyGraph::to_dot() const {
  std::string out = "digraph rauzy {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out += "  v" + std::to_string(i) + " [label=\"" + vertex_label(i) +
           "\"];\n";
  }
  for (const Edge& e : edges) {
    out += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) +
           ";\n";
  }
  out += "}\n";
  return out;
}

namespace {

bool vertex_eq(const RauzyGraph::Vertex& a, const RauzyGraph::Vertex& b) {
  return a.first_occurrence == b.first_occurrence &&
         a.left_special == b.left_special && a.right_special == b.right_special;
}

bool graph_eq(const RauzyGraph& a, const RauzyGraph& b) {
  if (a.n != b.n || a.d != b.d ||
      a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size())
    return false;
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    if (!vertex_eq(a.vertices[i], b.vertices[i])) return false;
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].from != b.edges[i].from || a.edges[i].to != b.edges[i].to ||
        a.edges[i].first_occurrence != b.edges[i].first_occurrence)
      return false;
  }
  return true;
}

struct ComparableGraph {
  RauzyGraph graph;
  friend bool operator==(const ComparableGraph& x, const ComparableGraph& y) {
    return graph_eq(x.graph, y.graph);
  }
};

ComparableGraph build_rauzy(const ARWordPrefix& q, std::size_t n,
                            std::size_t limit) {
  FactorSet fn(q, n, limit);
  FactorSet fn1(q, n + 1, limit);

  std::vector<std::uint32_t> order(fn.count());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto va = fn.factor_view(a), vb = fn.factor_view(b);
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(),
                                        vb.end());
  });
  std::vector<std::uint32_t> rank(fn.count());
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  RauzyGraph g;
  g.n = n;
  g.d = fn.alphabet_size();
  g.buffer = q.buffer;
  g.vertices.reserve(fn.count());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    std::size_t idx = order[i];
    g.vertices.push_back({fn.occurrences(idx).front(), fn.left_special(idx),
                          fn.right_special(idx)});
  }

  std::vector<std::uint32_t> edge_order(fn1.count());
  std::iota(edge_order.begin(), edge_order.end(), 0u);
  std::sort(edge_order.begin(), edge_order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              auto va = fn1.factor_view(a), vb = fn1.factor_view(b);
              return std::lexicographical_compare(va.begin(), va.end(),
                                                  vb.begin(), vb.end());
            });
  for (std::uint32_t idx : edge_order) {
    auto view = fn1.factor_view(idx);
    std::size_t from = fn.find(view.first(n));
    std::size_t to = fn.find(view.subspan(1));
    if (from == FactorSet::npos || to == FactorSet::npos) {
      throw std::logic_error("edge endpoints missing from the factor set");
    }
    g.edges.push_back({rank[from], rank[to], fn1.occurrences(idx).front()});
  }
  return ComparableGraph{std::move(g)};
}

}  // namespace

RauzyGraph rauzy_graph(const ARWordPrefix& p, std::size_t n) {
  auto compute = [n](const ARWordPrefix& q, std::size_t limit) {
    return build_rauzy(q, n, limit);
  };
  auto [value, stable] = detail::stabilize(p, n + 2, compute);
  if (!stable) {
    throw InstabilityError("Rauzy graph of order " + std::to_string(n) +
                           " did not stabilize within the budget");
  }
  return std::move(value.graph);
}

ArCycleDecomposition ar_cycles(const RauzyGraph& g) {
  const std::size_t nv = g.vertices.size();
  if (nv == 0) throw std::runtime_error("empty Rauzy graph");
  std::vector<int> indeg(nv, 0), outdeg(nv, 0);
  std::vector<std::vector<std::size_t>> adj(nv);
  for (const auto& e : g.edges) {
    ++outdeg[e.from];
    ++indeg[e.to];
    adj[e.from].push_back(e.to);
  }

  std::size_t alpha = nv, beta = nv;
  for (std::size_t v = 0; v < nv; ++v) {
    if (outdeg[v] == g.d) {
      if (beta != nv) throw std::runtime_error("two out-branching vertices");
      beta = v;
    } else if (outdeg[v] != 1) {
      throw std::runtime_error("vertex with out-degree neither 1 nor d");
    }
    if (indeg[v] == g.d) {
      if (alpha != nv) throw std::runtime_error("two in-branching vertices");
      alpha = v;
    } else if (indeg[v] != 1) {
      throw std::runtime_error("vertex with in-degree neither 1 nor d");
    }
  }
  if (alpha == nv || beta == nv) {
    throw std::runtime_error("missing branching vertex");
  }

  ArCycleDecomposition out;
  out.alpha = alpha;
  out.beta = beta;

  if (alpha == beta) {
    out.common_path_vertices = 1;
  } else {
    std::size_t cur = alpha, steps = 1;
    while (cur != beta) {
      if (adj[cur].size() != 1) {
        throw std::runtime_error("branching inside the common path");
      }
      cur = adj[cur][0];
      ++steps;
      if (steps > nv) throw std::runtime_error("common path does not close");
    }
    out.common_path_vertices = steps;
  }

  std::size_t interior_total = 0;
  for (std::size_t t : adj[beta]) {
    std::size_t interior = 0;
    std::size_t cur = t;
    while (cur != alpha) {
      ++interior;
      if (adj[cur].size() != 1) {
        throw std::runtime_error("branching inside a cycle arm");
      }
      cur = adj[cur][0];
      if (interior > nv) throw std::runtime_error("cycle arm does not close");
    }
    interior_total += interior;
    out.cycle_sizes.push_back(interior + out.common_path_vertices);
  }
  if (interior_total + out.common_path_vertices != nv) {
    throw std::runtime_error("cycle arms do not cover the graph");
  }
  std::sort(out.cycle_sizes.begin(), out.cycle_sizes.end());
  return out;
}

namespace {

RauzySpecialReport rauzy_special_scan(const ARWordPrefix& q, std::size_t n,
                                      std::size_t limit) {
  FactorSet fn(q, n, limit);
  const std::size_t positions = limit - n + 1;

  // Previous-occurrence table from the exact occurrence lists.
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> prev(positions, kNone);
  std::vector<std::uint32_t> cid(positions, 0);
  for (std::size_t c = 0; c < fn.count(); ++c) {
    auto occ = fn.occurrences(c);
    for (std::size_t t = 0; t < occ.size(); ++t) {
      cid[occ[t]] = static_cast<std::uint32_t>(c);
      if (t > 0) prev[occ[t]] = occ[t - 1];
    }
  }

  std::vector<std::uint32_t> left(positions, 0);
  std::size_t m = 0;
  std::uint32_t lo = 0;
  for (std::size_t j = 0; j < positions; ++j) {
    if (prev[j] != kNone && prev[j] + 1 > lo) lo = prev[j] + 1;
    left[j] = lo;
    m = std::max(m, j - lo + 1);
  }

  RauzySpecialReport rep;
  if (m != fn.count()) {
    rep.applicable = false;
    rep.detail = "nrC(n) = " + std::to_string(m) + " < C(n) = " +
                 std::to_string(fn.count());
    return rep;
  }
  rep.applicable = true;

  // Designated window: smallest h >= 1 whose endpoint factors satisfy the
  // window lemma inside the buffer.
  std::size_t h_found = positions;
  for (std::size_t h = 1; h + m < positions; ++h) {
    if (left[h + m - 1] > h) continue;
    std::size_t rs = cid[h - 1], ls = cid[h + m];
    if (!fn.right_special(rs) || !fn.left_special(ls)) continue;
    if (!fn.occurs_within(rs, static_cast<std::uint32_t>(h),
                          static_cast<std::uint32_t>(h + m - 1)) ||
        !fn.occurs_within(ls, static_cast<std::uint32_t>(h),
                          static_cast<std::uint32_t>(h + m - 1)))
      continue;
    h_found = h;
    break;
  }
  if (h_found == positions) {
    rep.holds = false;
    rep.detail = "no qualifying window certificate in the buffer";
    return rep;
  }

  const std::size_t rs_endpoint = cid[h_found - 1];
  const std::size_t ls_endpoint = cid[h_found + m];
  rep.holds = true;
  for (std::size_t c = 0; c < fn.count(); ++c) {
    auto view = fn.factor_view(c);
    if (c != rs_endpoint) {
      // Successors sb for each right extension b; all but one left special.
      int bad = 0;
      for (int b = 0; b < fn.alphabet_size(); ++b) {
        if (!(fn.right_mask(c) >> b & 1)) continue;
        std::vector<Letter> succ(view.begin() + 1, view.end());
        succ.push_back(static_cast<Letter>(b));
        std::size_t s = fn.find(succ);
        if (s == FactorSet::npos || !fn.left_special(s)) ++bad;
      }
      if (bad > 1) {
        rep.holds = false;
        rep.detail = "factor " + format_symbols(view, fn.alphabet_size()) +
                     " has " + std::to_string(bad) +
                     " non-left-special successors";
        return rep;
      }
    }
    if (c != ls_endpoint) {
      int bad = 0;
      for (int b = 0; b < fn.alphabet_size(); ++b) {
        if (!(fn.left_mask(c) >> b & 1)) continue;
        std::vector<Letter> pred;
        pred.reserve(view.size());
        pred.push_back(static_cast<Letter>(b));
        pred.insert(pred.end(), view.begin(), view.end() - 1);
        std::size_t s = fn.find(pred);
        if (s == FactorSet::npos || !fn.right_special(s)) ++bad;
      }
      if (bad > 1) {
        rep.holds = false;
        rep.detail = "factor " + format_symbols(view, fn.alphabet_size()) +
                     " has " + std::to_string(bad) +
                     " non-right-special predecessors";
        return rep;
      }
    }
  }
  rep.detail = "window start " + std::to_string(h_found);
  return rep;
}

}  // namespace

RauzySpecialReport check_rauzy_special_property(const ARWordPrefix& p,
                                                std::size_t n) {
  if (n == 0) throw std::domain_error("order must be at least 1");
  auto compute = [n](const ARWordPrefix& q, std::size_t limit) {
    return rauzy_special_scan(q, n, limit);
  };
  auto [value, stable] = detail::stabilize(p, n + 2, compute);
  if (!stable) {
    throw InstabilityError("Rauzy special property check did not stabilize");
  }
  return value;
}

}  // namespace arlab
