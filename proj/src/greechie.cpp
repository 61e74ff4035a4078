#include "omlkit/greechie.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "text_util.hpp"

namespace omlkit {

namespace {

bool bad_atom_name(const std::string& s) {
  return s == "0" || s == "1" || s.front() == '~' || s.find('|') != std::string::npos ||
         s.find(',') != std::string::npos || s.front() == '(';
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
}

std::vector<std::size_t> shared_atoms(const std::vector<std::size_t>& a,
                                      const std::vector<std::size_t>& b) {
  std::vector<std::size_t> sa(a), sb(b), out;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

GreechieDiagram parse_greechie(std::string_view text) {
  GreechieDiagram d;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::size_t> block_line;
  auto lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto toks = detail::tokenize(lines[ln]);
    if (toks.empty()) continue;
    std::vector<std::size_t> block;
    for (const auto& tok : toks) {
      if (bad_atom_name(tok.text))
        throw detail::parse_error(ln + 1, tok.column, "reserved atom name '" + tok.text + "'");
      auto it = index.find(tok.text);
      std::size_t id;
      if (it == index.end()) {
        id = d.atoms.size();
        index.emplace(tok.text, id);
        d.atoms.push_back(tok.text);
      } else {
        id = it->second;
      }
      if (std::find(block.begin(), block.end(), id) != block.end())
        throw detail::parse_error(ln + 1, tok.column, "atom '" + tok.text + "' repeated in block");
      block.push_back(id);
    }
    d.blocks.push_back(std::move(block));
    block_line.push_back(ln + 1);
  }
  if (d.blocks.empty()) throw detail::parse_error(1, 1, "diagram has no blocks");
  for (std::size_t b = 0; b < d.blocks.size(); ++b)
    if (d.blocks[b].size() < 2)
      throw Error(Errc::SingletonBlock,
                  "line " + std::to_string(block_line[b]) + ": block has a single atom", {b});
  for (std::size_t i = 0; i < d.blocks.size(); ++i)
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
      if (i == j) continue;
      if (is_subset(d.blocks[i], d.blocks[j]) &&
          (d.blocks[i].size() < d.blocks[j].size() || i > j))
        throw Error(Errc::BlockSubsumed,
                    "block on line " + std::to_string(block_line[i]) +
                        " is contained in block on line " + std::to_string(block_line[j]),
                    {i, j});
    }
  return d;
}

std::string render_greechie(const GreechieDiagram& d) {
  std::ostringstream os;
  for (const auto& block : d.blocks) {
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " " : "") << d.atoms[block[i]];
    os << '\n';
  }
  return os.str();
}

std::optional<std::vector<std::size_t>> find_short_loop(const GreechieDiagram& d) {
  const std::size_t m = d.blocks.size();
  // shared[i][j]: the single shared atom, if any
  std::vector<std::vector<std::optional<std::size_t>>> shared(
      m, std::vector<std::optional<std::size_t>>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto s = shared_atoms(d.blocks[i], d.blocks[j]);
      if (s.size() >= 2) return std::vector<std::size_t>{i, j};
      if (s.size() == 1) shared[i][j] = shared[j][i] = s[0];
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!shared[i][j]) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        if (!shared[j][k] || !shared[k][i]) continue;
        std::set<std::size_t> atoms{*shared[i][j], *shared[j][k], *shared[k][i]};
        if (atoms.size() == 3) return std::vector<std::size_t>{i, j, k};
      }
    }
  // 4-cycles i-j-k-l with i the smallest index and j < l
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!shared[i][j]) continue;
      for (std::size_t k = i + 1; k < m; ++k) {
        if (k == j || !shared[j][k]) continue;
        for (std::size_t l = j + 1; l < m; ++l) {
          if (l == k || !shared[k][l] || !shared[l][i]) continue;
          std::set<std::size_t> atoms{*shared[i][j], *shared[j][k], *shared[k][l], *shared[l][i]};
          if (atoms.size() == 4) return std::vector<std::size_t>{i, j, k, l};
        }
      }
    }
  return std::nullopt;
}

std::size_t pasted_size(const GreechieDiagram& d) {
  std::size_t total = 0;
  std::vector<std::size_t> degree(d.atoms.size(), 0);
  for (const auto& block : d.blocks) {
    total += std::size_t{1} << block.size();
    for (std::size_t a : block) ++degree[a];
  }
  total -= 2 * (d.blocks.size() - 1);
  for (std::size_t deg : degree) total -= 2 * (deg - 1);
  return total;
}

LatticePtr paste(const GreechieDiagram& d, const Limits& limits) {
  if (auto loop = find_short_loop(d)) {
    std::string msg = "blocks";
    for (std::size_t b : *loop) msg += " " + std::to_string(b);
    msg += loop->size() == 2 ? " share two atoms" : " form a loop of order " + std::to_string(loop->size());
    throw Error(Errc::LoopViolation, msg, *loop);
  }
  // b ∖ {shared} would be a single atom equal to a join in the other block
  for (std::size_t i = 0; i < d.blocks.size(); ++i)
    for (std::size_t j = 0; j < d.blocks.size(); ++j)
      if (i != j && d.blocks[i].size() == 2 &&
          std::any_of(d.blocks[i].begin(), d.blocks[i].end(), [&](std::size_t a) {
            return std::find(d.blocks[j].begin(), d.blocks[j].end(), a) != d.blocks[j].end();
          }))
        throw Error(Errc::BlockSubsumed,
                    "two-atom block " + std::to_string(i) + " shares an atom with block " + std::to_string(j) +
                        " and collapses into it",
                    {i, j});
  const std::size_t cap = std::min(limits.element_cap, Limits::kHardElementCap);
  for (const auto& block : d.blocks)
    if (block.size() >= 16) throw Error(Errc::SizeCap, "block with 2^" + std::to_string(block.size()) + " elements");
  if (pasted_size(d) > cap)
    throw Error(Errc::SizeCap, "pasting has " + std::to_string(pasted_size(d)) + " elements, cap " +
                                   std::to_string(cap));

  const std::size_t m = d.blocks.size();
  std::vector<std::size_t> offset(m + 1, 0);
  for (std::size_t b = 0; b < m; ++b) offset[b + 1] = offset[b] + (std::size_t{1} << d.blocks[b].size());
  const std::size_t raw = offset[m];
  auto full = [&](std::size_t b) { return (std::size_t{1} << d.blocks[b].size()) - 1; };
  auto node = [&](std::size_t b, std::size_t mask) { return offset[b] + mask; };

  DisjointSets sets(raw);
  for (std::size_t b = 1; b < m; ++b) {
    sets.unite(node(0, 0), node(b, 0));
    sets.unite(node(0, full(0)), node(b, full(b)));
  }
  // first occurrence (block, position) of each atom
  std::vector<std::pair<std::size_t, std::size_t>> first(d.atoms.size(), {m, 0});
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t p = 0; p < d.blocks[b].size(); ++p) {
      auto& f = first[d.blocks[b][p]];
      if (f.first == m) {
        f = {b, p};
        continue;
      }
      const std::size_t fb = f.first, fp = f.second;
      sets.unite(node(fb, std::size_t{1} << fp), node(b, std::size_t{1} << p));
      sets.unite(node(fb, full(fb) ^ (std::size_t{1} << fp)), node(b, full(b) ^ (std::size_t{1} << p)));
    }

  // element classes in canonical order
  struct ClassInfo {
    bool is_one = false;
    std::size_t min_rank = SIZE_MAX;
    std::size_t first_node = SIZE_MAX;
    std::string name;
    int name_priority = 4;
  };
  std::map<std::size_t, ClassInfo> classes;
  auto join_name = [&](std::size_t b, std::size_t mask) {
    std::string s;
    for (std::size_t p = 0; p < d.blocks[b].size(); ++p)
      if (mask >> p & 1) s += (s.empty() ? "" : "|") + d.atoms[d.blocks[b][p]];
    return s;
  };
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t mask = 0; mask <= full(b); ++mask) {
      const std::size_t id = node(b, mask);
      auto& info = classes[sets.find(id)];
      const std::size_t rank = static_cast<std::size_t>(std::popcount(mask));
      const std::size_t corank = d.blocks[b].size() - rank;
      if (mask == full(b)) info.is_one = true;
      info.min_rank = std::min(info.min_rank, rank);
      info.first_node = std::min(info.first_node, id);
      int priority;
      std::string name;
      if (mask == 0) {
        priority = 0, name = "0";
      } else if (mask == full(b)) {
        priority = 0, name = "1";
      } else if (rank == 1) {
        priority = 1, name = join_name(b, mask);
      } else if (corank == 1) {
        priority = 2, name = "~" + join_name(b, full(b) ^ mask);
      } else {
        priority = 3, name = join_name(b, mask);
      }
      if (priority < info.name_priority) {
        info.name_priority = priority;
        info.name = std::move(name);
      }
    }
  std::vector<std::pair<std::tuple<bool, std::size_t, std::size_t>, std::size_t>> order;
  for (const auto& [root, info] : classes)
    order.push_back({{info.is_one, info.min_rank, info.first_node}, root});
  std::sort(order.begin(), order.end());
  std::map<std::size_t, Element> element_of;
  OmlCandidate c;
  for (const auto& [key, root] : order) {
    element_of[root] = static_cast<Element>(c.names.size());
    c.names.push_back(classes[root].name);
  }
  const std::size_t n = c.names.size();
  if (n > cap) throw Error(Errc::SizeCap, "pasting has " + std::to_string(n) + " elements");

  std::vector<boost::dynamic_bitset<>> up(n, boost::dynamic_bitset<>(n));
  std::vector<std::optional<Element>> neg(n);
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t s = 0; s <= full(b); ++s) {
      const Element x = element_of[sets.find(node(b, s))];
      const Element cx = element_of[sets.find(node(b, full(b) ^ s))];
      if (neg[x] && *neg[x] != cx)
        throw Error(Errc::NotOrtho, "pasting identifies complements inconsistently at " + c.names[x], {x});
      neg[x] = cx;
      // supersets of s within the block
      const std::size_t rest = full(b) ^ s;
      for (std::size_t t = rest;; t = (t - 1) & rest) {
        up[x].set(element_of[sets.find(node(b, s | t))]);
        if (t == 0) break;
      }
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (up[a][k]) up[a] |= up[k];
  c.leq.assign(n, std::vector<bool>(n, false));
  c.neg.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    c.neg[a] = *neg[a];
    for (std::size_t b = 0; b < n; ++b) c.leq[a][b] = up[a][b];
  }
  return make_lattice(c, limits);
}

LatticePtr boolean_algebra(std::size_t n) {
  if (n == 0) throw Error(Errc::Degenerate, "2^0 has 0 = 1");
  if (n == 1) return two_element_lattice();
  GreechieDiagram d;
  d.blocks.emplace_back();
  for (std::size_t i = 0; i < n; ++i) {
    d.atoms.push_back("a" + std::to_string(i + 1));
    d.blocks[0].push_back(i);
  }
  return paste(d);
}

LatticePtr mo_lattice(std::size_t n) {
  if (n == 0) throw Error(Errc::Degenerate, "MO0 is not defined");
  GreechieDiagram d;
  for (std::size_t i = 0; i < n; ++i) {
    d.atoms.push_back("a" + std::to_string(i + 1));
    d.atoms.push_back("b" + std::to_string(i + 1));
    d.blocks.push_back({2 * i, 2 * i + 1});
  }
  return paste(d);
}

}  // namespace omlkit
