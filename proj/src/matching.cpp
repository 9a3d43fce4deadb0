#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "graphtest/graphs.hpp"

// Edmonds' blossom algorithm for minimum-cost perfect matching on a
// complete graph, primal-dual formulation with reduced costs maintained
// per edge. Indices 0..n-1 are original vertices, n..2n-1 are blossoms.
// An edge is usable while its reduced cost (slack) is zero; a blossom is
// "blocked" while its dual is positive and then behaves like a vertex.

namespace graphtest::detail {

namespace {

constexpr int kUnlabeled = 0;
constexpr int kOdd = 1;
constexpr int kEven = 2;

class BlossomMatcher {
 public:
  explicit BlossomMatcher(const SquareMatrix& cost) : n_(static_cast<int>(cost.n)) {
    const int nb = 2 * n_;
    double maxabs = 0.0;
    for (double x : cost.v) maxabs = std::max(maxabs, std::fabs(x));
    eps_ = 1e-12 * (1.0 + maxabs);

    slack_.resize(static_cast<std::size_t>(n_) * (n_ - 1) / 2);
    double minw = cost.v.empty() ? 0.0 : cost(0, 1);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) minw = std::min(minw, cost(u, v));
    }
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) slack_[edge_index(u, v)] = cost(u, v) - minw;
    }

    outer_.resize(nb);
    deep_.resize(nb);
    shallow_.resize(nb);
    tip_.resize(nb);
    active_.resize(nb);
    type_.resize(nb);
    forest_.resize(nb);
    root_.resize(nb);
    blocked_.resize(nb);
    dual_.resize(nb);
    mate_.resize(nb);
    visited_.resize(nb);
    for (int i = 0; i < nb; ++i) {
      outer_[i] = i;
      deep_[i].clear();
      if (i < n_) deep_[i].push_back(i);
      shallow_[i].clear();
      tip_[i] = i;
      active_[i] = (i < n_);
      type_[i] = kUnlabeled;
      forest_[i] = -1;
      root_[i] = i;
      blocked_[i] = false;
      dual_[i] = 0.0;
      mate_[i] = -1;
    }
    free_.clear();
    for (int i = n_; i < nb; ++i) free_.push_back(i);
  }

  std::vector<int> solve() {
    const std::size_t max_rounds = 64 + 16 * static_cast<std::size_t>(n_) * n_;
    std::size_t rounds = 0;
    bool perfect = false;
    while (!perfect) {
      if (++rounds > max_rounds) {
        throw std::logic_error("blossom matching failed to converge");
      }
      heuristic();
      perfect = grow();
      update_duals();
      reset();
    }
    for (int i = 0; i < 2 * n_; ++i) {
      if (active_[i] && mate_[i] != -1 && outer_[i] == i) expand(i, true);
    }
    std::vector<int> result(mate_.begin(), mate_.begin() + n_);
    for (int v = 0; v < n_; ++v) {
      if (result[v] < 0 || result[v] >= n_ || result[result[v]] != v) {
        throw std::logic_error("blossom matching produced an inconsistent pairing");
      }
    }
    return result;
  }

 private:
  std::size_t edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n_ - (u + 1) * (u + 2) / 2 + v;
  }

  bool edge_blocked(int u, int v) const { return slack_[edge_index(u, v)] > eps_; }
  bool adjacent(int u, int v) const { return u != v && !edge_blocked(u, v); }

  int take_free_index() {
    const int i = free_.back();
    free_.pop_back();
    dual_[i] = 0.0;  // clear eps drift from a previous life
    return i;
  }

  // Greedy matching over tight edges for currently exposed top-level nodes.
  void heuristic() {
    std::vector<int> degree(n_, 0);
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (edge_blocked(u, v)) continue;
        ++degree[u];
        ++degree[v];
      }
    }
    for (int u = 0; u < n_; ++u) {
      if (mate_[outer_[u]] != -1) continue;
      int pick = -1;
      for (int v = 0; v < n_; ++v) {
        if (u == v || edge_blocked(u, v) || outer_[u] == outer_[v] ||
            mate_[outer_[v]] != -1) {
          continue;
        }
        if (pick == -1 || degree[v] < degree[pick]) pick = v;
      }
      if (pick != -1) {
        mate_[outer_[u]] = pick;
        mate_[outer_[pick]] = u;
      }
    }
  }

  // Grows the alternating forest over tight edges; returns true when the
  // matching became perfect.
  bool grow() {
    reset();
    while (!queue_.empty()) {
      const int w = outer_[queue_.back()];
      queue_.pop_back();
      bool restart = false;
      for (std::size_t di = 0; di < deep_[w].size() && !restart; ++di) {
        const int u = deep_[w][di];
        for (int v = 0; v < n_; ++v) {
          if (u == v || edge_blocked(u, v)) continue;
          if (type_[outer_[v]] == kOdd) continue;
          if (type_[outer_[v]] != kEven) {
            // Extend the tree through v and its mate.
            const int vm = mate_[outer_[v]];
            forest_[outer_[v]] = u;
            type_[outer_[v]] = kOdd;
            root_[outer_[v]] = root_[outer_[u]];
            forest_[outer_[vm]] = v;
            type_[outer_[vm]] = kEven;
            root_[outer_[vm]] = root_[outer_[u]];
            if (!visited_[outer_[vm]]) {
              queue_.push_back(vm);
              visited_[outer_[vm]] = true;
            }
          } else if (root_[outer_[v]] != root_[outer_[u]]) {
            augment(u, v);
            reset();
            restart = true;
            break;
          } else if (outer_[u] != outer_[v]) {
            const int b = make_blossom(u, v);
            queue_.push_back(b);
            visited_[b] = true;
            restart = true;
            break;
          }
        }
      }
    }
    for (int i = 0; i < n_; ++i) {
      if (mate_[outer_[i]] == -1) return false;
    }
    return true;
  }

  // Flips the matching along root(u) .. u - v .. root(v).
  void augment(int u, int v) {
    int p = outer_[u];
    int q = outer_[v];
    const int outv = q;
    int fp = forest_[p];
    mate_[p] = q;
    mate_[q] = p;
    expand(p, false);
    expand(q, false);
    while (fp != -1) {
      q = outer_[forest_[p]];
      p = outer_[forest_[q]];
      fp = forest_[p];
      mate_[p] = q;
      mate_[q] = p;
      expand(p, false);
      expand(q, false);
    }
    p = outv;
    fp = forest_[p];
    while (fp != -1) {
      q = outer_[forest_[p]];
      p = outer_[forest_[q]];
      fp = forest_[p];
      mate_[p] = q;
      mate_[q] = p;
      expand(p, false);
      expand(q, false);
    }
  }

  // Contracts the odd cycle through u and v (both even, same tree).
  int make_blossom(int u, int v) {
    const int t = take_free_index();

    std::vector<char> in_path(2 * n_, 0);
    int x = u;
    while (x != -1) {
      in_path[outer_[x]] = 1;
      x = forest_[outer_[x]];
    }
    int y = outer_[v];
    while (!in_path[y]) y = outer_[forest_[y]];
    tip_[t] = y;

    shallow_[t].clear();
    deep_[t].clear();
    std::vector<int> up;
    x = outer_[u];
    up.push_back(x);
    while (x != tip_[t]) {
      x = outer_[forest_[x]];
      up.push_back(x);
    }
    // cycle order: tip, ..., outer(u), outer(v), ..., child-of-tip
    shallow_[t].assign(up.rbegin(), up.rend());
    y = outer_[v];
    while (y != tip_[t]) {
      shallow_[t].push_back(y);
      y = outer_[forest_[y]];
    }

    for (int s : shallow_[t]) {
      outer_[s] = t;
      for (int z : deep_[s]) {
        deep_[t].push_back(z);
        outer_[z] = t;
      }
    }
    forest_[t] = forest_[tip_[t]];
    type_[t] = kEven;
    root_[t] = root_[tip_[t]];
    active_[t] = true;
    outer_[t] = t;
    mate_[t] = mate_[tip_[t]];
    return t;
  }

  // Undoes the contraction of an unmatched blossom (matching untouched:
  // the children's mates were never clobbered while contracted).
  void destroy(int t) {
    if (t < n_ || (blocked_[t] && dual_[t] > eps_)) return;
    for (int s : shallow_[t]) {
      outer_[s] = s;
      for (int z : deep_[s]) outer_[z] = s;
      destroy(s);
    }
    active_[t] = false;
    blocked_[t] = false;
    free_.push_back(t);
    mate_[t] = -1;
  }

  // Resolves the actual matched edge of a contracted node and, when it is
  // an unblocked blossom (or expand_blocked is set), opens it up and
  // re-mates the odd cycle.
  void expand(int u, bool expand_blocked) {
    const int v = outer_[mate_[u]];

    // The matched edge between u and v is the tight deep pair of minimum
    // edge index, so both sides independently agree on it.
    std::size_t index = slack_.size();
    int p = -1, q = -1;
    for (int du : deep_[u]) {
      for (int dv : deep_[v]) {
        if (adjacent(du, dv) && edge_index(du, dv) < index) {
          index = edge_index(du, dv);
          p = du;
          q = dv;
        }
      }
    }
    if (p == -1) throw std::logic_error("blossom matching: no tight matched edge");
    mate_[u] = q;
    mate_[v] = p;
    if (u < n_ || (blocked_[u] && !expand_blocked)) return;

    // Rotate the cycle so the sub-blossom containing p comes first.
    std::size_t pos = 0;
    for (; pos < shallow_[u].size(); ++pos) {
      const auto& dd = deep_[shallow_[u][pos]];
      if (std::find(dd.begin(), dd.end(), p) != dd.end()) break;
    }
    std::rotate(shallow_[u].begin(), shallow_[u].begin() + static_cast<std::ptrdiff_t>(pos),
                shallow_[u].end());

    auto& cyc = shallow_[u];
    mate_[cyc[0]] = mate_[u];
    for (std::size_t i = 1; i + 1 < cyc.size(); i += 2) {
      mate_[cyc[i]] = cyc[i + 1];
      mate_[cyc[i + 1]] = cyc[i];
    }

    for (int s : cyc) {
      outer_[s] = s;
      for (int z : deep_[s]) outer_[z] = s;
    }
    active_[u] = false;
    free_.push_back(u);

    for (int s : cyc) expand(s, expand_blocked);
  }

  // Rebuilds the forest roots; destroys contracted blossoms that no longer
  // pay their dual.
  void reset() {
    for (int i = 0; i < 2 * n_; ++i) {
      forest_[i] = -1;
      root_[i] = i;
      if (i >= n_ && active_[i] && outer_[i] == i) destroy(i);
    }
    std::fill(visited_.begin(), visited_.end(), 0);
    queue_.clear();
    for (int i = 0; i < n_; ++i) {
      if (mate_[outer_[i]] == -1) {
        type_[outer_[i]] = kEven;
        if (!visited_[outer_[i]]) {
          queue_.push_back(i);
          visited_[outer_[i]] = true;
        }
      } else {
        type_[outer_[i]] = kUnlabeled;
      }
    }
  }

  void update_duals() {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    bool has1 = false, has2 = false, has3 = false;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        const double s = slack_[edge_index(u, v)];
        const int tu = type_[outer_[u]];
        const int tv = type_[outer_[v]];
        if ((tu == kEven && tv == kUnlabeled) || (tv == kEven && tu == kUnlabeled)) {
          if (!has1 || e1 > s) {
            e1 = s;
            has1 = true;
          }
        } else if (outer_[u] != outer_[v] && tu == kEven && tv == kEven) {
          if (!has2 || e2 > s) {
            e2 = s;
            has2 = true;
          }
        }
      }
    }
    for (int i = n_; i < 2 * n_; ++i) {
      if (active_[i] && outer_[i] == i && type_[i] == kOdd && (!has3 || e3 > dual_[i])) {
        e3 = dual_[i];
        has3 = true;
      }
    }
    double e = 0.0;
    if (has1) {
      e = e1;
    } else if (has2) {
      e = e2;
    } else if (has3) {
      e = e3;
    }
    if (has2 && e > e2 / 2.0) e = e2 / 2.0;
    if (has3 && e > e3) e = e3;
    if (e < 0.0) e = 0.0;

    for (int i = 0; i < 2 * n_; ++i) {
      if (i != outer_[i] || !active_[i]) continue;
      if (type_[i] == kEven) {
        dual_[i] += e;
      } else if (type_[i] == kOdd) {
        dual_[i] -= e;
      }
    }
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (outer_[u] == outer_[v]) continue;
        const int tu = type_[outer_[u]];
        const int tv = type_[outer_[v]];
        double& s = slack_[edge_index(u, v)];
        if (tu == kEven && tv == kEven) {
          s -= 2.0 * e;
        } else if (tu == kOdd && tv == kOdd) {
          s += 2.0 * e;
        } else if ((tv == kUnlabeled && tu == kEven) || (tu == kUnlabeled && tv == kEven)) {
          s -= e;
        } else if ((tv == kUnlabeled && tu == kOdd) || (tu == kUnlabeled && tv == kOdd)) {
          s += e;
        }
      }
    }
    for (int i = n_; i < 2 * n_; ++i) {
      if (dual_[i] > eps_) {
        blocked_[i] = true;
      } else if (active_[i] && blocked_[i]) {
        if (mate_[i] == -1) {
          destroy(i);
        } else {
          blocked_[i] = false;
          expand(i, false);
        }
      }
    }
  }

  int n_;
  double eps_ = 1e-12;
  std::vector<double> slack_;
  std::vector<std::vector<int>> deep_;
  std::vector<std::vector<int>> shallow_;
  std::vector<int> outer_, tip_, type_, forest_, root_, mate_, free_, queue_;
  std::vector<char> active_, blocked_, visited_;
  std::vector<double> dual_;
};

}  // namespace

std::vector<int> min_cost_perfect_matching(const SquareMatrix& cost) {
  if (cost.n < 2 || cost.n % 2 != 0) {
    throw std::invalid_argument("min_cost_perfect_matching needs an even number of vertices");
  }
  if (cost.n == 2) return {1, 0};
  return BlossomMatcher(cost).solve();
}

}  // namespace graphtest::detail
