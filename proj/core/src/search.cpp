#include "search.hpp"

#include <algorithm>
#include <cstdint>

namespace natdual::detail {
namespace {

std::uint64_t encode(const Tuple& t, std::uint64_t base) {
  std::uint64_t code = 0;
  for (Elem e : t) code = code * base + static_cast<std::uint64_t>(e);
  return code;
}

struct RelIndex {
  int arity = 0;
  const std::vector<Tuple>* tuples = nullptr;
  std::vector<std::vector<int>> by_elem;
  std::vector<std::uint64_t> target_codes;
};

class Engine {
 public:
  Engine(const SearchProblem& p, const std::function<bool(const std::vector<Elem>&)>& visit)
      : p_(p), visit_(visit), assign_(static_cast<std::size_t>(p.n), -1),
        used_(static_cast<std::size_t>(p.m), 0) {
    for (const auto& r : p.rels) {
      RelIndex idx;
      idx.arity = r.arity;
      idx.tuples = r.source;
      idx.by_elem.assign(static_cast<std::size_t>(p.n), {});
      for (std::size_t i = 0; i < r.source->size(); ++i) {
        Tuple seen;
        for (Elem e : (*r.source)[i]) {
          if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
          seen.push_back(e);
          idx.by_elem[static_cast<std::size_t>(e)].push_back(static_cast<int>(i));
        }
      }
      for (const auto& t : *r.target) idx.target_codes.push_back(encode(t, static_cast<std::uint64_t>(p.m)));
      std::sort(idx.target_codes.begin(), idx.target_codes.end());
      rels_.push_back(std::move(idx));
    }
    if (!p.candidates.empty()) {
      allowed_.assign(static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.m), 0);
      for (int a = 0; a < p.n; ++a)
        for (Elem b : p.candidates[static_cast<std::size_t>(a)]) allowed_[idx(a, b)] = 1;
    }
  }

  void run() {
    bool ok = true;
    for (const auto& [a, b] : p_.forced) ok = ok && set(a, b);
    for (const auto& op : p_.ops) {
      if (op.arity != 0 || !ok) continue;
      Elem r = (*op.source)[0];
      if (r < 0) continue;
      Elem v = (*op.target)[0];
      ok = v >= 0 && set(r, v);
    }
    if (!ok || !propagate()) return;
    dfs();
  }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(p_.m) + static_cast<std::size_t>(b);
  }

  bool set(Elem a, Elem b) {
    Elem cur = assign_[static_cast<std::size_t>(a)];
    if (cur == b) return true;
    if (cur != -1) return false;
    if (!allowed_.empty() && !allowed_[idx(a, b)]) return false;
    if (p_.injective && used_[static_cast<std::size_t>(b)]) return false;
    assign_[static_cast<std::size_t>(a)] = b;
    used_[static_cast<std::size_t>(b)] = 1;
    trail_.push_back(a);
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Elem a = trail_.back();
      trail_.pop_back();
      used_[static_cast<std::size_t>(assign_[static_cast<std::size_t>(a)])] = 0;
      assign_[static_cast<std::size_t>(a)] = -1;
    }
    if (cursor_ > trail_.size()) cursor_ = trail_.size();
  }

  // Checks every operation tuple that contains `e` at least once and whose
  // other arguments are assigned. Position `first` holds the first
  // occurrence of e, so earlier positions range over the trail minus e.
  bool check_ops(Elem e) {
    for (const auto& op : p_.ops) {
      if (op.arity == 0) continue;
      args_.assign(static_cast<std::size_t>(op.arity), 0);
      for (int first = 0; first < op.arity; ++first) {
        if (!fill(op, e, first, 0)) return false;
      }
    }
    return true;
  }

  bool fill(const SearchOp& op, Elem e, int first, int pos) {
    if (pos == op.arity) return apply(op);
    if (pos == first) {
      args_[static_cast<std::size_t>(pos)] = e;
      return fill(op, e, first, pos + 1);
    }
    // Snapshot the size: propagation may append to the trail while we iterate.
    std::size_t count = trail_.size();
    for (std::size_t i = 0; i < count; ++i) {
      Elem x = trail_[i];
      if (pos < first && x == e) continue;
      args_[static_cast<std::size_t>(pos)] = x;
      if (!fill(op, e, first, pos + 1)) return false;
    }
    return true;
  }

  bool apply(const SearchOp& op) {
    std::size_t si = 0;
    std::size_t ti = 0;
    for (Elem a : args_) {
      si = si * static_cast<std::size_t>(p_.n) + static_cast<std::size_t>(a);
      ti = ti * static_cast<std::size_t>(p_.m) + static_cast<std::size_t>(assign_[static_cast<std::size_t>(a)]);
    }
    Elem r = (*op.source)[si];
    if (r < 0) return true;
    Elem v = (*op.target)[ti];
    if (v < 0) return false;
    return set(r, v);
  }

  bool check_rels(Elem e) {
    for (const auto& rel : rels_) {
      for (int ti : rel.by_elem[static_cast<std::size_t>(e)]) {
        const Tuple& t = (*rel.tuples)[static_cast<std::size_t>(ti)];
        std::uint64_t code = 0;
        bool complete = true;
        for (Elem x : t) {
          Elem y = assign_[static_cast<std::size_t>(x)];
          if (y < 0) {
            complete = false;
            break;
          }
          code = code * static_cast<std::uint64_t>(p_.m) + static_cast<std::uint64_t>(y);
        }
        if (complete && !std::binary_search(rel.target_codes.begin(), rel.target_codes.end(), code))
          return false;
      }
    }
    return true;
  }

  bool propagate() {
    while (cursor_ < trail_.size()) {
      Elem e = trail_[cursor_++];
      if (!check_ops(e) || !check_rels(e)) return false;
    }
    return true;
  }

  bool dfs() {
    Elem g = -1;
    for (int a = 0; a < p_.n; ++a) {
      if (assign_[static_cast<std::size_t>(a)] == -1) {
        g = a;
        break;
      }
    }
    if (g < 0) return visit_(assign_);
    std::size_t mark = trail_.size();
    auto try_value = [&](Elem b) {
      bool ok = set(g, b) && propagate();
      bool go_on = ok ? dfs() : true;
      undo_to(mark);
      cursor_ = mark;
      return go_on;
    };
    if (!p_.candidates.empty()) {
      for (Elem b : p_.candidates[static_cast<std::size_t>(g)])
        if (!try_value(b)) return false;
    } else {
      for (Elem b = 0; b < p_.m; ++b)
        if (!try_value(b)) return false;
    }
    return true;
  }

  const SearchProblem& p_;
  const std::function<bool(const std::vector<Elem>&)>& visit_;
  std::vector<Elem> assign_;
  std::vector<char> used_;
  std::vector<char> allowed_;
  std::vector<Elem> trail_;
  std::size_t cursor_ = 0;
  std::vector<Elem> args_;
  std::vector<RelIndex> rels_;
};

}  // namespace

void search_assignments(const SearchProblem& problem,
                        const std::function<bool(const std::vector<Elem>&)>& visit) {
  Engine engine(problem, visit);
  engine.run();
}

}  // namespace natdual::detail
