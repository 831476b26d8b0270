#pragma once

#include "dioph/propagation.hpp"
#include "dioph/relations.hpp"
#include "dioph/system.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <iterator>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace dioph {

enum class Verdict {
  Found,
  NoneUpToCap,
  Holds,
  Counterexample,
  UnknownCapExhausted,
  Determined,
  Indeterminate,
};

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Found: return "FOUND";
    case Verdict::NoneUpToCap: return "NONE_UP_TO_CAP";
    case Verdict::Holds: return "HOLDS";
    case Verdict::Counterexample: return "COUNTEREXAMPLE";
    case Verdict::UnknownCapExhausted: return "UNKNOWN_CAP_EXHAUSTED";
    case Verdict::Determined: return "DETERMINED";
    case Verdict::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

struct SearchVerdict {
  Verdict kind = Verdict::Indeterminate;
  std::optional<Tuple> tuple;   // Found / Counterexample / first unresolved x
  std::vector<Tuple> tuples;    // Determined
  std::uint64_t shell = 0;      // highest shell examined
  std::uint64_t scanned = 0;    // tuples (or search nodes) examined
};

// The order <=_n on Z^n: by max(|x_1|, ..., |x_n|), then lexicographically
// with the usual integer order inside a shell. Starts at the zero tuple.
class LeqOrder {
 public:
  explicit LeqOrder(std::size_t n) : v_(n, 0) {
    if (n == 0) throw std::invalid_argument("LeqOrder: n must be >= 1");
  }

  const std::vector<long>& values() const { return v_; }
  std::uint64_t shell() const { return m_; }

  Tuple tuple() const {
    Tuple t;
    t.reserve(v_.size());
    for (long x : v_) t.emplace_back(x);
    return t;
  }

  void next() {
    const long m = static_cast<long>(m_);
    const std::size_t n = v_.size();
    for (std::size_t i = n; i-- > 0;) {
      if (v_[i] >= m) continue;
      if (i == n - 1 && !prefix_hits(n - 1)) {
        v_[i] = m;  // the last coordinate must close the shell
      } else {
        ++v_[i];
      }
      for (std::size_t j = i + 1; j < n; ++j) v_[j] = -m;
      return;
    }
    ++m_;
    std::fill(v_.begin(), v_.end(), -static_cast<long>(m_));
  }

 private:
  bool prefix_hits(std::size_t len) const {
    const long m = static_cast<long>(m_);
    for (std::size_t i = 0; i < len; ++i)
      if (v_[i] == m || v_[i] == -m) return true;
    return false;
  }

  std::vector<long> v_;
  std::uint64_t m_ = 0;
};

inline std::vector<Tuple> enumerate_leq_n(std::size_t n, std::size_t count) {
  LeqOrder order(n);
  std::vector<Tuple> out;
  out.reserve(count);
  for (std::size_t c = 0; c < count; ++c, order.next()) out.push_back(order.tuple());
  return out;
}

namespace detail {

// Depth-first walk of one shell in lexicographic order. Coordinates are fixed
// left to right; each equation is checked as soon as its largest index is
// set, and when it pins that coordinate the candidates come from its roots
// instead of the whole range.
class ShellSearch {
 public:
  using PrefixFilter = std::function<bool(std::size_t pos, const Int& value)>;

  ShellSearch(const System& s, PrefixFilter filter) : n_(s.n()), at_level_(s.n()), filter_(std::move(filter)) {
    for (const auto& e : s) at_level_[e.max_index() - 1].push_back(e);
  }

  std::optional<Tuple> first_in_shell(std::uint64_t m) {
    m_ = static_cast<long>(m);
    cur_.assign(n_, Int(0));
    if (m == 0) {
      ++scanned_;
      return accept_level_all() ? std::optional<Tuple>(cur_) : std::nullopt;
    }
    if (dfs(0, false)) return cur_;
    return std::nullopt;
  }

  std::uint64_t scanned() const { return scanned_; }

 private:
  bool accept_level_all() {
    for (std::size_t pos = 0; pos < n_; ++pos) {
      if (filter_ && !filter_(pos, cur_[pos])) return false;
      for (const auto& e : at_level_[pos])
        if (!e.holds(cur_)) return false;
    }
    return true;
  }

  bool try_value(std::size_t pos, long value, bool hit) {
    cur_[pos] = value;
    ++scanned_;
    if (filter_ && !filter_(pos, cur_[pos])) return false;
    for (const auto& e : at_level_[pos])
      if (!e.holds(cur_)) return false;
    return dfs(pos + 1, hit || value == m_ || value == -m_);
  }

  bool dfs(std::size_t pos, bool hit) {
    if (pos == n_) return hit;
    const bool last = pos + 1 == n_;
    std::optional<std::set<Int>> pinned;
    auto val = [&](std::size_t idx) -> const Int& { return cur_[idx - 1]; };
    for (const auto& e : at_level_[pos]) {
      RootSet r = solve_for(e, pos + 1, val);
      if (r.any) continue;
      std::set<Int> roots(r.roots.begin(), r.roots.end());
      if (!pinned) {
        pinned = std::move(roots);
      } else {
        std::set<Int> both;
        std::set_intersection(pinned->begin(), pinned->end(), roots.begin(), roots.end(),
                              std::inserter(both, both.begin()));
        pinned = std::move(both);
      }
      if (pinned->empty()) return false;
    }
    if (pinned) {
      for (const Int& r : *pinned) {
        if (abs(r) > m_) continue;
        long v = r.get_si();
        if (last && !hit && v != m_ && v != -m_) continue;
        if (try_value(pos, v, hit)) return true;
      }
      return false;
    }
    if (last && !hit) return try_value(pos, -m_, hit) || try_value(pos, m_, hit);
    for (long v = -m_; v <= m_; ++v)
      if (try_value(pos, v, hit)) return true;
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<Equation>> at_level_;
  PrefixFilter filter_;
  Tuple cur_;
  long m_ = 0;
  std::uint64_t scanned_ = 0;
};

}  // namespace detail

// The <=_n-least solution of s with max-norm at most shell_cap.
inline SearchVerdict solve_in_order(const System& s, std::uint64_t shell_cap) {
  detail::ShellSearch search(s, nullptr);
  SearchVerdict v;
  for (std::uint64_t m = 0; m <= shell_cap; ++m) {
    v.shell = m;
    if (auto t = search.first_in_shell(m)) {
      v.kind = Verdict::Found;
      v.tuple = std::move(t);
      v.scanned = search.scanned();
      return v;
    }
  }
  v.kind = Verdict::NoneUpToCap;
  v.scanned = search.scanned();
  return v;
}

// Candidates are seeded from self-contained relations and propagated; the
// surviving assignments are filtered through is_relation_morphism. Returns
// DETERMINED with every relation-preserving y, or INDETERMINATE when some
// coordinate cannot be pinned down.
inline SearchVerdict rigidity_by_propagation(const Tuple& x, bool include_units) {
  RelationSet rel = relations_of(x);
  PropagationResult pr = propagate(rel.as_system(include_units));
  SearchVerdict v;
  if (!pr.closed || !pr.free.empty()) {
    v.kind = Verdict::Indeterminate;
    return v;
  }
  v.kind = Verdict::Determined;
  for (auto& y : pr.assignments)
    if (is_relation_morphism(x, y, include_units)) v.tuples.push_back(std::move(y));
  v.scanned = pr.assignments.size();
  return v;
}

// Looks for a relation-preserving y (units included) with y_1 != x_1.
inline SearchVerdict check_property4(const Tuple& x, std::uint64_t shell_cap) {
  RelationSet rel = relations_of(x);
  const Int x1 = x[0];
  detail::ShellSearch search(rel.as_system(true),
                             [&](std::size_t pos, const Int& value) { return pos != 0 || value != x1; });
  SearchVerdict v;
  for (std::uint64_t m = 0; m <= shell_cap; ++m) {
    v.shell = m;
    if (auto y = search.first_in_shell(m)) {
      v.kind = Verdict::Counterexample;
      v.tuple = std::move(y);
      v.scanned = search.scanned();
      return v;
    }
  }
  v.kind = Verdict::NoneUpToCap;
  v.scanned = search.scanned();
  return v;
}

struct PsiOptions {
  unsigned jobs = 1;
  // Domain is low < |x_1| = max|x_i| <= high; defaults 2^(2^(n-1)) and 2^(2^n).
  std::optional<std::uint64_t> domain_low;
  std::optional<std::uint64_t> domain_high;
  std::function<void(const std::string&)> progress;
};

inline std::uint64_t default_psi_cap(std::size_t n) {
  if (n >= 5) throw std::invalid_argument("check_psi: n >= 5 is out of reach");
  std::uint64_t high = std::uint64_t{1} << (std::uint64_t{1} << n);
  return high * high;
}

namespace detail {

struct PsiUnitResult {
  std::optional<Tuple> counterexample;
  std::optional<Tuple> unresolved;
  std::uint64_t scanned = 0;
};

// Does some relation-preserving y leave the box [-m, m]^n? Searches shells
// m+1..cap; if none, a closed propagation with every image inside the box
// proves x a genuine counterexample.
inline PsiUnitResult psi_unit(std::size_t n, long m, long sign, std::uint64_t cap) {
  PsiUnitResult out;
  std::vector<long> rest(n - 1, -m);
  while (true) {
    Tuple x;
    x.reserve(n);
    x.emplace_back(sign * m);
    for (long r : rest) x.emplace_back(r);
    ++out.scanned;

    RelationSet rel = relations_of(x);
    ShellSearch search(rel.as_system(false), nullptr);
    bool witnessed = false;
    for (std::uint64_t s = static_cast<std::uint64_t>(m) + 1; s <= cap && !witnessed; ++s)
      witnessed = search.first_in_shell(s).has_value();
    out.scanned += search.scanned();
    if (!witnessed) {
      SearchVerdict r = rigidity_by_propagation(x, false);
      bool boxed = r.kind == Verdict::Determined;
      for (const auto& y : r.tuples)
        for (const auto& c : y)
          if (abs(c) > m) boxed = false;
      if (boxed) {
        out.counterexample = x;
        return out;
      }
      if (!out.unresolved) out.unresolved = x;
    }

    std::size_t i = rest.size();
    while (i > 0 && rest[i - 1] == m) rest[--i] = -m;
    if (i == 0) break;
    ++rest[i - 1];
  }
  return out;
}

}  // namespace detail

// Brute-force check of the finitized statement for one n: every x with
// 2^(2^(n-1)) < |x_1| = max|x_i| <= 2^(2^n) must admit a relation-preserving
// y (no units) with some |y_i| > |x_1|. Work is split into (shell, sign of
// x_1) units; the first failing x in <=_n order decides the verdict.
inline SearchVerdict check_psi(std::size_t n, std::optional<std::uint64_t> y_shell_cap = {},
                               const PsiOptions& opt = {}) {
  if (n == 0) throw std::invalid_argument("check_psi: n must be >= 1");
  const std::uint64_t cap = y_shell_cap ? *y_shell_cap : default_psi_cap(n);
  const std::uint64_t low = opt.domain_low ? *opt.domain_low : std::uint64_t{1} << (std::uint64_t{1} << (n - 1));
  const std::uint64_t high = opt.domain_high ? *opt.domain_high : (n < 6 ? std::uint64_t{1} << (std::uint64_t{1} << n) : 0);

  struct Unit {
    long m;
    long sign;
  };
  std::vector<Unit> units;
  for (std::uint64_t m = low + 1; m <= high; ++m) {
    units.push_back({static_cast<long>(m), -1});
    units.push_back({static_cast<long>(m), 1});
  }
  std::vector<detail::PsiUnitResult> results(units.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;
  auto worker = [&] {
    while (true) {
      std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      results[u] = detail::psi_unit(n, units[u].m, units[u].sign, cap);
      if (opt.progress) {
        std::lock_guard lock(progress_mu);
        opt.progress("shell " + std::to_string(units[u].m) + (units[u].sign < 0 ? " (-)" : " (+)") + ": " +
                     std::to_string(results[u].scanned) + " tuples scanned");
      }
    }
  };
  unsigned jobs = std::max(1U, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SearchVerdict v;
  v.kind = Verdict::Holds;
  v.shell = cap;
  for (const auto& r : results) v.scanned += r.scanned;
  for (const auto& r : results) {
    if (r.counterexample) {
      v.kind = Verdict::Counterexample;
      v.tuple = r.counterexample;
      return v;
    }
  }
  for (const auto& r : results) {
    if (r.unresolved) {
      v.kind = Verdict::UnknownCapExhausted;
      v.tuple = r.unresolved;
      return v;
    }
  }
  return v;
}

}  // namespace dioph
