#include "tsq/coset.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace tsq {

std::string to_string(Strategy s) { return s == Strategy::hlt ? "hlt" : "felsch"; }

Strategy strategy_from_string(std::string const& s) {
  if (s == "hlt") return Strategy::hlt;
  if (s == "felsch") return Strategy::felsch;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected hlt or felsch)");
}

// ---------------------------------------------------------------------------
// CosetTable

CosetTable::CosetTable(std::size_t generators, std::size_t cosets, std::vector<std::uint32_t> entries)
    : gens_(generators), cosets_(cosets), entries_(std::move(entries)) {
  if (entries_.size() != cosets_ * 2 * gens_) throw std::invalid_argument("CosetTable: size mismatch");
}

std::uint32_t CosetTable::trace(std::uint32_t coset, Word const& w) const {
  for (auto const& s : w.syllables()) {
    std::size_t col = 2 * std::size_t(s.gen) + (s.exp < 0 ? 1 : 0);
    for (std::int64_t i = 0; i < (s.exp < 0 ? -s.exp : s.exp); ++i) coset = at(coset, col);
  }
  return coset;
}

std::uint32_t CosetTable::trace_letters(std::uint32_t coset, std::span<const std::uint32_t> letters) const {
  for (auto x : letters) coset = at(coset, x);
  return coset;
}

// ---------------------------------------------------------------------------
// enumerator

namespace {

using Clock = std::chrono::steady_clock;

class Enumerator {
 public:
  using Coset = std::int32_t;
  static constexpr Coset kNone = -1;

  Enumerator(Presentation const& p, std::span<const Word> subgroup, EnumerationConfig const& cfg)
      : cfg_(cfg), ncols_(2 * p.generator_count()), limit_(cfg.max_live_cosets) {
    if (cfg_.max_live_cosets < 1) throw std::invalid_argument("max_live_cosets must be >= 1");
    if (limit_ > std::size_t(std::numeric_limits<Coset>::max() - 1))
      limit_ = std::size_t(std::numeric_limits<Coset>::max() - 1);
    for (auto const& r : p.relators()) rels_.push_back(r.letters());
    for (auto const& w : subgroup) {
      if (!w.empty() && w.max_generator() >= p.generator_count())
        throw std::invalid_argument("subgroup generator references an undeclared generator");
      subgens_.push_back(w.letters());
    }
    if (cfg_.strategy == Strategy::felsch) build_conjugates();
    grow(std::min<std::size_t>(limit_, 1024));
    fwd_[0] = 0;
    std::fill_n(tab_.begin(), ncols_, kNone);
    next_ = 1;
    live_ = 1;
    stats_.total_defined = 1;
    stats_.peak_live = 1;
  }

  Enumeration run() {
    auto const start = Clock::now();
    if (ncols_ == 0) {
      // no generators: the trivial group, one coset
      stats_.final_count = 1;
      return {CosetTable(0, 1, {}), stats_};
    }
    track_ = cfg_.strategy == Strategy::felsch;
    for (auto const& w : subgens_) {
      ensure_rows(w.size());
      scan_and_fill(0, w);
      process_deductions();
    }
    if (cfg_.strategy == Strategy::felsch) {
      // close every relator cycle through the subgroup coset up front
      for (auto const& r : rels_) {
        ensure_rows(r.size());
        scan_and_fill(0, r);
        process_deductions();
      }
    }
    pos_ = 0;
    while (pos_ < next_) {
      if (!live(Coset(pos_))) {
        ++pos_;
        continue;
      }
      bool const done = cfg_.strategy == Strategy::hlt ? hlt_row() : felsch_row();
      if (done) ++pos_;
    }
    compact();
    auto table = standardize();
    stats_.final_count = table.size();
    stats_.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return {std::move(table), stats_};
  }

 private:
  // --- storage -------------------------------------------------------------

  Coset& cell(Coset c, std::uint32_t x) { return tab_[std::size_t(c) * ncols_ + x]; }
  bool live(Coset c) const { return fwd_[std::size_t(c)] == c; }

  Coset rep(Coset c) {
    Coset r = c;
    while (fwd_[std::size_t(r)] != r) r = fwd_[std::size_t(r)];
    while (fwd_[std::size_t(c)] != r) {
      Coset n = fwd_[std::size_t(c)];
      fwd_[std::size_t(c)] = r;
      c = n;
    }
    return r;
  }

  void grow(std::size_t rows) {
    if (rows <= rows_alloc_) return;
    tab_.resize(rows * ncols_, kNone);
    fwd_.resize(rows, 0);
    rows_alloc_ = rows;
  }

  // Makes room for k new cosets. Returns true when cosets were renumbered.
  bool ensure_rows(std::size_t k) {
    if (next_ + k <= rows_alloc_) return false;
    std::size_t const dead = next_ - live_;
    if (next_ + k <= limit_ && double(dead) < cfg_.compaction_threshold * double(next_)) {
      grow(std::min(limit_, std::max(2 * rows_alloc_, next_ + k)));
      return false;
    }
    if (dead > 0) {
      compact();
      if (next_ + k <= limit_) {
        grow(std::min(limit_, std::max(rows_alloc_, next_ + k)));
        return true;
      }
    }
    if (cfg_.strategy == Strategy::hlt && cfg_.lookahead) {
      lookahead();
      compact();
      if (next_ + k <= limit_) {
        grow(std::min(limit_, std::max(rows_alloc_, next_ + k)));
        return true;
      }
    }
    throw CosetLimitError("coset enumeration exceeded " + std::to_string(limit_) + " cosets", stats_);
  }

  void define(Coset c, std::uint32_t x) {
    Coset d = Coset(next_++);
    fwd_[std::size_t(d)] = d;
    std::fill_n(tab_.begin() + std::ptrdiff_t(std::size_t(d) * ncols_), ncols_, kNone);
    cell(c, x) = d;
    cell(d, x ^ 1u) = c;
    ++live_;
    ++stats_.total_defined;
    stats_.peak_live = std::max<std::uint64_t>(stats_.peak_live, live_);
    if (track_) deductions_.emplace_back(c, x);
  }

  // --- coincidences --------------------------------------------------------

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    fwd_[std::size_t(b)] = a;
    --live_;
    ++stats_.coincidences;
    queue_.push_back(b);
  }

  void coincidence(Coset a, Coset b) {
    merge(a, b);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      Coset const e = queue_[qi];
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        Coset const f = cell(e, x);
        if (f == kNone) continue;
        std::uint32_t const xi = x ^ 1u;
        cell(f, xi) = kNone;
        Coset const e1 = rep(e), f1 = rep(f);
        Coset const ex = cell(e1, x);
        Coset const fx = cell(f1, xi);
        if (ex != kNone) {
          merge(f1, ex);
        } else if (fx != kNone) {
          merge(e1, fx);
        } else {
          cell(e1, x) = f1;
          cell(f1, xi) = e1;
          if (track_) deductions_.emplace_back(e1, x);
        }
      }
    }
    queue_.clear();
  }

  // --- scanning ------------------------------------------------------------

  void scan_and_fill(Coset a, std::vector<std::uint32_t> const& w) {
    if (w.empty()) return;
    std::ptrdiff_t i = 0, j = std::ptrdiff_t(w.size()) - 1;
    Coset f = a, b = a;
    while (true) {
      while (i <= j && cell(f, w[std::size_t(i)]) != kNone) f = cell(f, w[std::size_t(i++)]);
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i && cell(b, w[std::size_t(j)] ^ 1u) != kNone) b = cell(b, w[std::size_t(j--)] ^ 1u);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        cell(f, w[std::size_t(i)]) = b;
        cell(b, w[std::size_t(i)] ^ 1u) = f;
        if (track_) deductions_.emplace_back(f, w[std::size_t(i)]);
        return;
      }
      define(f, w[std::size_t(i)]);
    }
  }

  void scan(Coset a, std::vector<std::uint32_t> const& w) {
    if (w.empty()) return;
    std::ptrdiff_t i = 0, j = std::ptrdiff_t(w.size()) - 1;
    Coset f = a, b = a;
    while (i <= j && cell(f, w[std::size_t(i)]) != kNone) f = cell(f, w[std::size_t(i++)]);
    if (i > j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j >= i && cell(b, w[std::size_t(j)] ^ 1u) != kNone) b = cell(b, w[std::size_t(j--)] ^ 1u);
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      cell(f, w[std::size_t(i)]) = b;
      cell(b, w[std::size_t(i)] ^ 1u) = f;
      if (track_) deductions_.emplace_back(f, w[std::size_t(i)]);
    }
  }

  // --- HLT -----------------------------------------------------------------

  bool hlt_row() {
    Coset const c = Coset(pos_);
    for (auto const& r : rels_) {
      if (ensure_rows(r.size())) return false;
      scan_and_fill(c, r);
      if (!live(c)) return false;
    }
    for (std::uint32_t x = 0; x < ncols_; ++x) {
      if (cell(c, x) != kNone) continue;
      if (ensure_rows(1)) return false;
      define(c, x);
    }
    return true;
  }

  void lookahead() {
    ++stats_.lookaheads;
    bool const saved = track_;
    track_ = false;
    for (std::size_t c = 0; c < next_; ++c) {
      for (auto const& r : rels_) {
        if (!live(Coset(c))) break;
        scan(Coset(c), r);
      }
    }
    track_ = saved;
  }

  // --- Felsch --------------------------------------------------------------

  void build_conjugates() {
    std::set<std::vector<std::uint32_t>> all;
    for (auto const& r : rels_) {
      if (r.empty()) continue;
      std::vector<std::uint32_t> inv(r.rbegin(), r.rend());
      for (auto& x : inv) x ^= 1u;
      for (auto const* w : {&r, static_cast<std::vector<std::uint32_t> const*>(&inv)})
        for (std::size_t k = 0; k < w->size(); ++k) {
          std::vector<std::uint32_t> rot(w->begin() + std::ptrdiff_t(k), w->end());
          rot.insert(rot.end(), w->begin(), w->begin() + std::ptrdiff_t(k));
          all.insert(std::move(rot));
        }
    }
    by_first_.assign(ncols_, {});
    for (auto const& w : all) {
      by_first_[w[0]].push_back(conj_.size());
      conj_.push_back(w);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (std::size_t idx : by_first_[x]) {
        scan(c, conj_[idx]);
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      Coset const d = cell(c, x);
      if (d == kNone) continue;
      for (std::size_t idx : by_first_[x ^ 1u]) {
        if (!live(d)) break;
        scan(d, conj_[idx]);
      }
    }
  }

  bool felsch_row() {
    Coset const c = Coset(pos_);
    for (std::uint32_t x = 0; x < ncols_; ++x) {
      if (!live(c)) return false;
      if (cell(c, x) != kNone) continue;
      if (ensure_rows(1)) return false;
      define(c, x);
      process_deductions();
    }
    return live(c);
  }

  // --- compaction and output -------------------------------------------------

  void compact() {
    if (live_ == next_) return;
    ++stats_.compactions;
    std::vector<Coset> idx(next_, kNone);
    Coset n = 0;
    for (std::size_t c = 0; c < next_; ++c)
      if (live(Coset(c))) idx[c] = n++;
    for (std::size_t c = 0; c < next_; ++c) {
      if (idx[c] == kNone) continue;
      std::size_t const dst = std::size_t(idx[c]);
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        Coset v = tab_[c * ncols_ + x];
        if (v != kNone) {
          v = idx[std::size_t(v)];
          if (v == kNone) throw std::logic_error("coset table references a dead coset");
        }
        tab_[dst * ncols_ + x] = v;
      }
    }
    std::size_t newpos = std::size_t(n);
    for (std::size_t c = pos_; c < next_; ++c)
      if (idx[c] != kNone) {
        newpos = std::size_t(idx[c]);
        break;
      }
    pos_ = newpos;
    for (Coset c = 0; c < n; ++c) fwd_[std::size_t(c)] = c;
    next_ = std::size_t(n);
    live_ = next_;
  }

  CosetTable standardize() {
    std::size_t const n = next_;
    std::vector<Coset> newnum(n, kNone);
    std::vector<Coset> order;
    order.reserve(n);
    newnum[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::uint32_t x = 0; x < ncols_; ++x) {
        Coset v = cell(order[i], x);
        if (v == kNone) throw std::logic_error("coset table incomplete after enumeration");
        if (newnum[std::size_t(v)] == kNone) {
          newnum[std::size_t(v)] = Coset(order.size());
          order.push_back(v);
        }
      }
    if (order.size() != n) throw std::logic_error("coset table is not connected");
    std::vector<std::uint32_t> out(n * ncols_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t x = 0; x < ncols_; ++x)
        out[i * ncols_ + x] = std::uint32_t(newnum[std::size_t(cell(order[i], x))]);
    return CosetTable(ncols_ / 2, n, std::move(out));
  }

  EnumerationConfig cfg_;
  std::size_t ncols_;
  std::size_t limit_;
  std::vector<std::vector<std::uint32_t>> rels_;
  std::vector<std::vector<std::uint32_t>> subgens_;
  std::vector<std::vector<std::uint32_t>> conj_;
  std::vector<std::vector<std::size_t>> by_first_;

  std::vector<Coset> tab_;
  std::vector<Coset> fwd_;
  std::size_t rows_alloc_ = 0;
  std::size_t next_ = 0;
  std::size_t live_ = 0;
  std::size_t pos_ = 0;
  bool track_ = false;
  std::vector<std::pair<Coset, std::uint32_t>> deductions_;
  std::vector<Coset> queue_;
  EnumerationStats stats_;
};

}  // namespace

Enumeration enumerate(Presentation const& p, std::span<const Word> subgroup_generators,
                      EnumerationConfig const& config) {
  return Enumerator(p, subgroup_generators, config).run();
}

std::size_t subgroup_index(Presentation const& p, std::span<const Word> subgroup_generators,
                           EnumerationConfig const& config) {
  return enumerate(p, subgroup_generators, config).table.size();
}

std::vector<std::vector<std::uint32_t>> permutation_rep(CosetTable const& t) {
  std::vector<std::vector<std::uint32_t>> out(t.generator_count(), std::vector<std::uint32_t>(t.size()));
  for (std::size_t g = 0; g < t.generator_count(); ++g)
    for (std::size_t c = 0; c < t.size(); ++c) out[g][c] = t.at(c, 2 * g);
  return out;
}

bool verify_table(CosetTable const& t, Presentation const& p, std::span<const Word> subgroup_generators,
                  std::size_t sample) {
  if (t.generator_count() != p.generator_count()) return false;
  std::vector<std::vector<std::uint32_t>> rels;
  for (auto const& r : p.relators()) rels.push_back(r.letters());
  auto check = [&](std::uint32_t c) {
    for (std::size_t x = 0; x < t.columns(); ++x)
      if (t.at(t.at(c, x), x ^ 1u) != c) return false;
    for (auto const& r : rels)
      if (t.trace_letters(c, r) != c) return false;
    return true;
  };
  if (sample == 0 || sample >= t.size()) {
    for (std::uint32_t c = 0; c < t.size(); ++c)
      if (!check(c)) return false;
  } else {
    std::mt19937_64 rng(0xC0FFEE);
    std::uniform_int_distribution<std::uint32_t> pick(0, std::uint32_t(t.size() - 1));
    for (std::size_t i = 0; i < sample; ++i)
      if (!check(pick(rng))) return false;
  }
  for (auto const& w : subgroup_generators)
    if (t.trace(0, w) != 0) return false;
  return true;
}

RegularRepresentation regular_representation(Presentation const& p, EnumerationConfig const& config) {
  auto e = enumerate(p, {}, config);
  CosetTable const& t = e.table;
  std::size_t const n = t.size();
  std::size_t const cols = t.columns();
  // spanning tree in standardized (breadth-first) order
  std::vector<std::uint32_t> parent(n, 0), via(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> order{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t x = 0; x < cols; ++x) {
      std::uint32_t v = t.at(order[i], x);
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = order[i];
        via[v] = x;
        order.push_back(v);
      }
    }
  std::vector<Word> words(n);
  for (std::size_t i = 1; i < order.size(); ++i) {
    std::uint32_t v = order[i];
    std::uint32_t x = via[v];
    words[v] = words[parent[v]] * Word::generator(x / 2, (x & 1u) ? -1 : 1);
  }
  std::vector<Elem> table(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    table[c * n] = Elem(c);
    for (std::size_t i = 1; i < order.size(); ++i) {
      std::uint32_t d = order[i];
      table[c * n + d] = Elem(t.at(table[c * n + parent[d]], via[d]));
    }
  }
  std::vector<Elem> gens;
  for (std::size_t g = 0; g < p.generator_count(); ++g) gens.push_back(Elem(t.at(0, 2 * g)));
  return {GroupTable(n, std::move(table), std::move(gens)), std::move(words), e.stats};
}

}  // namespace tsq
