#include "gapcert/gapsearch/gapsearch.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "gapcert/egyptian/egyptian.hpp"
#include "gapcert/errors.hpp"

namespace gapcert {

SearchCaps parse_caps(const std::string& text) {
  SearchCaps caps;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("caps entry without '=': " + item);
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    BigInt v;
    if (v.set_str(val, 10) != 0 || v <= 0) throw std::invalid_argument("bad caps value: " + val);
    if (key == "depth") {
      if (!v.fits_uint_p()) throw std::invalid_argument("depth cap too large");
      caps.depth = static_cast<unsigned>(v.get_ui());
    } else if (key == "den") {
      caps.den = v;
    } else {
      throw std::invalid_argument("unknown caps key: " + key);
    }
  }
  return caps;
}

std::string to_string(const SearchCaps& caps) {
  return "depth=" + std::to_string(caps.depth) + ",den=" + gapcert::to_string(caps.den);
}

std::string to_string(SearchStatus s) {
  return s == SearchStatus::Proven ? "proven" : "proven_within_caps";
}

namespace {

using Witness = std::vector<HyperElem>;

bool witness_less(const Witness& a, const Witness& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](const HyperElem& x, const HyperElem& y) {
        if (x.n != y.n) return x.n < y.n;
        return x.k < y.k;
      });
}

void sort_witness(Witness& w) {
  std::sort(w.begin(), w.end(), [](const HyperElem& x, const HyperElem& y) {
    if (x.n != y.n) return x.n < y.n;
    return x.k < y.k;
  });
}

struct Incumbent {
  std::mutex mu;
  bool have = false;
  Rational gap;
  Witness witness;
  std::atomic<bool> capped{false};

  // Returns the current best gap after the offer.
  Rational offer(const Rational& g, Witness w) {
    std::lock_guard<std::mutex> lock(mu);
    if (!have || g < gap || (g == gap && witness_less(w, witness))) {
      have = true;
      gap = g;
      witness = std::move(w);
    }
    return gap;
  }

  Rational current() {
    std::lock_guard<std::mutex> lock(mu);
    return gap;
  }
};

class Explorer {
 public:
  Explorer(unsigned long p, const SearchCaps& caps, Incumbent& best)
      : p_(p), pb_(p), dmax_(max_deficit(p)), caps_(caps), best_(best) {
    gap_ = best_.current();
  }

  // Largest admissible deficit below rho and at most prev.
  std::optional<Rational> largest_below(const Rational& rho, const Rational& prev) const {
    if (prev < rho) return prev;
    std::optional<Rational> out;
    for (unsigned long j = 1; j <= p_; ++j) {
      BigInt n = floor(Rational(BigInt(j)) / (Rational(pb_) * rho)) + 1;
      if (j == p_ && n < 2) n = 2;
      if (pb_ * n > caps_.den) continue;
      Rational d = make_rational(BigInt(j), pb_ * n);
      if (!out || d > *out) out = d;
    }
    return out;
  }

  void greedy(Rational rho, unsigned s, Rational prev) {
    const std::size_t base = path_.size();
    unsigned used = 0;
    for (; used < s; ++used) {
      auto d = largest_below(rho, prev);
      if (!d) break;
      path_.push_back(*d);
      rho -= *d;
      prev = *d;
    }
    offer(rho, s - used);
    path_.resize(base);
  }

  // Deficits d with lower <= d <= min(prev, rho), d < rho, descending.
  std::vector<Rational> candidates(const Rational& rho, const Rational& prev,
                                   const Rational& lower) {
    std::vector<Rational> out;
    if (lower <= 0) throw std::logic_error("gap search lost its incumbent bound");
    const Rational upper = prev < rho ? prev : rho;
    BigInt n_lo = ceil(Rational(1) / (Rational(pb_) * upper));
    if (n_lo < 1) n_lo = 1;
    const BigInt n_hi = floor(Rational(1) / lower);
    for (BigInt n = n_lo; n <= n_hi; ++n) {
      const BigInt den = pb_ * n;
      if (den > caps_.den) {
        best_.capped = true;
        break;
      }
      for (unsigned long j = 1; j <= p_; ++j) {
        Rational d = make_rational(BigInt(j), den);
        if (d >= 1 || d >= rho || d > prev || d < lower) continue;
        out.push_back(std::move(d));
      }
    }
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a > b; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void visit(const Rational& rho, unsigned s, const Rational& prev) {
    if (++nodes_ % 256 == 0) gap_ = best_.current();
    offer(rho, s);
    if (s == 0) return;
    greedy(rho, s, prev);
    if (gap_ >= rho) return;
    for (const Rational& d : candidates(rho, prev, (rho - gap_) / s)) {
      if (d * s < rho - gap_) break;
      path_.push_back(d);
      visit(rho - d, s - 1, d);
      path_.pop_back();
    }
  }

  void offer(const Rational& gap, unsigned ones) {
    if (gap <= 0) return;
    if (gap > gap_) return;
    Witness w;
    w.reserve(path_.size() + ones);
    for (const auto& d : path_) w.push_back(canonical_elem(p_, Rational(1) - d));
    for (unsigned i = 0; i < ones; ++i) w.push_back(canonical_elem(p_, Rational(1)));
    sort_witness(w);
    gap_ = best_.offer(gap, std::move(w));
  }

  void reset_path() { path_.clear(); }
  std::vector<Rational>& path() { return path_; }
  const Rational& gap() const { return gap_; }
  void refresh() { gap_ = best_.current(); }

 private:
  unsigned long p_;
  BigInt pb_;
  Rational dmax_;
  const SearchCaps& caps_;
  Incumbent& best_;
  Rational gap_;
  std::vector<Rational> path_;
  std::size_t nodes_ = 0;
};

struct RootTask {
  unsigned k;
  Rational first;
};

}  // namespace

MinSumResult min_sum_above(unsigned long p, const Rational& target, const SearchCaps& caps,
                           unsigned workers) {
  if (p == 0) throw DomainError("p must be a positive integer");
  if (target < 0) throw DomainError("target must be non-negative");
  const Rational dmax = max_deficit(p);
  const BigInt first_k_big = floor(target) + 1;
  if (!first_k_big.fits_uint_p()) throw CapError("target too large");
  const unsigned first_k = static_cast<unsigned>(first_k_big.get_ui());

  Incumbent best;
  best.offer(Rational(first_k) - target,
             Witness(first_k, canonical_elem(p, Rational(1))));

  // Slot counts k that can still beat (or tie) the incumbent satisfy
  // k (1 - dmax) <= target + gap.
  std::vector<unsigned> ks;
  {
    Explorer seed(p, caps, best);
    for (unsigned k = first_k;; ++k) {
      if (Rational(k) * (Rational(1) - dmax) > target + best.current()) break;
      if (k > caps.depth) {
        best.capped = true;
        break;
      }
      ks.push_back(k);
      seed.refresh();
      seed.greedy(Rational(k) - target, k, dmax);
    }
  }

  std::vector<RootTask> tasks;
  {
    Explorer planner(p, caps, best);
    for (unsigned k : ks) {
      const Rational rho = Rational(k) - target;
      planner.refresh();
      if (planner.gap() >= rho) continue;
      for (auto& d : planner.candidates(rho, dmax, (rho - planner.gap()) / k)) {
        tasks.push_back({k, std::move(d)});
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    Explorer ex(p, caps, best);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const RootTask& t = tasks[i];
      const Rational rho = Rational(t.k) - target;
      ex.refresh();
      if (t.first * t.k < rho - ex.gap()) continue;
      ex.reset_path();
      ex.path().push_back(t.first);
      ex.visit(rho - t.first, t.k - 1, t.first);
    }
  };

  unsigned n_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, std::max<std::size_t>(1, tasks.size())));
  if (n_workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  MinSumResult out;
  out.gap = best.gap;
  out.witness = best.witness;
  out.status = best.capped ? SearchStatus::ProvenWithinCaps : SearchStatus::Proven;
  return out;
}

GapCertificate min_sum_exceeding(unsigned long p, unsigned long q, const SearchCaps& caps,
                                 unsigned workers) {
  MinSumResult r = min_sum_above(p, Rational(BigInt(q)), caps, workers);
  GapCertificate c;
  c.p = p;
  c.q = q;
  c.value = r.gap;
  c.witness = std::move(r.witness);
  c.status = r.status;
  c.caps = caps;
  c.floor_index = (p * q + 1) * p + 1;
  if (c.floor_index <= kSylvesterExactCap) {
    c.sylvester_floor = make_rational(BigInt(1), sylvester_exact(static_cast<unsigned>(c.floor_index)) - 1);
    c.floor_check = c.value > *c.sylvester_floor    ? CompareOutcome::GT
                    : c.value == *c.sylvester_floor ? CompareOutcome::EQ
                                                    : CompareOutcome::LT;
    c.tight = c.value == *c.sylvester_floor;
  } else {
    // S_n - 1 >= 2^(2^(n-2)), so 2^(-2^(n-2)) bounds the floor from above.
    const Rational e(BigInt(c.floor_index - 2));
    Magnitude floor_upper = mag_reciprocal(Magnitude::tower(false, 2, e, e));
    c.floor_check = mag_compare(Magnitude::from_rational(c.value), floor_upper);
    if (c.floor_check == CompareOutcome::EQ) c.floor_check = CompareOutcome::GT;
  }
  return c;
}

Epsilon2 epsilon2(unsigned long p, unsigned long q, const SearchCaps& caps, unsigned workers) {
  Epsilon2 out;
  out.eps1 = min_sum_exceeding(p, q, caps, workers);
  const Rational qq{BigInt(q)};
  auto f = [&](const Rational& e) -> Rational { return e / (qq + e); };
  out.hi = f(out.eps1.value);
  if (out.eps1.status == SearchStatus::Proven) {
    out.lo = out.hi;
    out.exact = true;
  } else {
    out.lo = out.eps1.sylvester_floor ? f(*out.eps1.sylvester_floor) : Rational(0);
  }
  return out;
}

}  // namespace gapcert
