#pragma once
// Critical points of {H = 0, r2*x*Hx = r1*y*Hy}: resultant elimination,
// exact real-root isolation, interval-Newton certification, smooth-point
// checks, and the positive-quadrant grid minimality certificate.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "algolog/bipoly.hpp"
#include "algolog/interval.hpp"
#include "algolog/numeric.hpp"
#include "algolog/unipoly.hpp"

namespace algolog {

struct Direction {
  long long r1 = 1;
  long long r2 = 1;

  Direction(long long a, long long b) : r1(a), r2(b) {
    if (a <= 0 || b <= 0)
      raise(Errc::invalid_request, "direction components must be positive");
    long long g = gcd_ll(a, b);
    r1 /= g;
    r2 /= g;
  }
  Rational lambda() const { return Rational(r1, r2); }
  bool operator==(const Direction& o) const { return r1 == o.r1 && r2 == o.r2; }
};

enum class MinimalStatus { Unchecked, Verified, Assumed, Failed };
enum class NonsmoothLocus { Unchecked, Empty, MayExist, NonEmpty };

inline const char* minimal_status_name(MinimalStatus s) {
  switch (s) {
    case MinimalStatus::Verified: return "Verified";
    case MinimalStatus::Assumed: return "Assumed";
    case MinimalStatus::Failed: return "Failed";
    default: return "Unchecked";
  }
}

// One coordinate of a located solution: an isolating interval plus the
// squarefree polynomial used to shrink it further.
struct RootHandle {
  IsolatedRoot root;
  UniPoly refiner;

  const RatInterval& box() const { return root.box; }
  bool exact() const { return root.exact; }
  void refine(const Rational& width) { refine_root(refiner, root, width); }
  void bisect_once() {
    if (root.exact) return;
    refine_root(refiner, root, root.box.width() / 2);
  }
};

struct CriticalPointRecord {
  RootHandle x, y;
  bool smooth = false;
  bool smooth_checked = false;
  MinimalStatus minimal = MinimalStatus::Unchecked;
  NonsmoothLocus global_nonsmooth = NonsmoothLocus::Unchecked;
  int source_term = -1;
  // The grid certificate covers the positive box only, not the full torus
  // |x| = p, |y| = q; downstream reporting surfaces this caveat.
  bool torus_caveat = true;

  const RatInterval& x_box() const { return x.box(); }
  const RatInterval& y_box() const { return y.box(); }
  bool is_exact() const { return x.exact() && y.exact(); }

  void refine(const Rational& width) {
    x.refine(width);
    y.refine(width);
  }

  BigFloat p_approx() const { return x_box().mid_bigfloat(); }
  BigFloat q_approx() const { return y_box().mid_bigfloat(); }
};

inline std::pair<BiPoly, BiPoly> critical_system(const BiPoly& h, const Direction& dir) {
  BiPoly balance = BiPoly::variable_x() * h.dx() * Rational(dir.r2) -
                   BiPoly::variable_y() * h.dy() * Rational(dir.r1);
  return {h, balance};
}

// ---------------------------------------------------------------------------
// Certification helpers

namespace detail {

inline Rational default_width() {
  return Rational(1, Integer(1) << 64);
}

struct SystemDerivatives {
  BiPoly a, b, ax, ay, bx, by;
};

// Interval Newton step with Cramer solve; true when the step certifies a
// unique zero inside (X, Y).
inline bool newton_step(const SystemDerivatives& s, RatInterval& X, RatInterval& Y,
                        bool* rejected) {
  *rejected = false;
  RatInterval iA = s.a.eval_box(X, Y);
  RatInterval iB = s.b.eval_box(X, Y);
  if (!iA.contains_zero() || !iB.contains_zero()) {
    *rejected = true;
    return false;
  }
  Rational mx = X.mid(), my = Y.mid();
  Rational fa = s.a.eval<Rational>(mx, my);
  Rational fb = s.b.eval<Rational>(mx, my);
  RatInterval j11 = s.ax.eval_box(X, Y), j12 = s.ay.eval_box(X, Y);
  RatInterval j21 = s.bx.eval_box(X, Y), j22 = s.by.eval_box(X, Y);
  RatInterval det = j11 * j22 - j12 * j21;
  if (det.contains_zero()) return false;
  RatInterval fA = RatInterval::point(fa), fB = RatInterval::point(fb);
  RatInterval dx = (-fA * j22 + fB * j12) / det;
  RatInterval dy = (-fB * j11 + fA * j21) / det;
  RatInterval nX = RatInterval::point(mx) + dx;
  RatInterval nY = RatInterval::point(my) + dy;
  bool contracted = inside_interior(nX, X) && inside_interior(nY, Y);
  RatInterval ix, iy;
  if (!intersect(nX, X, &ix) || !intersect(nY, Y, &iy)) {
    *rejected = true;
    return false;
  }
  X = ix;
  Y = iy;
  return contracted;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// solve_critical

struct SolveOptions {
  Rational target_width = detail::default_width();
  int certify_iterations = 220;
};

inline std::vector<CriticalPointRecord> solve_critical(const BiPoly& h, const Direction& dir,
                                                       const SolveOptions& opt = {}) {
  if (h.is_zero())
    raise(Errc::invalid_request, "critical system of the zero polynomial");
  auto [a, b] = critical_system(h, dir);
  if (b.is_zero())
    raise(Errc::degenerate_system, "balance equation vanishes identically");

  const int day_a = a.deg_y(), day_b = b.deg_y();
  const int dax_a = a.deg_x(), dax_b = b.deg_x();

  // Variable-free directions degenerate to univariate intersection tests.
  if (day_a <= 0 && day_b <= 0) {
    UniPoly ua = substitute_y(a, Rational(0));
    UniPoly ub = substitute_y(b, Rational(0));
    UniPoly g = ua.is_zero() ? ub : (ub.is_zero() ? ua : gcd(ua, ub));
    if (g.degree() >= 1)
      raise(Errc::degenerate_system, "system is y-free with common roots (solution lines)");
    raise(Errc::no_positive_solution, "y-free system has no common zeros");
  }
  if (dax_a <= 0 && dax_b <= 0) {
    UniPoly ua = substitute_x(a, Rational(0));
    UniPoly ub = substitute_x(b, Rational(0));
    UniPoly g = ua.is_zero() ? ub : (ub.is_zero() ? ua : gcd(ua, ub));
    if (g.degree() >= 1)
      raise(Errc::degenerate_system, "system is x-free with common roots (solution lines)");
    raise(Errc::no_positive_solution, "x-free system has no common zeros");
  }

  // When both equations are functions of (x^gx, y^gy), eliminate on the
  // decimated system and inflate the eliminants back; root isolation then
  // runs on sparse inflated polynomials instead of large resultants.
  auto [gax, gay] = a.exponent_gcds();
  auto [gbx, gby] = b.exponent_gcds();
  int gx = static_cast<int>(gcd_ll(gax, gbx));
  int gy = static_cast<int>(gcd_ll(gay, gby));
  if (gx < 1) gx = 1;
  if (gy < 1) gy = 1;
  BiPoly ad = a.decimate(gx, gy), bd = b.decimate(gx, gy);

  UniPoly ex_raw = inflate(resultant_y(ad, bd), gx);
  if (ex_raw.is_zero())
    raise(Errc::degenerate_system, "x-eliminant vanishes identically (positive-dimensional set)");
  UniPoly ey_raw = inflate(resultant_x(ad, bd), gy);
  if (ey_raw.is_zero())
    raise(Errc::degenerate_system, "y-eliminant vanishes identically (positive-dimensional set)");

  UniPoly ex = squarefree_part(ex_raw);
  UniPoly ey = squarefree_part(ey_raw);
  auto xroots = isolate_positive_roots(ex);
  auto yroots = isolate_positive_roots(ey);
  if (xroots.empty() || yroots.empty())
    raise(Errc::no_positive_solution, "critical system has no positive real solutions");

  Rational prefilter_width(1, Integer(1) << 40);
  for (auto& r : xroots) refine_root(ex, r, prefilter_width);
  for (auto& r : yroots) refine_root(ey, r, prefilter_width);

  detail::SystemDerivatives sys{a, b, a.dx(), a.dy(), b.dx(), b.dy()};
  std::vector<CriticalPointRecord> records;

  for (const auto& xr : xroots) {
    for (const auto& yr : yroots) {
      CriticalPointRecord rec;
      rec.x = {xr, ex};
      rec.y = {yr, ey};

      if (xr.exact && yr.exact) {
        if (a.eval<Rational>(xr.value(), yr.value()).is_zero() &&
            b.eval<Rational>(xr.value(), yr.value()).is_zero())
          records.push_back(std::move(rec));
        continue;
      }

      if (xr.exact || yr.exact) {
        // exact coordinate: the other coordinate is a common root of the
        // substituted univariate pair, decided exactly through a gcd
        bool x_fixed = xr.exact;
        Rational fixed = x_fixed ? xr.value() : yr.value();
        UniPoly pa = x_fixed ? substitute_x(a, fixed) : substitute_y(a, fixed);
        UniPoly pb = x_fixed ? substitute_x(b, fixed) : substitute_y(b, fixed);
        if (pa.is_zero() && pb.is_zero())
          raise(Errc::degenerate_system, "system vanishes on a coordinate line");
        UniPoly g = pa.is_zero() ? pb : (pb.is_zero() ? pa : gcd(pa, pb));
        if (g.degree() < 1) continue;
        const RatInterval& other = x_fixed ? yr.box : xr.box;
        auto roots = isolate_real_roots(g, other.lo, other.hi);
        if (roots.size() != 1) {
          // shrink until the isolating interval of the eliminant pins down
          // exactly one common root
          RootHandle& hnd = x_fixed ? rec.y : rec.x;
          int guard = 0;
          while (roots.size() != 1 && guard++ < 200) {
            hnd.bisect_once();
            roots = isolate_real_roots(g, hnd.box().lo, hnd.box().hi);
          }
          if (roots.size() != 1) continue;
        }
        RootHandle certified{roots.front(), squarefree_part(g)};
        if (x_fixed)
          rec.y = std::move(certified);
        else
          rec.x = std::move(certified);
        records.push_back(std::move(rec));
        continue;
      }

      // two interval coordinates: interval Newton with eliminant-bisection
      // fallback so the box always shrinks
      RatInterval X = xr.box, Y = yr.box;
      bool certified = false, rejected = false;
      IsolatedRoot xwork = xr, ywork = yr;
      for (int it = 0; it < opt.certify_iterations && !certified && !rejected; ++it) {
        certified = detail::newton_step(sys, X, Y, &rejected);
        if (certified || rejected) break;
        refine_root(ex, xwork, xwork.box.width() / 2);
        refine_root(ey, ywork, ywork.box.width() / 2);
        if (xwork.exact || ywork.exact) break;  // restart through exact path
        RatInterval tx, ty;
        if (!intersect(X, xwork.box, &tx) || !intersect(Y, ywork.box, &ty)) {
          rejected = true;
          break;
        }
        X = tx;
        Y = ty;
      }
      if (rejected) continue;
      if (xwork.exact || ywork.exact) {
        // a bisection midpoint hit the root exactly; rerun this pair through
        // the exact-coordinate branch
        CriticalPointRecord redo;
        redo.x = {xwork, ex};
        redo.y = {ywork, ey};
        bool x_fixed = xwork.exact;
        Rational fixed = x_fixed ? xwork.value() : ywork.value();
        UniPoly pa = x_fixed ? substitute_x(a, fixed) : substitute_y(a, fixed);
        UniPoly pb = x_fixed ? substitute_x(b, fixed) : substitute_y(b, fixed);
        UniPoly g = pa.is_zero() ? pb : (pb.is_zero() ? pa : gcd(pa, pb));
        if (g.degree() < 1) continue;
        const RatInterval& other = x_fixed ? ywork.box : xwork.box;
        auto roots = isolate_real_roots(g, other.lo, other.hi);
        if (roots.size() != 1) continue;
        RootHandle certifiedh{roots.front(), squarefree_part(g)};
        if (x_fixed)
          redo.y = std::move(certifiedh);
        else
          redo.x = std::move(certifiedh);
        records.push_back(std::move(redo));
        continue;
      }
      if (!certified)
        raise(Errc::inconclusive,
              "could not certify or exclude a candidate critical point");
      rec.x.root.box = X;
      rec.y.root.box = Y;
      records.push_back(std::move(rec));
    }
  }

  if (records.empty())
    raise(Errc::no_positive_solution, "no candidate pair certified as a positive solution");
  for (auto& rec : records) rec.refine(opt.target_width);
  return records;
}

// ---------------------------------------------------------------------------
// Smoothness

namespace detail {

// Decides whether the single root of `handle` inside its box is also a root
// of `other`; both squarefree decisions run through a gcd plus a Sturm count.
inline bool root_also_vanishes(const RootHandle& handle, const UniPoly& other) {
  if (other.is_zero()) return true;
  if (handle.exact()) return other.sign_at(handle.root.value()) == 0;
  UniPoly g = gcd(handle.refiner, other);
  if (g.degree() < 1) return false;
  return !isolate_real_roots(g, handle.box().lo, handle.box().hi).empty();
}

}  // namespace detail

inline NonsmoothLocus nonsmooth_locus(const BiPoly& h);

// Certifies (Hx, Hy) != (0, 0) at the record's point, refining the enclosure
// as needed.  Also runs the global nonsmooth-locus analysis and stores its
// verdict on the record.
inline bool check_smooth(const BiPoly& h, CriticalPointRecord& rec, int cap_bits = 512) {
  BiPoly hx = h.dx(), hy = h.dy();
  rec.global_nonsmooth = nonsmooth_locus(h);
  rec.smooth_checked = true;

  if (rec.is_exact()) {
    Rational vx = hx.eval<Rational>(rec.x.root.value(), rec.y.root.value());
    Rational vy = hy.eval<Rational>(rec.x.root.value(), rec.y.root.value());
    rec.smooth = !(vx.is_zero() && vy.is_zero());
    return rec.smooth;
  }
  if (rec.x.exact() || rec.y.exact()) {
    bool x_fixed = rec.x.exact();
    Rational fixed = x_fixed ? rec.x.root.value() : rec.y.root.value();
    UniPoly ux = x_fixed ? substitute_x(hx, fixed) : substitute_y(hx, fixed);
    UniPoly uy = x_fixed ? substitute_x(hy, fixed) : substitute_y(hy, fixed);
    const RootHandle& free_coord = x_fixed ? rec.y : rec.x;
    rec.smooth = !(detail::root_also_vanishes(free_coord, ux) &&
                   detail::root_also_vanishes(free_coord, uy));
    return rec.smooth;
  }

  Rational cap(1, Integer(1) << cap_bits);
  while (true) {
    RatInterval ix = hx.eval_box(rec.x_box(), rec.y_box());
    RatInterval iy = hy.eval_box(rec.x_box(), rec.y_box());
    if (!ix.contains_zero() || !iy.contains_zero()) {
      rec.smooth = true;
      return true;
    }
    if (rec.x_box().width() < cap && rec.y_box().width() < cap)
      raise(Errc::inconclusive,
            "smoothness undecided at the interval refinement cap");
    rec.x.bisect_once();
    rec.y.bisect_once();
  }
}

namespace detail {

// Do three univariate polynomials (zeros skipped) share a real root?  An
// all-zero triple means the whole line satisfies the system.
inline bool triple_has_common_real_root(const UniPoly& u1, const UniPoly& u2,
                                        const UniPoly& u3,
                                        const RatInterval* restrict_box = nullptr) {
  UniPoly g;
  bool all_zero = true;
  for (const UniPoly* u : {&u1, &u2, &u3}) {
    if (u->is_zero()) continue;
    all_zero = false;
    g = g.is_zero() ? *u : gcd(g, *u);
  }
  if (all_zero) return true;
  if (g.degree() < 1) return false;
  Rational b = root_bound(g);
  Rational lo = restrict_box ? restrict_box->lo : -b;
  Rational hi = restrict_box ? restrict_box->hi : b;
  return !isolate_real_roots(g, lo, hi).empty();
}

}  // namespace detail

// Existence analysis for {H = Hx = Hy = 0} over the reals.
inline NonsmoothLocus nonsmooth_locus(const BiPoly& h) {
  BiPoly hx = h.dx(), hy = h.dy();
  if (hx.is_zero() && hy.is_zero()) return NonsmoothLocus::Empty;  // constant, V empty

  auto univariate_case = [](const UniPoly& f, const UniPoly& fprime) {
    UniPoly g = gcd(f, fprime);
    if (g.degree() < 1) return NonsmoothLocus::Empty;
    Rational b = root_bound(g);
    return isolate_real_roots(g, -b, b).empty() ? NonsmoothLocus::Empty
                                                : NonsmoothLocus::NonEmpty;
  };
  if (h.deg_y() <= 0)
    return univariate_case(substitute_y(h, Rational(0)), substitute_y(hx, Rational(0)));
  if (h.deg_x() <= 0)
    return univariate_case(substitute_x(h, Rational(0)), substitute_x(hy, Rational(0)));

  // For a function of (x^gx, y^gy) the derivative factors split the locus
  // into coordinate-axis pieces plus the decimated-plane locus.
  auto [gx, gy] = h.exponent_gcds();
  if (gx > 1 || gy > 1) {
    Rational zero(0);
    if (gx > 1 &&
        detail::triple_has_common_real_root(substitute_x(h, zero), substitute_x(hy, zero),
                                            UniPoly()))
      return NonsmoothLocus::NonEmpty;
    if (gy > 1 &&
        detail::triple_has_common_real_root(substitute_y(h, zero), substitute_y(hx, zero),
                                            UniPoly()))
      return NonsmoothLocus::NonEmpty;
    NonsmoothLocus inner = nonsmooth_locus(h.decimate(gx, gy));
    if (inner == NonsmoothLocus::Empty) return NonsmoothLocus::Empty;
    return NonsmoothLocus::MayExist;  // lifting needs real gx/gy-th roots
  }

  struct SideCandidates {
    UniPoly refiner;  // squarefree gcd of the two eliminants
    std::vector<IsolatedRoot> roots;
  };
  auto side_candidates = [](const UniPoly& r1,
                            const UniPoly& r2) -> std::optional<SideCandidates> {
    if (r1.is_zero() || r2.is_zero()) return std::nullopt;
    UniPoly g = gcd(r1, r2);
    if (g.degree() < 1) return SideCandidates{};
    g = squarefree_part(g);
    Rational b = root_bound(g);
    return SideCandidates{g, isolate_real_roots(g, -b, b)};
  };

  // x side first; exact x-candidates settle by substitution, so the often
  // costlier y-side elimination only runs when interval candidates remain
  auto xc = side_candidates(resultant_y(h, hx), resultant_y(h, hy));
  std::vector<IsolatedRoot> pending_x;
  if (xc) {
    if (xc->roots.empty()) return NonsmoothLocus::Empty;
    for (const auto& xr : xc->roots) {
      if (xr.exact) {
        if (detail::triple_has_common_real_root(substitute_x(h, xr.value()),
                                                substitute_x(hx, xr.value()),
                                                substitute_x(hy, xr.value())))
          return NonsmoothLocus::NonEmpty;
      } else {
        pending_x.push_back(xr);
      }
    }
    if (pending_x.empty()) return NonsmoothLocus::Empty;
  }

  auto yc = side_candidates(resultant_x(h, hx), resultant_x(h, hy));
  if (yc && yc->roots.empty()) return NonsmoothLocus::Empty;
  if (!xc || !yc) return NonsmoothLocus::MayExist;

  bool unknown = false;
  for (const auto& xr : pending_x) {
    for (const auto& yr : yc->roots) {
      if (yr.exact) {
        if (detail::triple_has_common_real_root(substitute_y(h, yr.value()),
                                                substitute_y(hx, yr.value()),
                                                substitute_y(hy, yr.value()), &xr.box))
          return NonsmoothLocus::NonEmpty;
        continue;
      }
      // two interval coordinates: refine and try to exclude; existence is
      // never certified from intervals alone
      IsolatedRoot xw = xr, yw = yr;
      bool excluded = false;
      for (int it = 0; it < 90; ++it) {
        RatInterval vh = h.eval_box(xw.box, yw.box);
        RatInterval vhx = hx.eval_box(xw.box, yw.box);
        RatInterval vhy = hy.eval_box(xw.box, yw.box);
        if (!vh.contains_zero() || !vhx.contains_zero() || !vhy.contains_zero()) {
          excluded = true;
          break;
        }
        if (xw.exact && yw.exact) break;
        refine_root(xc->refiner, xw, xw.box.width() / 2);
        refine_root(yc->refiner, yw, yw.box.width() / 2);
      }
      if (excluded) continue;
      if (xw.exact && yw.exact) {
        if (h.eval<Rational>(xw.value(), yw.value()).is_zero() &&
            hx.eval<Rational>(xw.value(), yw.value()).is_zero() &&
            hy.eval<Rational>(xw.value(), yw.value()).is_zero())
          return NonsmoothLocus::NonEmpty;
        continue;
      }
      unknown = true;
    }
  }
  return unknown ? NonsmoothLocus::MayExist : NonsmoothLocus::Empty;
}

// ---------------------------------------------------------------------------
// Minimality (combinatorial case): grid certificate on (v, w) in [0,1]^2

namespace detail {

struct MonomialBox {
  unsigned i, j;
  RatInterval coeff;  // c * p^i * q^j
};

inline RatInterval eval_monomial_grid(const std::vector<MonomialBox>& mono,
                                      const RatInterval& v, const RatInterval& w) {
  RatInterval acc = RatInterval::point(0);
  for (const auto& m : mono)
    acc = acc + m.coeff * (pow_interval(v, m.i) * pow_interval(w, m.j));
  return acc;
}

enum class CellVerdict { Positive, Negative, ZeroFound, Unknown };

inline CellVerdict certify_cell(const std::vector<MonomialBox>& mono, const RatInterval& v,
                                const RatInterval& w, int depth) {
  RatInterval val = eval_monomial_grid(mono, v, w);
  if (val.strictly_positive()) return CellVerdict::Positive;
  if (val.strictly_negative()) return CellVerdict::Negative;
  if (depth == 0) return CellVerdict::Unknown;
  Rational vm = v.mid(), wm = w.mid();
  CellVerdict quad[4] = {
      certify_cell(mono, {v.lo, vm}, {w.lo, wm}, depth - 1),
      certify_cell(mono, {vm, v.hi}, {w.lo, wm}, depth - 1),
      certify_cell(mono, {v.lo, vm}, {wm, w.hi}, depth - 1),
      certify_cell(mono, {vm, v.hi}, {wm, w.hi}, depth - 1),
  };
  bool unknown = false;
  bool pos = false, neg = false;
  for (CellVerdict q : quad) {
    if (q == CellVerdict::ZeroFound) return CellVerdict::ZeroFound;
    if (q == CellVerdict::Unknown) unknown = true;
    pos |= q == CellVerdict::Positive;
    neg |= q == CellVerdict::Negative;
  }
  if (pos && neg) return CellVerdict::ZeroFound;  // certified sign change
  if (unknown) return CellVerdict::Unknown;
  return pos ? CellVerdict::Positive : CellVerdict::Negative;
}

}  // namespace detail

// Certifies H(v*p, w*q) != 0 over the grid on [0,1]^2 minus the top-right
// cell touching (1,1), where the function necessarily vanishes.  Verified
// when every cell is certified; Failed on a certified zero or sign change;
// Assumed when some cell stays inconclusive at the subdivision cap.
inline MinimalStatus check_minimal(const BiPoly& h, CriticalPointRecord& rec, int grid_n,
                                   int subdivision_depth = 10) {
  if (grid_n < 2) raise(Errc::invalid_request, "minimality grid must have at least 2 cells");
  const RatInterval& p = rec.x_box();
  const RatInterval& q = rec.y_box();
  if (!(p.lo > 0) || !(q.lo > 0))
    raise(Errc::invalid_request, "minimality check requires a positive point");

  std::vector<detail::MonomialBox> mono;
  mono.reserve(h.terms().size());
  for (const auto& [k, c] : h.terms())
    mono.push_back({static_cast<unsigned>(k.first), static_cast<unsigned>(k.second),
                    c * (pow_interval(p, static_cast<unsigned>(k.first)) *
                         pow_interval(q, static_cast<unsigned>(k.second)))});

  bool assumed = false;
  bool positive_seen = false, negative_seen = false;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      if (i == grid_n - 1 && j == grid_n - 1) continue;  // neighborhood of (1,1)
      RatInterval v(Rational(i, grid_n), Rational(i + 1, grid_n));
      RatInterval w(Rational(j, grid_n), Rational(j + 1, grid_n));
      auto verdict = detail::certify_cell(mono, v, w, subdivision_depth);
      switch (verdict) {
        case detail::CellVerdict::ZeroFound:
          rec.minimal = MinimalStatus::Failed;
          return rec.minimal;
        case detail::CellVerdict::Positive:
          positive_seen = true;
          break;
        case detail::CellVerdict::Negative:
          negative_seen = true;
          break;
        case detail::CellVerdict::Unknown:
          assumed = true;
          break;
      }
      if (positive_seen && negative_seen) {
        rec.minimal = MinimalStatus::Failed;  // sign change across cells
        return rec.minimal;
      }
    }
  }
  rec.minimal = assumed ? MinimalStatus::Assumed : MinimalStatus::Verified;
  return rec.minimal;
}

// ---------------------------------------------------------------------------
// High-precision polish for downstream numeric evaluation

inline std::pair<BigFloat, BigFloat> polish_point(const BiPoly& a, const BiPoly& b,
                                                  const CriticalPointRecord& rec,
                                                  int iterations = 64) {
  BigFloat x = rec.p_approx(), y = rec.q_approx();
  BiPoly ax = a.dx(), ay = a.dy(), bx = b.dx(), by = b.dy();
  for (int i = 0; i < iterations; ++i) {
    BigFloat fa = a.eval<BigFloat>(x, y), fb = b.eval<BigFloat>(x, y);
    BigFloat j11 = ax.eval<BigFloat>(x, y), j12 = ay.eval<BigFloat>(x, y);
    BigFloat j21 = bx.eval<BigFloat>(x, y), j22 = by.eval<BigFloat>(x, y);
    BigFloat det = j11 * j22 - j12 * j21;
    if (det.is_zero()) break;
    BigFloat dx = (fa * j22 - fb * j12) / det;
    BigFloat dy = (fb * j11 - fa * j21) / det;
    x -= dx;
    y -= dy;
    if (abs(dx) + abs(dy) == 0) break;
  }
  return {x, y};
}

}  // namespace algolog
