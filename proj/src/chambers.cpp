#include "stabchamber/chambers.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "stabchamber/errors.hpp"

namespace stabchamber {

// ---------------------------------------------------------------------------
// H-description

bool ChamberSpec::contains(const NSClass& alpha) const {
  for (const auto& f : generator_forms) {
    if (dot(alpha, f.normal) <= 0) return false;
  }
  for (const auto& f : ample_forms) {
    if (dot(alpha, f.normal) <= 0) return false;
  }
  return square(alpha) > 0;
}

bool ChamberSpec::closure_contains(const NSClass& alpha) const {
  for (const auto& f : generator_forms) {
    if (dot(alpha, f.normal) < 0) return false;
  }
  for (const auto& f : ample_forms) {
    if (dot(alpha, f.normal) < 0) return false;
  }
  return square(alpha) >= 0;
}

std::vector<LinearForm> ChamberSpec::linear_forms() const {
  auto out = generator_forms;
  out.insert(out.end(), ample_forms.begin(), ample_forms.end());
  return out;
}

std::vector<Rational> coordinate_form(const BlowUpConfig& cfg, const Generator& g) {
  std::vector<Rational> out(static_cast<std::size_t>(cfg.n()) + 1);
  for (int k = 1; k <= cfg.n(); ++k) {
    out[static_cast<std::size_t>(k)] = dot(NSClass::exceptional(cfg.n(), k), g.ch.c1);
  }
  return out;
}

ChamberSpec chamber_spec(const BlowUpConfig& cfg, const ContractionSet& s) {
  ChamberSpec spec;
  spec.s = s;
  const int n = cfg.n();
  for (const auto& g : generators(cfg, s)) {
    std::vector<Rational> expected(static_cast<std::size_t>(n) + 1);
    expected[static_cast<std::size_t>(g.index)] = 1;
    std::string label = "t" + std::to_string(g.index);
    if (g.kind == GeneratorKind::TypeII) {
      expected[static_cast<std::size_t>(*g.kappa)] = -1;
      label += " - t" + std::to_string(*g.kappa);
    }
    if (coordinate_form(cfg, g) != expected) {
      throw std::logic_error("generator " + std::to_string(g.index) +
                             " does not reduce to its t-coordinate form");
    }
    spec.generator_forms.push_back({g.ch.c1, label});
  }
  spec.ample_forms.push_back({NSClass::hyperplane(n), "H"});
  for (const auto& curve : cfg.curve_set().curves) {
    if (supported_on(curve.cls, s)) continue;
    auto pushed = drop_support(curve.cls, s);
    bool seen = std::any_of(spec.ample_forms.begin(), spec.ample_forms.end(),
                            [&](const LinearForm& f) { return f.normal == pushed; });
    if (!seen) spec.ample_forms.push_back({pushed, curve.cls.to_string()});
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Membership

bool c_fk_contains(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& d,
                   const Rational& k) {
  require_valid(cfg, s);
  if (d.n() != cfg.n()) throw DimensionError("class length does not match configuration");
  if (!supported_on(d, s)) {
    throw SupportError("class " + d.to_string() + " is not supported on the exceptional span of " +
                       s.to_string());
  }
  if (k <= 0) throw PreconditionError("C_{f,k} needs k > 0");
  for (const auto& g : generators(cfg, s)) {
    if (dot(d, g.ch.c1) <= 0) return false;
  }
  return square(d) + k > 0;
}

bool a_dagger_contains(const BlowUpConfig& cfg, const ContractionSet& s, const NSClass& alpha) {
  auto parts = split(cfg, alpha, s);
  // Cheap linear tests first; most candidate sets fail here.
  for (const auto& g : generators(cfg, s)) {
    if (dot(parts.d_part, g.ch.c1) <= 0) return false;
  }
  if (!is_ample_on_target(cfg, parts.omega_part, s)) return false;
  return c_fk_contains(cfg, s, parts.d_part, square(parts.omega_part));
}

bool a_dagger_closure_contains(const BlowUpConfig& cfg, const ContractionSet& s,
                               const NSClass& alpha) {
  auto parts = split(cfg, alpha, s);
  for (const auto& g : generators(cfg, s)) {
    if (dot(parts.d_part, g.ch.c1) < 0) return false;
  }
  if (!is_nef_on_target(cfg, parts.omega_part, s)) return false;
  return square(parts.d_part) + square(parts.omega_part) >= 0;
}

// ---------------------------------------------------------------------------
// Walls

std::string WallRef::to_string() const {
  return upper.to_string() + "--" + lower.to_string() + " (pivot " + std::to_string(pivot) + ")";
}

bool facet_contains(const BlowUpConfig& cfg, const WallRef& w, const NSClass& alpha) {
  if (dot(alpha, NSClass::exceptional(cfg.n(), w.pivot)) != 0) return false;
  auto omega = split(cfg, alpha, w.upper).omega_part;
  auto d = split(cfg, alpha, w.lower).d_part;
  if (!is_ample_on_target(cfg, omega, w.upper)) return false;
  return c_fk_contains(cfg, w.lower, d, square(omega));
}

bool wall_contains(const BlowUpConfig& cfg, const WallRef& w, const NSClass& alpha) {
  if (alpha.is_zero()) return false;
  if (dot(alpha, NSClass::exceptional(cfg.n(), w.pivot)) != 0) return false;
  return a_dagger_closure_contains(cfg, w.upper, alpha) &&
         a_dagger_closure_contains(cfg, w.lower, alpha);
}

Wall wall(const BlowUpConfig& cfg, const ContractionSet& s, int j, const Rational& eps) {
  require_valid(cfg, s);
  if (!s.contains(j)) {
    throw PivotError("pivot " + std::to_string(j) + " is not in " + s.to_string());
  }
  if (classify(cfg, s, j).kind != GeneratorKind::TypeI) {
    throw PivotError("pivot " + std::to_string(j) + " is of type II in " + s.to_string() +
                     " and cannot be blown down last");
  }
  if (eps <= 0) throw PreconditionError("wall perturbation must be positive");

  const int n = cfg.n();
  const auto lower = s.without(j);
  const auto ej = NSClass::exceptional(n, j);

  // t-coordinates on the lower chamber growing along type-II chains, each
  // exceeding eps so the type-II forms with kappa = j survive the push.
  const Rational twice = 2 * eps;
  mpz_class floor_twice;
  mpz_fdiv_q(floor_twice.get_mpz_t(), twice.get_num_mpz_t(), twice.get_den_mpz_t());
  const Rational unit = Rational(floor_twice) + 1;
  std::vector<Rational> height(static_cast<std::size_t>(n) + 1);
  auto d = NSClass::zero(n);
  for (auto it = lower.indices().rbegin(); it != lower.indices().rend(); ++it) {
    const int i = *it;
    auto cls = classify(cfg, lower, i);
    Rational h = cls.kind == GeneratorKind::TypeI ? Rational(1)
                                                  : height[static_cast<std::size_t>(*cls.kappa)] + 1;
    height[static_cast<std::size_t>(i)] = h;
    d += Rational(unit * h) * NSClass::exceptional(n, i);
  }

  const auto omega0 = ample_representative(cfg, s);
  const WallRef ref{s, lower, j};
  Rational scale = 1;
  for (int attempt = 0; attempt < 64; ++attempt, scale *= 2) {
    Wall w;
    w.ref = ref;
    w.equation = ej;
    w.eps = eps;
    w.witness = scale * omega0 + d;
    w.witness_upper = w.witness + eps * ej;
    w.witness_lower = w.witness - eps * ej;
    if (facet_contains(cfg, ref, w.witness) && a_dagger_contains(cfg, s, w.witness_upper) &&
        a_dagger_contains(cfg, lower, w.witness_lower)) {
      return w;
    }
  }
  throw std::logic_error("no wall witness found for " + ref.to_string());
}

std::vector<WallRef> wall_refs(const BlowUpConfig& cfg) {
  std::vector<WallRef> out;
  for (const auto& s : all_contractions(cfg)) {
    for (const auto& step : blowdown_successors(cfg, s)) out.push_back({s, step.lower, step.pivot});
  }
  return out;
}

ChamberGraph chamber_graph(const BlowUpConfig& cfg, const Rational& eps) {
  ChamberGraph g;
  g.nodes = all_contractions(cfg);
  for (const auto& ref : wall_refs(cfg)) g.edges.push_back(wall(cfg, ref.upper, ref.pivot, eps));
  return g;
}

// ---------------------------------------------------------------------------
// Location

namespace {

LocateResult locate_with(const BlowUpConfig& cfg, const std::vector<ContractionSet>& nodes,
                         const std::vector<WallRef>& walls, const NSClass& alpha) {
  LocateResult out;
  for (const auto& s : nodes) {
    if (a_dagger_contains(cfg, s, alpha)) out.chambers.push_back(s);
  }
  for (const auto& w : walls) {
    if (wall_contains(cfg, w, alpha)) out.walls.push_back(w);
  }
  out.outside = out.chambers.empty() && out.walls.empty();
  return out;
}

bool independent(const NSClass& u, const NSClass& v) {
  for (std::size_t k = 0; k < u.size(); ++k) {
    for (std::size_t l = k + 1; l < u.size(); ++l) {
      if (u[k] * v[l] - u[l] * v[k] != 0) return true;
    }
  }
  return false;
}

}  // namespace

LocateResult locate(const BlowUpConfig& cfg, const NSClass& alpha) {
  if (alpha.n() != cfg.n()) throw DimensionError("class length does not match configuration");
  return locate_with(cfg, all_contractions(cfg), wall_refs(cfg), alpha);
}

Rational SliceMap::a_at(int ia) const {
  return window.a_min + (window.a_max - window.a_min) * ratio(2 * ia + 1, 2 * window.grid);
}

Rational SliceMap::b_at(int ib) const {
  return window.b_min + (window.b_max - window.b_min) * ratio(2 * ib + 1, 2 * window.grid);
}

NSClass SliceMap::point(int ia, int ib) const { return origin + a_at(ia) * u + b_at(ib) * v; }

SliceMap slice(const BlowUpConfig& cfg, const NSClass& origin, const NSClass& u, const NSClass& v,
               const SliceWindow& window, unsigned workers) {
  if (origin.n() != cfg.n() || u.n() != cfg.n() || v.n() != cfg.n()) {
    throw DimensionError("slice vectors do not match configuration");
  }
  if (!independent(u, v)) throw DegenerateBasisError("slice directions are linearly dependent");
  if (window.grid < 1) throw PreconditionError("slice grid must be positive");
  if (window.a_min >= window.a_max || window.b_min >= window.b_max) {
    throw PreconditionError("empty slice window");
  }

  SliceMap map{origin, u, v, window, all_contractions(cfg), {}};
  const auto walls = wall_refs(cfg);
  (void)cfg.curve_set();
  const int grid = window.grid;
  map.labels.assign(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid),
                    SliceMap::kOutside);

  auto run_rows = [&](int row_begin, int row_end) {
    for (int ib = row_begin; ib < row_end; ++ib) {
      for (int ia = 0; ia < grid; ++ia) {
        auto verdict = locate_with(cfg, map.chambers, walls, map.point(ia, ib));
        int label = SliceMap::kOutside;
        if (!verdict.walls.empty()) {
          label = SliceMap::kWall;
        } else if (!verdict.chambers.empty()) {
          auto it = std::find(map.chambers.begin(), map.chambers.end(), verdict.chambers.front());
          label = static_cast<int>(it - map.chambers.begin());
        }
        map.labels[static_cast<std::size_t>(ib * grid + ia)] = label;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(grid));
  if (workers <= 1) {
    run_rows(0, grid);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (grid + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (int start = 0; start < grid; start += chunk) {
      pool.emplace_back(run_rows, start, std::min(grid, start + chunk));
    }
    for (auto& t : pool) t.join();
  }
  return map;
}

// ---------------------------------------------------------------------------
// Exact planar sectors

namespace {

// 0 for directions in [0, pi), 1 for [pi, 2 pi).
int half_of(const Direction2D& d) {
  return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1;
}

Rational cross(const Direction2D& a, const Direction2D& b) { return a[0] * b[1] - a[1] * b[0]; }

bool angle_less(const Direction2D& a, const Direction2D& b) {
  int ha = half_of(a);
  int hb = half_of(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

bool same_ray(const Direction2D& a, const Direction2D& b) {
  return cross(a, b) == 0 && a[0] * b[0] + a[1] * b[1] > 0;
}

Direction2D primitive(const Direction2D& d) {
  mpz_class l = 1;
  for (const auto& q : d) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  mpz_class x = Rational(d[0] * l).get_num();
  mpz_class y = Rational(d[1] * l).get_num();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  if (g == 0) return {Rational(0), Rational(0)};
  return {Rational(x / g), Rational(y / g)};
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(rn, rd);
}

bool inside(const std::vector<HalfPlane2D>& hp, const std::optional<Quadratic2D>& quad,
            const Direction2D& d) {
  for (const auto& h : hp) {
    if (h.p * d[0] + h.q * d[1] <= 0) return false;
  }
  if (quad) {
    Rational val = quad->a * d[0] * d[0] + 2 * quad->b * d[0] * d[1] + quad->c * d[1] * d[1];
    if (val <= 0) return false;
  }
  return true;
}

}  // namespace

std::vector<Sector> open_sectors(const std::vector<HalfPlane2D>& half_planes,
                                 const std::optional<Quadratic2D>& quadratic) {
  std::vector<Direction2D> rays = {
      Direction2D{Rational(1), Rational(0)}, Direction2D{Rational(0), Rational(1)},
      Direction2D{Rational(-1), Rational(0)}, Direction2D{Rational(0), Rational(-1)}};
  for (const auto& h : half_planes) {
    if (h.p == 0 && h.q == 0) return {};
    rays.push_back({Rational(-h.q), h.p});
    rays.push_back({h.q, Rational(-h.p)});
  }
  if (quadratic) {
    const auto& [a, b, c] = *quadratic;
    auto push_pair = [&](const Rational& x, const Rational& y) {
      if (x == 0 && y == 0) return;
      rays.push_back({x, y});
      rays.push_back({Rational(-x), Rational(-y)});
    };
    if (a != 0) {
      Rational disc = b * b - a * c;
      if (disc > 0) {
        auto r = exact_sqrt(disc);
        if (!r) throw PreconditionError("irrational isotropic ray in planar section");
        push_pair(Rational(-b + *r), a);
        push_pair(Rational(-b - *r), a);
      } else if (disc == 0) {
        push_pair(Rational(-b), a);
      }
    } else {
      push_pair(Rational(1), Rational(0));
      push_pair(c, Rational(-2 * b));
    }
  }
  for (auto& r : rays) r = primitive(r);
  std::sort(rays.begin(), rays.end(), angle_less);
  rays.erase(std::unique(rays.begin(), rays.end(), same_ray), rays.end());

  const std::size_t m = rays.size();
  std::vector<bool> arc_in(m);
  std::vector<bool> ray_in(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& r0 = rays[k];
    const auto& r1 = rays[(k + 1) % m];
    arc_in[k] = inside(half_planes, quadratic, {r0[0] + r1[0], r0[1] + r1[1]});
    ray_in[k] = inside(half_planes, quadratic, r0);
  }

  std::vector<Sector> out;
  if (std::all_of(arc_in.begin(), arc_in.end(), [](bool b) { return b; }) &&
      std::all_of(ray_in.begin(), ray_in.end(), [](bool b) { return b; })) {
    out.push_back({rays[0], rays[0]});
    return out;
  }
  // Start at an arc whose opening ray is excluded so sectors do not wrap.
  std::size_t start = 0;
  while (start < m && arc_in[start] && ray_in[start]) ++start;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t k = (start + step) % m;
    if (!arc_in[k]) continue;
    bool opens = step == 0 || !ray_in[k] || !arc_in[(k + m - 1) % m];
    if (opens) {
      out.push_back({rays[k], rays[(k + 1) % m]});
    } else {
      out.back().to = rays[(k + 1) % m];
    }
  }
  return out;
}

std::vector<Sector> planar_sectors(const ChamberSpec& spec, const NSClass& u, const NSClass& v) {
  std::vector<HalfPlane2D> hp;
  for (const auto& f : spec.linear_forms()) hp.push_back({dot(u, f.normal), dot(v, f.normal)});
  return open_sectors(hp, Quadratic2D{square(u), dot(u, v), square(v)});
}

// ---------------------------------------------------------------------------
// Paths

std::vector<ContractionSet> default_mmp_chain(const BlowUpConfig& cfg) {
  std::vector<ContractionSet> chain{ContractionSet{}};
  while (chain.back().size() < static_cast<std::size_t>(cfg.n())) {
    const auto& cur = chain.back();
    bool extended = false;
    for (int i = 1; i <= cfg.n() && !extended; ++i) {
      if (cur.contains(i)) continue;
      auto next = cur.with(i);
      if (is_valid(cfg, next)) {
        chain.push_back(next);
        extended = true;
      }
    }
    if (!extended) throw std::logic_error("no contractible index left");
  }
  return chain;
}

std::vector<NSClass> mmp_path(const BlowUpConfig& cfg, const std::vector<ContractionSet>& chain,
                              const Rational& eps) {
  if (chain.size() < 2) throw PreconditionError("a path needs at least two chambers");
  std::vector<NSClass> out;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& lo = chain[k];
    const auto& hi = chain[k + 1];
    if (hi.size() != lo.size() + 1) {
      throw PreconditionError("consecutive chambers " + lo.to_string() + ", " + hi.to_string() +
                              " do not differ by one index");
    }
    int pivot = 0;
    for (int i : hi) {
      if (!lo.contains(i)) pivot = i;
    }
    if (hi.without(pivot) != lo) {
      throw PreconditionError(lo.to_string() + " is not contained in " + hi.to_string());
    }
    auto w = wall(cfg, hi, pivot, eps);
    out.push_back(w.witness_lower);
    out.push_back(w.witness);
    out.push_back(w.witness_upper);
  }
  return out;
}

NSClass path_point(const std::vector<NSClass>& vertices, const Rational& t) {
  if (vertices.empty()) throw PreconditionError("empty path");
  if (t < 0 || t > 1) throw PreconditionError("path parameter outside [0, 1]");
  if (vertices.size() == 1) return vertices.front();
  const Rational scaled = t * static_cast<long>(vertices.size() - 1);
  mpz_class seg = scaled.get_num() / scaled.get_den();
  std::size_t k = seg.get_ui();
  if (k >= vertices.size() - 1) return vertices.back();
  Rational local = scaled - Rational(seg);
  return vertices[k] + local * (vertices[k + 1] - vertices[k]);
}

}  // namespace stabchamber
