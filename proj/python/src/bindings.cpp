#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "stabchamber/chambers.hpp"
#include "stabchamber/configuration.hpp"
#include "stabchamber/contractions.hpp"
#include "stabchamber/errors.hpp"
#include "stabchamber/rational.hpp"
#include "stabchamber/stability.hpp"

namespace py = pybind11;
using namespace stabchamber;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(py::str(to_string(q)));
}

Rational rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) {
    throw ParseError("floats are not accepted; pass an int, a Fraction or a string");
  }
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  return parse_rational(py::str(h).cast<std::string>());
}

NSClass ns_class(const py::sequence& seq) {
  std::vector<Rational> c;
  for (auto item : seq) c.push_back(rational(item));
  return NSClass(std::move(c));
}

py::tuple to_py(const NSClass& c) {
  py::tuple t(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) t[k] = fraction(c[k]);
  return t;
}

py::tuple to_py(const ContractionSet& s) {
  py::tuple t(s.size());
  std::size_t k = 0;
  for (int i : s) t[k++] = py::int_(i);
  return t;
}

ContractionSet contraction_set(const py::iterable& it) {
  std::vector<int> idx;
  for (auto item : it) idx.push_back(item.cast<int>());
  return ContractionSet(idx);
}

py::dict to_py(const ChernCharacter& ch) {
  py::dict d;
  d["rank"] = ch.rank;
  d["c1"] = to_py(ch.c1);
  d["ch2"] = fraction(ch.ch2);
  return d;
}

ChernCharacter chern(const py::sequence& seq) {
  if (py::len(seq) != 3) throw DimensionError("Chern character is (rank, c1, ch2)");
  return ChernCharacter{seq[0].cast<int>(), ns_class(seq[1].cast<py::sequence>()), rational(seq[2])};
}

py::tuple to_py(const ChargeValue& z) { return py::make_tuple(fraction(z.re), fraction(z.im)); }

py::dict to_py(const WallRef& w) {
  py::dict d;
  d["upper"] = to_py(w.upper);
  d["lower"] = to_py(w.lower);
  d["pivot"] = w.pivot;
  return d;
}

py::dict to_py(const Wall& w) {
  py::dict d = to_py(w.ref);
  d["equation"] = to_py(w.equation);
  d["witness"] = to_py(w.witness);
  d["witness_upper"] = to_py(w.witness_upper);
  d["witness_lower"] = to_py(w.witness_lower);
  d["eps"] = fraction(w.eps);
  return d;
}

py::dict to_py(const SurfaceDescriptor& s) {
  py::dict d;
  d["contracted"] = to_py(s.contracted);
  d["remaining"] = s.remaining;
  d["on"] = s.on;
  d["name"] = s.name;
  return d;
}

BlowUpConfig make_config(int n, const py::object& on, const std::vector<py::sequence>& extras) {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(std::max(n, 0)));
  if (py::isinstance<py::dict>(on)) {
    for (auto [k, v] : on.cast<py::dict>()) {
      int i = k.cast<int>();
      if (i < 1 || i > n) throw IndexError("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
      rows[static_cast<std::size_t>(i - 1)] = v.cast<std::vector<int>>();
    }
  } else if (!on.is_none()) {
    rows = on.cast<std::vector<std::vector<int>>>();
  }
  std::vector<NSClass> extra;
  for (const auto& e : extras) extra.push_back(ns_class(e));
  return BlowUpConfig(n, std::move(rows), std::move(extra));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact wall-and-chamber computations for blow-ups of the projective plane";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<IndexError>(m, "IndexError", base);
  py::register_exception<ValidityError>(m, "ValidityError", base);
  py::register_exception<OrthogonalityError>(m, "OrthogonalityError", base);
  py::register_exception<SupportError>(m, "SupportError", base);
  py::register_exception<PivotError>(m, "PivotError", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<PositivityError>(m, "PositivityError", base);
  py::register_exception<UnsupportedEnumerationError>(m, "UnsupportedEnumerationError", base);
  py::register_exception<DegenerateBasisError>(m, "DegenerateBasisError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  py::class_<BlowUpConfig>(m, "BlowUpConfig")
      .def(py::init(&make_config), py::arg("n"), py::arg("on") = py::none(),
           py::arg("extra_curves") = std::vector<py::sequence>{},
           "on: dict {i: [j, ...]} or a list of n membership lists")
      .def_static("disjoint", &BlowUpConfig::disjoint, py::arg("n"))
      .def_property_readonly("n", &BlowUpConfig::n)
      .def("on", &BlowUpConfig::on, py::arg("i"))
      .def("points_on", &BlowUpConfig::points_on, py::arg("j"))
      .def("__eq__", [](const BlowUpConfig& a, const BlowUpConfig& b) { return a == b; })
      .def("__repr__", [](const BlowUpConfig& c) {
        std::string s = "BlowUpConfig(n=" + std::to_string(c.n()) + ", on={";
        bool first = true;
        for (int i = 1; i <= c.n(); ++i) {
          if (c.on(i).empty()) continue;
          s += std::string(first ? "" : ", ") + std::to_string(i) + ": [";
          for (std::size_t k = 0; k < c.on(i).size(); ++k) {
            s += (k ? ", " : "") + std::to_string(c.on(i)[k]);
          }
          s += "]";
          first = false;
        }
        return s + "})";
      });

  m.def("dot", [](const py::sequence& a, const py::sequence& b) {
    return fraction(dot(ns_class(a), ns_class(b)));
  });
  m.def("square", [](const py::sequence& a) { return fraction(square(ns_class(a))); });
  m.def("canonical_class", [](int n) { return to_py(canonical_class(n)); });
  m.def("format_class", [](const py::sequence& a) { return ns_class(a).to_string(); });

  m.def("validate", [](const BlowUpConfig& cfg) {
    py::list out;
    for (const auto& v : validate(cfg)) {
      py::dict d;
      d["rule"] = v.rule;
      d["indices"] = v.indices;
      d["message"] = v.message;
      out.append(d);
    }
    return out;
  });
  m.def("negative_curves", [](const BlowUpConfig& cfg) {
    py::list out;
    for (const auto& c : cfg.curve_set().curves) {
      out.append(py::make_tuple(to_py(c.cls), to_string(c.origin)));
    }
    return out;
  });
  m.def("strict_transform", [](const BlowUpConfig& cfg, int j) {
    return to_py(strict_transform(cfg, j));
  });

  m.def("all_contractions", [](const BlowUpConfig& cfg) {
    py::list out;
    for (const auto& s : all_contractions(cfg)) out.append(to_py(s));
    return out;
  });
  m.def("is_valid_contraction", [](const BlowUpConfig& cfg, const py::iterable& s) {
    return is_valid(cfg, contraction_set(s));
  });
  m.def("generators", [](const BlowUpConfig& cfg, const py::iterable& s) {
    py::list out;
    for (const auto& g : generators(cfg, contraction_set(s))) {
      py::dict d;
      d["index"] = g.index;
      d["type"] = to_string(g.kind);
      d["kappa"] = g.kappa ? py::object(py::int_(*g.kappa)) : py::none();
      d["ch"] = to_py(g.ch);
      d["divisor_note"] = g.divisor_note;
      out.append(d);
    }
    return out;
  });
  m.def("split", [](const BlowUpConfig& cfg, const py::sequence& alpha, const py::iterable& s) {
    auto parts = split(cfg, ns_class(alpha), contraction_set(s));
    return py::make_tuple(to_py(parts.omega_part), to_py(parts.d_part));
  });

  m.def("a_dagger_contains", [](const BlowUpConfig& cfg, const py::iterable& s, const py::sequence& alpha) {
    return a_dagger_contains(cfg, contraction_set(s), ns_class(alpha));
  });
  m.def("c_fk_contains", [](const BlowUpConfig& cfg, const py::iterable& s, const py::sequence& d,
                            const py::object& k) {
    return c_fk_contains(cfg, contraction_set(s), ns_class(d), rational(k));
  });
  m.def(
      "wall",
      [](const BlowUpConfig& cfg, const py::iterable& s, int j, const py::object& eps) {
        return to_py(wall(cfg, contraction_set(s), j, rational(eps)));
      },
      py::arg("cfg"), py::arg("s"), py::arg("j"), py::arg("eps") = "1/100");
  m.def(
      "chamber_graph",
      [](const BlowUpConfig& cfg, const py::object& eps) {
        auto g = chamber_graph(cfg, rational(eps));
        py::dict d;
        py::list nodes;
        for (const auto& s : g.nodes) nodes.append(to_py(s));
        py::list edges;
        for (const auto& w : g.edges) edges.append(to_py(w));
        d["nodes"] = nodes;
        d["edges"] = edges;
        return d;
      },
      py::arg("cfg"), py::arg("eps") = "1/100");
  m.def("locate", [](const BlowUpConfig& cfg, const py::sequence& alpha) {
    auto r = locate(cfg, ns_class(alpha));
    py::dict d;
    py::list chambers;
    for (const auto& s : r.chambers) chambers.append(to_py(s));
    py::list walls;
    for (const auto& w : r.walls) walls.append(to_py(w));
    d["chambers"] = chambers;
    d["walls"] = walls;
    d["outside"] = r.outside;
    return d;
  });
  m.def(
      "slice",
      [](const BlowUpConfig& cfg, const py::sequence& origin, const py::sequence& u,
         const py::sequence& v, const py::sequence& window, int grid) {
        if (py::len(window) != 4) throw DimensionError("window is (a_min, a_max, b_min, b_max)");
        SliceWindow w{rational(window[0]), rational(window[1]), rational(window[2]),
                      rational(window[3]), grid};
        auto map = slice(cfg, ns_class(origin), ns_class(u), ns_class(v), w);
        py::dict d;
        py::list legend;
        for (const auto& s : map.chambers) legend.append(to_py(s));
        py::list rows;
        for (int ib = 0; ib < grid; ++ib) {
          py::list row;
          for (int ia = 0; ia < grid; ++ia) row.append(map.label(ia, ib));
          rows.append(row);
        }
        d["chambers"] = legend;
        d["labels"] = rows;
        d["wall"] = SliceMap::kWall;
        d["outside"] = SliceMap::kOutside;
        return d;
      },
      py::arg("cfg"), py::arg("origin"), py::arg("u"), py::arg("v"),
      py::arg("window") = py::make_tuple(0, 2, -2, 2), py::arg("grid") = 50);
  m.def("mmp_path", [](const BlowUpConfig& cfg, const std::vector<py::iterable>& chain) {
    std::vector<ContractionSet> sets;
    for (const auto& s : chain) sets.push_back(contraction_set(s));
    if (sets.empty()) sets = default_mmp_chain(cfg);
    py::list out;
    for (const auto& v : mmp_path(cfg, sets)) out.append(to_py(v));
    return out;
  });

  m.def("z_eval", [](const py::sequence& ch, const py::sequence& alpha) {
    return to_py(z_eval(chern(ch), ns_class(alpha)));
  });
  m.def("z_target", [](const py::sequence& ch, const py::sequence& omega, const py::sequence& d) {
    return to_py(z_target(chern(ch), ns_class(omega), ns_class(d)));
  });
  m.def("phase", [](const py::object& re, const py::object& im) {
    return phase(ChargeValue{rational(re), rational(im)});
  });
  m.def("describe_target", [](const BlowUpConfig& cfg, const py::iterable& s) {
    return to_py(describe_target(cfg, contraction_set(s)));
  });
  m.def("moduli_of_point", [](const BlowUpConfig& cfg, const py::sequence& alpha) {
    auto r = moduli_of_point(cfg, ns_class(alpha));
    py::dict d;
    d["kind"] = to_string(r.kind);
    d["surface"] = r.surface ? py::object(to_py(*r.surface)) : py::none();
    py::list walls;
    for (const auto& w : r.walls) walls.append(to_py(w));
    d["walls"] = walls;
    return d;
  });
  m.def("k_theta", &k_theta, py::arg("theta"));
  m.def("support_quantities", [](const BlowUpConfig& cfg, const py::iterable& s, const py::sequence& alpha) {
    auto r = support_quantities(cfg, contraction_set(s), ns_class(alpha));
    py::dict d;
    d["c_omega"] = fraction(r.c_omega);
    d["l_sup"] = fraction(r.l_sup);
    d["m_sup"] = fraction(r.m_sup);
    d["m_attained"] = r.m_attained;
    d["theta_range"] = r.theta_range
                           ? py::object(py::make_tuple(r.theta_range->theta, r.theta_range->theta_prime))
                           : py::none();
    d["k_theta"] = r.k_theta ? py::object(py::float_(*r.k_theta)) : py::none();
    return d;
  });
}
