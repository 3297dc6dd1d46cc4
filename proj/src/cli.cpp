#include "stabchamber/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "stabchamber/contractions.hpp"
#include "stabchamber/errors.hpp"

namespace stabchamber::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration documents

BlowUpConfig ConfigDocument::to_config() const {
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (const auto& [i, row] : on) rows[static_cast<std::size_t>(i - 1)] = row;
  std::vector<NSClass> extras;
  for (const auto& c : extra_curves) extras.push_back(NSClass::from_ints(c));
  return BlowUpConfig(n, std::move(rows), std::move(extras));
}

namespace {

int parse_index_key(const std::string& key, int n) {
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
  } catch (const std::exception&) {
    throw ParseError("index key '" + key + "' is not an integer");
  }
  if (value < 1 || value > n) {
    throw ParseError("index key " + key + " outside 1.." + std::to_string(n));
  }
  return value;
}

std::vector<std::string> tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t' || c == '\n' || c == '{' || c == '}' || c == '[' ||
        c == ']') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

ConfigDocument parse_config(const json& doc) {
  if (!doc.is_object()) throw ParseError("configuration must be a JSON object");
  ConfigDocument out;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError("configuration needs an integer field 'n'");
  }
  out.n = doc["n"].get<int>();
  if (out.n < 0) throw ParseError("'n' must be non-negative");

  if (doc.contains("on")) {
    const auto& on = doc["on"];
    if (!on.is_object()) throw ParseError("'on' must map indices to lists of indices");
    for (const auto& [key, row] : on.items()) {
      int i = parse_index_key(key, out.n);
      if (!row.is_array()) throw ParseError("'on." + key + "' must be a list");
      std::vector<int> members;
      for (const auto& v : row) {
        if (!v.is_number_integer()) throw ParseError("'on." + key + "' must hold integers");
        members.push_back(v.get<int>());
      }
      out.on[i] = std::move(members);
    }
  }
  if (doc.contains("extra_curves")) {
    const auto& extras = doc["extra_curves"];
    if (!extras.is_array()) throw ParseError("'extra_curves' must be a list of vectors");
    for (const auto& c : extras) {
      if (!c.is_array() || c.size() != static_cast<std::size_t>(out.n) + 1) {
        throw ParseError("each extra curve must be an integer vector of length n + 1");
      }
      std::vector<long> coeffs;
      for (const auto& v : c) {
        if (!v.is_number_integer()) throw ParseError("extra curve coefficients must be integers");
        coeffs.push_back(v.get<long>());
      }
      out.extra_curves.push_back(std::move(coeffs));
    }
  }
  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_object()) throw ParseError("'labels' must map indices to names");
    for (const auto& [key, name] : labels.items()) {
      if (!name.is_string()) throw ParseError("label of " + key + " must be a string");
      out.labels[parse_index_key(key, out.n)] = name.get<std::string>();
    }
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "on" && key != "extra_curves" && key != "labels") {
      throw ParseError("unknown configuration field '" + key + "'");
    }
  }
  return out;
}

ConfigDocument parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

NSClass parse_class(std::string_view text, int n) {
  auto parts = tokens(text);
  if (parts.size() != static_cast<std::size_t>(n) + 1) {
    throw ParseError("class vector needs " + std::to_string(n + 1) + " entries, got " +
                     std::to_string(parts.size()));
  }
  std::vector<Rational> coeffs;
  for (const auto& p : parts) coeffs.push_back(parse_rational(p));
  return NSClass(std::move(coeffs));
}

ContractionSet parse_set(std::string_view text) {
  std::vector<int> out;
  for (const auto& p : tokens(text)) {
    try {
      std::size_t used = 0;
      int v = std::stoi(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("'" + p + "' is not an index");
    }
  }
  return ContractionSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Bundled examples

std::optional<std::string> bundled_example_name(const BlowUpConfig& cfg) {
  struct Named {
    const char* name;
    BlowUpConfig cfg;
  };
  static const std::vector<Named> table = {
      {"projective plane", BlowUpConfig::disjoint(0)},
      {"single point blow-up", BlowUpConfig::disjoint(1)},
      {"infinitely-near pair", BlowUpConfig(2, {{2}, {}})},
      {"two points on a third exceptional curve", BlowUpConfig(3, {{3}, {3}, {}})},
      {"infinitely-near chain of three", BlowUpConfig(3, {{2}, {3}, {}})},
      {"three collinear points",
       BlowUpConfig(3, {{}, {}, {}}, {NSClass::from_ints({1, -1, -1, -1})})},
  };
  for (const auto& entry : table) {
    if (entry.cfg == cfg) return entry.name;
  }
  if (cfg.n() >= 2 && cfg.extra_curves().empty() && cfg == BlowUpConfig::disjoint(cfg.n())) {
    return "disjoint exceptional curves";
  }
  return std::nullopt;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int k = 0; k < len; ++k) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON encoders

ojson to_json(const Rational& q) { return to_string(q); }

ojson to_json(const NSClass& c) {
  ojson arr = ojson::array();
  for (const auto& q : c.coeffs()) arr.push_back(to_string(q));
  return arr;
}

ojson to_json(const ContractionSet& s) {
  ojson arr = ojson::array();
  for (int i : s) arr.push_back(i);
  return arr;
}

ojson to_json(const ChernCharacter& ch) {
  ojson o;
  o["rank"] = ch.rank;
  o["c1"] = to_json(ch.c1);
  o["c1_text"] = ch.c1.to_string();
  o["ch2"] = to_string(ch.ch2);
  return o;
}

ojson to_json(const Generator& g) {
  ojson o;
  o["index"] = g.index;
  o["type"] = to_string(g.kind);
  o["kappa"] = g.kappa ? ojson(*g.kappa) : ojson(nullptr);
  o["ch"] = to_json(g.ch);
  o["divisor_note"] = g.divisor_note;
  return o;
}

ojson to_json(const WallRef& w) {
  ojson o;
  o["upper"] = to_json(w.upper);
  o["lower"] = to_json(w.lower);
  o["pivot"] = w.pivot;
  return o;
}

ojson to_json(const Wall& w) {
  ojson o = to_json(w.ref);
  o["equation"] = to_json(w.equation);
  o["witness"] = to_json(w.witness);
  o["witness_upper"] = to_json(w.witness_upper);
  o["witness_lower"] = to_json(w.witness_lower);
  o["eps"] = to_string(w.eps);
  return o;
}

ojson to_json(const SurfaceDescriptor& s) {
  ojson o;
  o["name"] = s.name;
  o["base"] = "P2";
  o["contracted"] = to_json(s.contracted);
  o["remaining"] = s.remaining;
  ojson on = ojson::object();
  for (const auto& [i, row] : s.on) on[std::to_string(i)] = row;
  o["on"] = on;
  return o;
}

ojson to_json(const LocateResult& r) {
  ojson o;
  ojson chambers = ojson::array();
  for (const auto& s : r.chambers) chambers.push_back(to_json(s));
  o["chambers"] = chambers;
  ojson walls = ojson::array();
  for (const auto& w : r.walls) walls.push_back(to_json(w));
  o["walls"] = walls;
  o["outside"] = r.outside;
  return o;
}

ojson to_json(const ModuliReport& r) {
  ojson o;
  o["kind"] = to_string(r.kind);
  o["surface"] = r.surface ? to_json(*r.surface) : ojson(nullptr);
  ojson walls = ojson::array();
  for (const auto& w : r.walls) walls.push_back(to_json(w));
  o["walls"] = walls;
  return o;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  return s == "-0.000000" ? "0.000000" : s;
}

}  // namespace

ojson to_json(const SupportReport& r) {
  ojson o;
  o["c_omega"] = to_string(r.c_omega);
  o["l_sup"] = to_string(r.l_sup);
  o["m_sup"] = to_string(r.m_sup);
  o["m_attained"] = r.m_attained;
  if (r.theta_range) {
    o["theta_range"] = {fixed6(r.theta_range->theta), fixed6(r.theta_range->theta_prime)};
    o["k_theta"] = fixed6(*r.k_theta);
  } else {
    o["theta_range"] = nullptr;
    o["k_theta"] = nullptr;
  }
  return o;
}

ojson contractions_payload(const BlowUpConfig& cfg) {
  ojson list = ojson::array();
  for (const auto& s : all_contractions(cfg)) {
    ojson entry;
    entry["set"] = to_json(s);
    entry["target"] = describe_target(cfg, s).name;
    ojson gens = ojson::array();
    for (const auto& g : generators(cfg, s)) gens.push_back(to_json(g));
    entry["generators"] = gens;
    list.push_back(entry);
  }
  ojson o;
  o["count"] = list.size();
  o["contractions"] = list;
  return o;
}

ojson graph_payload(const BlowUpConfig& cfg, const Rational& eps) {
  auto graph = chamber_graph(cfg, eps);
  ojson nodes = ojson::array();
  for (const auto& s : graph.nodes) {
    ojson node;
    node["set"] = to_json(s);
    node["target"] = describe_target(cfg, s).name;
    nodes.push_back(node);
  }
  ojson edges = ojson::array();
  for (const auto& w : graph.edges) edges.push_back(to_json(w));
  ojson o;
  o["nodes"] = nodes;
  o["edges"] = edges;
  return o;
}

std::string graph_dot(const BlowUpConfig& cfg, const Rational& eps) {
  auto graph = chamber_graph(cfg, eps);
  std::ostringstream out;
  out << "graph chambers {\n";
  for (const auto& s : graph.nodes) {
    out << "  \"" << s.to_string() << "\" [label=\"" << s.to_string() << "\\n"
        << describe_target(cfg, s).name << "\"];\n";
  }
  for (const auto& w : graph.edges) {
    out << "  \"" << w.ref.upper.to_string() << "\" -- \"" << w.ref.lower.to_string()
        << "\" [label=\"E" << w.ref.pivot << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// SVG

std::string slice_svg(const BlowUpConfig& cfg, const SliceMap& map,
                      const std::vector<WallTrace>& traces) {
  static const std::array<const char*, 10> palette = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                                      "#76b7b2", "#edc948", "#b07aa1", "#ff9da7",
                                                      "#9c755f", "#bab0ac"};
  const double plot = 480.0;
  const double margin = 40.0;
  const double legend_w = 260.0;
  const int grid = map.window.grid;
  const double a0 = to_double(map.window.a_min);
  const double a1 = to_double(map.window.a_max);
  const double b0 = to_double(map.window.b_min);
  const double b1 = to_double(map.window.b_max);
  auto px = [&](double a) { return margin + (a - a0) / (a1 - a0) * plot; };
  auto py = [&](double b) { return margin + (b1 - b) / (b1 - b0) * plot; };
  const double cell = plot / grid;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed6(2 * margin + plot + legend_w)
      << "\" height=\"" << fixed6(2 * margin + plot) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int ib = 0; ib < grid; ++ib) {
    for (int ia = 0; ia < grid; ++ia) {
      int label = map.label(ia, ib);
      const char* fill = label >= 0 ? palette[static_cast<std::size_t>(label) % palette.size()]
                                    : (label == SliceMap::kWall ? "#000000" : "#f4f4f4");
      out << "<rect x=\"" << fixed6(margin + ia * cell) << "\" y=\""
          << fixed6(margin + (grid - 1 - ib) * cell) << "\" width=\"" << fixed6(cell)
          << "\" height=\"" << fixed6(cell) << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  out << "</g>\n<g id=\"walls\" stroke=\"#222222\" stroke-width=\"1.5\">\n";
  for (const auto& t : traces) {
    out << "<line x1=\"" << fixed6(px(to_double(t.a0))) << "\" y1=\"" << fixed6(py(to_double(t.b0)))
        << "\" x2=\"" << fixed6(px(to_double(t.a1))) << "\" y2=\"" << fixed6(py(to_double(t.b1)))
        << "\"><title>" << t.curve.to_string() << "</title></line>\n";
  }
  out << "</g>\n<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double y = margin;
  for (std::size_t k = 0; k < map.chambers.size(); ++k) {
    out << "<rect x=\"" << fixed6(2 * margin + plot) << "\" y=\"" << fixed6(y)
        << "\" width=\"14\" height=\"14\" fill=\"" << palette[k % palette.size()] << "\"/>\n";
    out << "<text x=\"" << fixed6(2 * margin + plot + 20) << "\" y=\"" << fixed6(y + 12) << "\">S="
        << map.chambers[k].to_string() << " : " << describe_target(cfg, map.chambers[k]).name
        << "</text>\n";
    y += 20;
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Command dispatch

namespace {

struct Loaded {
  std::string file;
  std::string digest;
  ConfigDocument doc;
  BlowUpConfig cfg;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read configuration file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Loaded out;
  out.file = std::filesystem::path(path).filename().string();
  out.digest = sha256_hex(text);
  out.doc = parse_config_text(text);
  out.cfg = out.doc.to_config();
  return out;
}

ojson envelope(const std::string& command, const ojson& arguments, const Loaded& input) {
  ojson o;
  o["engine"] = "stabchamber";
  o["version"] = kEngineVersion;
  o["command"] = command;
  o["arguments"] = arguments;
  o["input"] = {{"file", input.file}, {"sha256", input.digest}};
  auto name = bundled_example_name(input.cfg);
  o["example"] = name ? ojson(*name) : ojson(nullptr);
  return o;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += " ";
    out += p;
  }
  return out;
}

ojson run_slice_like(const Loaded& in, const std::string& origin_text, const std::string& u_text,
                     const std::string& v_text, const std::string& window_text, int grid,
                     SliceMap& map_out, std::vector<WallTrace>& traces_out) {
  const int n = in.cfg.n();
  auto origin = origin_text.empty() ? NSClass::zero(n) : parse_class(origin_text, n);
  auto u = u_text.empty() ? NSClass::hyperplane(n) : parse_class(u_text, n);
  NSClass v;
  if (!v_text.empty()) {
    v = parse_class(v_text, n);
  } else if (n >= 1) {
    v = NSClass::exceptional(n, 1);
  } else {
    throw PreconditionError("a slice of NS(P2) needs an explicit second direction");
  }
  SliceWindow window;
  window.a_min = 0;
  window.a_max = 2;
  window.b_min = -2;
  window.b_max = 2;
  if (!window_text.empty()) {
    auto parts = tokens(window_text);
    if (parts.size() != 4) throw ParseError("--window takes four numbers: a_min a_max b_min b_max");
    window.a_min = parse_rational(parts[0]);
    window.a_max = parse_rational(parts[1]);
    window.b_min = parse_rational(parts[2]);
    window.b_max = parse_rational(parts[3]);
  }
  window.grid = grid;
  map_out = slice(in.cfg, origin, u, v, window);
  traces_out = point_class_walls(in.cfg, origin, u, v, window);

  ojson o;
  o["origin"] = to_json(origin);
  o["u"] = to_json(u);
  o["v"] = to_json(v);
  o["window"] = {to_string(window.a_min), to_string(window.a_max), to_string(window.b_min),
                 to_string(window.b_max)};
  o["grid"] = grid;
  ojson legend = ojson::array();
  for (std::size_t k = 0; k < map_out.chambers.size(); ++k) {
    auto count = std::count(map_out.labels.begin(), map_out.labels.end(), static_cast<int>(k));
    legend.push_back({{"label", k},
                      {"set", to_json(map_out.chambers[k])},
                      {"surface", describe_target(in.cfg, map_out.chambers[k]).name},
                      {"cells", count}});
  }
  o["legend"] = legend;
  o["wall_cells"] = std::count(map_out.labels.begin(), map_out.labels.end(), SliceMap::kWall);
  o["outside_cells"] =
      std::count(map_out.labels.begin(), map_out.labels.end(), SliceMap::kOutside);
  o["labels"] = map_out.labels;
  ojson traces = ojson::array();
  for (const auto& t : traces_out) {
    traces.push_back({{"curve", to_json(t.curve)},
                      {"curve_text", t.curve.to_string()},
                      {"from", {to_string(t.a0), to_string(t.b0)}},
                      {"to", {to_string(t.a1), to_string(t.b1)}}});
  }
  o["point_class_walls"] = traces;
  return o;
}

std::vector<ContractionSet> parse_chain(const std::string& text) {
  std::vector<ContractionSet> chain;
  std::string cur;
  for (char c : text + ";") {
    if (c == ';') {
      chain.push_back(parse_set(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return chain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact wall-and-chamber engine for blow-ups of the projective plane",
               "stabchamber"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Include wall-clock timing in the report");

  std::string config_path;
  std::vector<std::string> class_parts;
  std::string eps_text = "1/100";
  std::string format = "json";
  std::string origin_text, u_text, v_text, window_text, svg_path, set_text, chain_text;
  int grid = 50;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  int path_samples = 1000;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Configuration JSON file")->required();
  };
  auto add_class = [&](CLI::App* sub) {
    sub->add_option("class", class_parts, "Class coordinates (H, E1, ..., EN); rationals allowed")
        ->required()
        ->allow_extra_args();
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration");
  add_config(validate_cmd);

  auto* contractions_cmd = app.add_subcommand("contractions", "List contractions and generators");
  add_config(contractions_cmd);

  auto* locate_cmd = app.add_subcommand("locate", "Locate a class among chambers and walls");
  add_config(locate_cmd);
  add_class(locate_cmd);

  auto* graph_cmd = app.add_subcommand("graph", "Chamber adjacency graph with wall witnesses");
  add_config(graph_cmd);
  graph_cmd->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  graph_cmd->add_option("--eps", eps_text, "Wall perturbation (rational)");

  auto* slice_cmd = app.add_subcommand("slice", "Region map of a 2D slice");
  add_config(slice_cmd);
  slice_cmd->add_option("--origin", origin_text, "Slice origin (default 0)");
  slice_cmd->add_option("--u", u_text, "First direction (default H)");
  slice_cmd->add_option("--v", v_text, "Second direction (default E1)");
  slice_cmd->add_option("--window", window_text, "a_min a_max b_min b_max (default 0 2 -2 2)");
  slice_cmd->add_option("--grid", grid, "Cells per axis")->check(CLI::Range(1, 2000));
  slice_cmd->add_option("--svg", svg_path, "Write an SVG picture to this path");

  auto* support_cmd = app.add_subcommand("support", "Support-property quantities");
  add_config(support_cmd);
  support_cmd->add_option("--set", set_text, "Contraction set S, e.g. \"1 2\"")->required();
  add_class(support_cmd);
  support_cmd->add_option("--seed", seed, "Seed of the sector-bound sampling check");
  support_cmd->add_option("--samples", samples, "Sector-bound samples");

  auto* path_cmd = app.add_subcommand("path", "Path realising a chain of blow-downs");
  add_config(path_cmd);
  path_cmd->add_option("--chain", chain_text, "Chain of sets, e.g. \";1;1,2\" (default greedy)");
  path_cmd->add_option("--samples", path_samples, "Points sampled along the path")
      ->check(CLI::Range(2, 1000000));
  path_cmd->add_option("--eps", eps_text, "Wall perturbation (rational)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "stabchamber: " << e.what() << "\n";
    return kInputFailure;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    auto* sub = app.get_subcommands().front();
    command = sub->get_name();
    Loaded in = load(config_path);
    ojson report;
    int code = kOk;

    if (sub == validate_cmd) {
      report = envelope(command, ojson::object(), in);
      auto violations = validate(in.cfg);
      ojson list = ojson::array();
      for (const auto& v : violations) {
        list.push_back({{"rule", v.rule}, {"indices", v.indices}, {"message", v.message}});
      }
      report["result"] = {{"valid", violations.empty()}, {"n", in.cfg.n()}, {"violations", list}};
      code = violations.empty() ? kOk : kDomainFailure;
    } else {
      require_valid(in.cfg);
      if (sub == contractions_cmd) {
        report = envelope(command, ojson::object(), in);
        report["result"] = contractions_payload(in.cfg);
      } else if (sub == locate_cmd) {
        auto alpha = parse_class(join(class_parts), in.cfg.n());
        report = envelope(command, {{"class", to_json(alpha)}}, in);
        ojson result = to_json(locate(in.cfg, alpha));
        result["class_text"] = alpha.to_string();
        result["moduli"] = to_json(moduli_of_point(in.cfg, alpha));
        report["result"] = result;
      } else if (sub == graph_cmd) {
        auto eps = parse_rational(eps_text);
        if (format == "dot") {
          out << graph_dot(in.cfg, eps);
          err << "stabchamber: graph finished\n";
          return kOk;
        }
        report = envelope(command, {{"format", format}, {"eps", to_string(eps)}}, in);
        report["result"] = graph_payload(in.cfg, eps);
      } else if (sub == slice_cmd) {
        SliceMap map;
        std::vector<WallTrace> traces;
        report = envelope(command,
                          {{"origin", origin_text},
                           {"u", u_text},
                           {"v", v_text},
                           {"window", window_text},
                           {"grid", grid},
                           {"svg", svg_path.empty() ? ojson(nullptr)
                                                    : ojson(std::filesystem::path(svg_path)
                                                                .filename()
                                                                .string())}},
                          in);
        report["result"] =
            run_slice_like(in, origin_text, u_text, v_text, window_text, grid, map, traces);
        if (!svg_path.empty()) {
          std::ofstream svg(svg_path, std::ios::binary);
          if (!svg) throw ParseError("cannot write SVG file '" + svg_path + "'");
          svg << slice_svg(in.cfg, map, traces);
        }
      } else if (sub == support_cmd) {
        auto s = parse_set(set_text);
        auto alpha = parse_class(join(class_parts), in.cfg.n());
        require_valid(in.cfg, s);
        report = envelope(command,
                          {{"set", to_json(s)},
                           {"class", to_json(alpha)},
                           {"seed", seed},
                           {"samples", samples}},
                          in);
        if (!a_dagger_closure_contains(in.cfg, s, alpha)) {
          throw PreconditionError("class " + alpha.to_string() +
                                  " is outside the closure of the chamber of " + s.to_string());
        }
        auto support = support_quantities(in.cfg, s, alpha);
        ojson result = to_json(support);
        if (support.theta_range) {
          auto check = check_sector_bound(support.theta_range->theta, samples, 8, seed);
          result["sector_bound_check"] = {{"theta", fixed6(check.theta)},
                                          {"bound", fixed6(check.bound)},
                                          {"samples", check.samples},
                                          {"violations", check.violations},
                                          {"min_ratio", fixed6(check.min_ratio)}};
        } else {
          result["sector_bound_check"] = nullptr;
        }
        report["result"] = result;
      } else if (sub == path_cmd) {
        auto eps = parse_rational(eps_text);
        auto chain = chain_text.empty() ? default_mmp_chain(in.cfg) : parse_chain(chain_text);
        for (const auto& s : chain) require_valid(in.cfg, s);
        auto vertices = mmp_path(in.cfg, chain, eps);
        ojson chain_json = ojson::array();
        for (const auto& s : chain) chain_json.push_back(to_json(s));
        report = envelope(command,
                          {{"chain", chain_json}, {"samples", path_samples}, {"eps", to_string(eps)}},
                          in);
        ojson verts = ojson::array();
        for (const auto& v : vertices) verts.push_back(to_json(v));
        // Runs of identical verdicts along the sampled path.
        ojson runs = ojson::array();
        std::string last;
        int crossings = 0;
        std::optional<ContractionSet> last_chamber;
        for (int k = 0; k < path_samples; ++k) {
          auto verdict = locate(in.cfg, path_point(vertices, ratio(k, path_samples - 1)));
          ojson v = to_json(verdict);
          std::string key = v.dump();
          if (key != last) {
            runs.push_back({{"first_sample", k}, {"verdict", v}});
            last = key;
          }
          if (verdict.chambers.size() == 1) {
            if (last_chamber && *last_chamber != verdict.chambers.front()) ++crossings;
            last_chamber = verdict.chambers.front();
          }
        }
        report["result"] = {{"vertices", verts},
                            {"runs", runs},
                            {"chamber_changes", crossings},
                            {"surfaces", [&] {
                               ojson names = ojson::array();
                               for (const auto& s : chain) {
                                 names.push_back(describe_target(in.cfg, s).name);
                               }
                               return names;
                             }()}};
      }
    }

    const auto elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (timing) report["timing_ms"] = elapsed;
    out << report.dump(2) << "\n";
    err << "stabchamber: " << command << " finished in " << fixed6(elapsed) << " ms\n";
    return code;
  } catch (const ParseError& e) {
    err << "stabchamber: " << command << ": " << e.what() << "\n";
    return kInputFailure;
  } catch (const Error& e) {
    err << "stabchamber: " << command << ": " << e.what() << "\n";
    return kDomainFailure;
  }
}

}  // namespace stabchamber::cli
