// Command line front end: enumeration, graphs, ladders, Farey oracle, Hasse trees,
// certificates and straightening.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sconn/errors.hpp"
#include "sconn/farey.hpp"
#include "sconn/geodesics.hpp"
#include "sconn/suite.hpp"

using namespace sconn;

namespace {

struct Output {
  std::string path;  // empty: stdout
  void emit(const std::string& text) const {
    if (path.empty())
      std::cout << text;
    else
      write_file_atomic(path, text);
  }
};

TriangulatedSurface load(const std::string& path) { return triangulate(load_surface(path)); }

std::string sc_row(const SaddleConnection& sc) {
  std::ostringstream os;
  os << sc.holonomy.x << "," << sc.holonomy.y << "," << sc.start_vertex << "," << sc.end_vertex << ","
     << to_string(slope_of(sc));
  return os.str();
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("bad " + what + " '" + text + "'");
}

Corner parse_corner(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) throw InputError("corner must be T.I, got '" + text + "'");
  Corner c{parse_int(text.substr(0, dot), "triangle"), parse_int(text.substr(dot + 1), "corner index")};
  if (c.index < 0 || c.index > 2) throw InputError("corner index must be 0, 1 or 2");
  return c;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// "T.I/h1,h2,.../T.I"; crossing parameters are set to 1/2
CombinatorialArc parse_arc(const TriangulatedSurface& t, const std::string& spec) {
  auto parts = split(spec, '/');
  if (parts.size() != 3) throw InputError("arc must be T.I/h1,h2,.../T.I, got '" + spec + "'");
  CombinatorialArc arc;
  arc.surface = t.id();
  arc.start = parse_corner(parts[0]);
  arc.end = parse_corner(parts[2]);
  if (!parts[1].empty())
    for (const auto& h : split(parts[1], ',')) arc.crossings.push_back({parse_int(h, "half-edge"), Rational(1, 2)});
  for (const auto& c : arc.crossings)
    if (c.half_edge < 0 || c.half_edge >= t.num_half_edges()) throw InputError("half-edge out of range");
  for (Corner c : {arc.start, arc.end})
    if (c.triangle < 0 || c.triangle >= t.num_triangles()) throw InputError("triangle out of range");
  if (!is_valid(t, arc)) throw InputError("arc '" + spec + "' is not a consistent crossing sequence");
  return arc;
}

// "T.I:x1,y1;x2,y2;..."
CombinatorialArc parse_polyline(const TriangulatedSurface& t, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("polyline must be T.I:x,y;x,y;..., got '" + spec + "'");
  Corner start = parse_corner(spec.substr(0, colon));
  if (start.triangle < 0 || start.triangle >= t.num_triangles()) throw InputError("triangle out of range");
  std::vector<Vec2> steps;
  for (const auto& p : split(spec.substr(colon + 1), ';')) {
    auto xy = split(p, ',');
    if (xy.size() != 2) throw InputError("polyline point must be x,y, got '" + p + "'");
    steps.emplace_back(parse_rational(xy[0]), parse_rational(xy[1]));
  }
  try {
    return trace_polyline(t, start, steps);
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  }
}

FareySlope farey_arg(const std::string& text) { return to_farey(parse_slope(text)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle connection graphs, ladders and slice trees of flat surfaces"};
  app.set_config("--config", "", "TOML/INI file with option values; flags win");
  app.require_subcommand(1);

  std::string surface, lsq_text = "50", out_path;

  // enumerate
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Saddle connections as CSV");
  enumerate_cmd->add_option("--surface", surface, "Surface file")->required();
  enumerate_cmd->add_option("--lsq", lsq_text, "Squared length bound");
  enumerate_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // graph / slopes
  std::string format = "dot";
  auto* graph_cmd = app.add_subcommand("graph", "Truncated saddle connection graph");
  auto* slopes_cmd = app.add_subcommand("slopes", "Truncated graph of slopes");
  for (auto* c : {graph_cmd, slopes_cmd}) {
    c->add_option("--surface", surface, "Surface file")->required();
    c->add_option("--lsq", lsq_text, "Squared length bound");
    c->add_option("--format", format, "dot or csv (distance matrix)")->check(CLI::IsMember({"dot", "csv"}));
    c->add_option("--out", out_path, "Output file (default stdout)");
  }

  // ladder
  std::string alpha_spec, beta_spec;
  bool dedup = false;
  auto* ladder_cmd = app.add_subcommand("ladder", "Both ladder paths from beta to alpha as CSV");
  ladder_cmd->add_option("--surface", surface, "Surface file")->required();
  ladder_cmd->add_option("--alpha", alpha_spec, "Holonomy x,y[:k] (k-th parallel copy)")->required();
  ladder_cmd->add_option("--beta", beta_spec, "Holonomy x,y[:k]")->required();
  ladder_cmd->add_flag("--dedup", dedup, "Drop consecutive repeats");
  ladder_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // farey
  std::string fa, fb;
  int height = 5;
  auto* farey_cmd = app.add_subcommand("farey", "Farey graph oracle");
  farey_cmd->require_subcommand(1);
  auto* fdist = farey_cmd->add_subcommand("dist", "Exact Farey distance");
  auto* ffan = farey_cmd->add_subcommand("fan", "Boundary paths of the Farey polygon as CSV");
  auto* fadj = farey_cmd->add_subcommand("adjacent", "Farey adjacency");
  for (auto* c : {fdist, ffan, fadj}) {
    c->add_option("a", fa, "Slope p/q")->required();
    c->add_option("b", fb, "Slope p/q")->required();
  }
  auto* fgraph = farey_cmd->add_subcommand("graph", "Farey graph on slopes of bounded height as DOT");
  fgraph->add_option("--height", height, "max(|p|, |q|) bound")->check(CLI::Range(0, 200));

  // tree
  std::string theta0_text = "1/0", growth_text = "3/2", out_dir = ".";
  int k_max = 3;
  auto* tree_cmd = app.add_subcommand("tree", "Hasse tree as DOT and slices as CSV");
  tree_cmd->add_option("--surface", surface, "Surface file")->required();
  tree_cmd->add_option("--theta0", theta0_text, "Basepoint slope");
  tree_cmd->add_option("--kmax", k_max, "Deepest interval level");
  tree_cmd->add_option("--lsq", lsq_text, "First truncation");
  tree_cmd->add_option("--growth", growth_text, "Truncation growth per stability step");
  tree_cmd->add_option("--out-dir", out_dir, "Writes hasse.dot and slices.csv here");

  // certify
  RunConfig rc;
  std::string kind = "all", ladder_lsq_text = "50", suite_lsq_text = "6000", seed_text = "1", suite_out;
  auto* certify_cmd = app.add_subcommand("certify", "Run certificates and print the report");
  certify_cmd->add_option("kind", kind, "Certificate kind or all")->required();
  certify_cmd->add_option("--surface", surface, "Surface file")->required();
  certify_cmd->add_option("--lsq", suite_lsq_text, "Graph truncation and first slice step");
  certify_cmd->add_option("--growth", growth_text, "Slice truncation growth");
  certify_cmd->add_option("--ladder-lsq", ladder_lsq_text, "Ladder endpoints are at most this long (squared)");
  certify_cmd->add_option("--theta0", theta0_text, "Basepoint slope");
  certify_cmd->add_option("--kmax", k_max, "Deepest interval level");
  certify_cmd->add_option("--pairs", rc.pairs, "Ladder and bottleneck instances");
  certify_cmd->add_option("--quadruples", rc.quadruples, "Linking instances sought");
  certify_cmd->add_option("--triangles", rc.triangles, "Triangles for centres");
  certify_cmd->add_option("--qi-samples", rc.qi_samples, "Sampled pairs per quasi-isometry check");
  certify_cmd->add_option("--seed", seed_text, "Random seed");
  certify_cmd->add_option("--out-dir", suite_out, "Writes graphs, tree, slices and report here");

  // straighten
  std::string arc_spec, polyline_spec;
  auto* straighten_cmd = app.add_subcommand("straighten", "Geodesic representative of an arc as CSV");
  straighten_cmd->add_option("--surface", surface, "Surface file")->required();
  auto* arc_opt = straighten_cmd->add_option("--arc", arc_spec, "T.I/h1,h2,.../T.I: start corner, crossed half-edges, end corner");
  auto* poly_opt = straighten_cmd->add_option("--polyline", polyline_spec, "T.I:x,y;x,y;...: displacements from a corner");
  arc_opt->excludes(poly_opt);
  straighten_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    Output out{out_path};
    if (enumerate_cmd->parsed()) {
      auto t = load(surface);
      std::ostringstream os;
      os << "holonomy_x,holonomy_y,start,end,slope\n";
      for (const auto& sc : enumerate(t, parse_rational(lsq_text))) os << sc_row(sc) << "\n";
      out.emit(os.str());
    } else if (graph_cmd->parsed() || slopes_cmd->parsed()) {
      auto t = load(surface);
      auto g = build_sc_graph(t, parse_rational(lsq_text));
      if (slopes_cmd->parsed()) g = build_slope_graph(g);
      std::ostringstream os;
      if (format == "dot")
        write_dot(os, g, graph_cmd->parsed() ? "sc_graph" : "slope_graph");
      else
        write_distance_csv(os, g);
      out.emit(os.str());
    } else if (ladder_cmd->parsed()) {
      auto t = load(surface);
      auto alpha = select_saddle_connection(t, alpha_spec);
      auto beta = select_saddle_connection(t, beta_spec);
      if (alpha == beta) throw InputError("alpha and beta are the same saddle connection");
      auto lp = ladder_paths(t, alpha, beta);
      std::ostringstream os;
      os << "side,index,holonomy_x,holonomy_y,start,end,slope\n";
      for (const auto* p : {&lp.right, &lp.left}) {
        auto entries = dedup ? p->dedup() : p->entries;
        for (std::size_t i = 0; i < entries.size(); ++i)
          os << to_string(p->side) << "," << i << "," << sc_row(entries[i]) << "\n";
      }
      out.emit(os.str());
    } else if (farey_cmd->parsed()) {
      if (fgraph->parsed()) {
        auto slopes = slopes_of_height(height);
        std::ostringstream os;
        os << "graph farey {\n";
        for (const auto& s : slopes) os << "  \"" << to_string(s) << "\";\n";
        for (std::size_t i = 0; i < slopes.size(); ++i)
          for (std::size_t j = i + 1; j < slopes.size(); ++j)
            if (farey_adjacent(slopes[i], slopes[j]))
              os << "  \"" << to_string(slopes[i]) << "\" -- \"" << to_string(slopes[j]) << "\";\n";
        os << "}\n";
        std::cout << os.str();
      } else {
        FareySlope a = farey_arg(fa), b = farey_arg(fb);
        if (fdist->parsed()) std::cout << farey_distance(a, b) << "\n";
        if (fadj->parsed()) std::cout << (farey_adjacent(a, b) ? "true" : "false") << "\n";
        if (ffan->parsed()) {
          if (a == b) throw InputError("fan needs two distinct slopes");
          auto fan = farey_fan(a, b);
          std::cout << "side,index,slope\n";
          for (std::size_t i = 0; i < fan.right.size(); ++i) std::cout << "right," << i << "," << to_string(fan.right[i]) << "\n";
          for (std::size_t i = 0; i < fan.left.size(); ++i) std::cout << "left," << i << "," << to_string(fan.left[i]) << "\n";
        }
      }
    } else if (tree_cmd->parsed()) {
      auto t = load(surface);
      if (k_max < 0) throw InputError("kmax must be non-negative");
      SliceRun run;
      try {
        run = build_slice_run(t, parse_slope(theta0_text), k_max, parse_rational(lsq_text), parse_rational(growth_text));
      } catch (const PreconditionError& e) {
        throw InputError(e.what());
      }
      std::ostringstream dot, csv;
      write_tree_dot(dot, run.slices[0].tree);
      write_slice_csv(csv, run.slices[0], run.slope_graphs[0]);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
      write_file_atomic((std::filesystem::path(out_dir) / "hasse.dot").string(), dot.str());
      write_file_atomic((std::filesystem::path(out_dir) / "slices.csv").string(), csv.str());
    } else if (certify_cmd->parsed()) {
      rc.surface_path = surface;
      rc.lsq = parse_rational(suite_lsq_text);
      rc.growth = parse_rational(growth_text);
      rc.ladder_lsq = parse_rational(ladder_lsq_text);
      rc.theta0 = parse_slope(theta0_text);
      rc.k_max = k_max;
      try {
        std::size_t used = 0;
        rc.seed = std::stoull(seed_text, &used);
        if (used != seed_text.size()) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("bad seed '" + seed_text + "'");
      }
      rc.out_dir = suite_out;
      if (kind != "all") rc.kinds = {kind};
      auto result = run_suite(rc);
      std::cout << result.report;
      return exit_code(result);
    } else if (straighten_cmd->parsed()) {
      auto t = load(surface);
      CombinatorialArc arc;
      if (!arc_spec.empty())
        arc = parse_arc(t, arc_spec);
      else if (!polyline_spec.empty())
        arc = parse_polyline(t, polyline_spec);
      else
        throw InputError("straighten needs --arc or --polyline");
      std::ostringstream os;
      os << "index,holonomy_x,holonomy_y,start,end,slope\n";
      auto pieces = straighten(t, arc);
      for (std::size_t i = 0; i < pieces.size(); ++i) os << i << "," << sc_row(pieces[i]) << "\n";
      out.emit(os.str());
    }
  } catch (const StabilityError& e) {
    std::cerr << "stability refusal: " << e.what() << "; " << e.suggestion() << "\n";
    return kExitStabilityRefusal;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitPass;
}
