#include "sconn/suite.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sconn/errors.hpp"
#include "sconn/farey.hpp"

namespace sconn {

namespace {

bool wanted(const RunConfig& c, const std::string& kind) { return c.kinds.empty() || c.kinds.count(kind) > 0; }

int farey_exact(const Slope& a, const Slope& b) { return farey_distance(to_farey(a), to_farey(b)); }

std::string holonomy_text(const SaddleConnection& sc) {
  std::ostringstream os;
  os << "(" << sc.holonomy.x << "," << sc.holonomy.y << ")";
  return os.str();
}

class Picker {
 public:
  Picker(std::mt19937_64& rng, std::size_t n) : rng_(rng), dist_(0, n - 1) {}
  std::size_t operator()() { return dist_(rng_); }

 private:
  std::mt19937_64& rng_;
  std::uniform_int_distribution<std::size_t> dist_;
};

void validate(const RunConfig& c) {
  for (const auto& k : c.kinds)
    if (std::find(certificate_kinds().begin(), certificate_kinds().end(), k) == certificate_kinds().end())
      throw InputError("unknown certificate kind '" + k + "'");
  if (c.surface_path.empty()) throw InputError("no surface given");
  if (c.lsq <= 0) throw InputError("L^2 must be positive");
  if (c.growth <= 1) throw InputError("growth must exceed 1");
  if (c.ladder_lsq <= 0 || c.ladder_lsq > c.lsq) throw InputError("ladder L^2 must lie in (0, L^2]");
  if (c.k_max < 0) throw InputError("k_max must be non-negative");
}

std::string header(const RunConfig& c, bool torus) {
  std::ostringstream os;
  os << "# surface=" << c.surface_path << " lsq=" << to_string(c.lsq) << " growth=" << to_string(c.growth)
     << " ladder_lsq=" << to_string(c.ladder_lsq) << " theta0=" << to_string(c.theta0) << " kmax=" << c.k_max
     << " pairs=" << c.pairs << " quadruples=" << c.quadruples << " triangles=" << c.triangles
     << " qi_samples=" << c.qi_samples << " seed=" << c.seed << " farey_oracle=" << (torus ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace

const std::vector<std::string>& certificate_kinds() {
  static const std::vector<std::string> kinds = {"ladder-properties", "bottleneck", "linking", "centre",
                                                 "qi",                "slice-diameter", "hasse"};
  return kinds;
}

bool SuiteResult::pass() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.pass; });
}

int exit_code(const SuiteResult& r) { return r.pass() ? kExitPass : kExitCertificateFailure; }

bool is_square_torus(const TriangulatedSurface& t) {
  if (t.num_triangles() != 2) return false;
  std::vector<Vec2> h;
  for (const auto& sc : enumerate(t, Rational(2))) h.push_back(sc.canonical_holonomy());
  std::vector<Vec2> want = {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1, -1)};
  if (h.size() != want.size()) return false;
  for (const auto& w : want)
    if (std::find(h.begin(), h.end(), w) == h.end()) return false;
  return true;
}

SaddleConnection select_saddle_connection(const TriangulatedSurface& t, const std::string& spec) {
  std::string body = spec;
  int index = 0;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    body = spec.substr(0, colon);
    try {
      std::size_t used = 0;
      index = std::stoi(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1 || index < 0) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad saddle connection index in '" + spec + "'");
    }
  }
  auto comma = body.find(',');
  if (comma == std::string::npos) throw InputError("saddle connection spec must be x,y[:k], got '" + spec + "'");
  Vec2 h(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
  if (h.x == 0 && h.y == 0) throw InputError("zero holonomy");
  Vec2 c = canonical_direction(h);
  int seen = 0;
  for (const auto& sc : enumerate(t, norm2(h)))
    if (sc.canonical_holonomy() == c && seen++ == index) return sc;
  throw InputError("no saddle connection with holonomy " + body + " and index " + std::to_string(index));
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

SuiteResult run_suite(const RunConfig& config) {
  validate(config);
  const TriangulatedSurface t = triangulate(load_surface(config.surface_path));
  const bool torus = is_square_torus(t);
  std::mt19937_64 rng(config.seed);
  SuiteResult result;

  const bool slices_wanted = wanted(config, "hasse") || wanted(config, "slice-diameter") || wanted(config, "qi");
  Rational top = config.lsq;
  if (slices_wanted) top *= config.growth * config.growth;
  TruncatedGraph big = build_sc_graph(t, top);
  TruncatedGraph g = slices_wanted ? restrict_sc_graph(big, config.lsq) : big;

  std::vector<std::size_t> short_ids;
  for (std::size_t i = 0; i < g.scs.size(); ++i)
    if (g.scs[i].length2() <= config.ladder_lsq) short_ids.push_back(i);
  if (short_ids.size() < 3) throw InputError("fewer than three saddle connections below the ladder L^2");
  Picker pick(rng, short_ids.size());
  auto draw = [&] { return g.scs[short_ids[pick()]]; };

  // ladders and bottlenecks
  if (wanted(config, "ladder-properties") || wanted(config, "bottleneck")) {
    Certificate props;
    props.kind = "ladder-properties";
    props.constants = "endpoints,disjoint,sign,monotone";
    props.semantics = Semantics::proves_true_claim;
    Certificate neck;
    neck.kind = "bottleneck";
    neck.constants = "3";
    neck.semantics = Semantics::proves_true_claim;
    std::uniform_int_distribution<int> via(0, g.size() - 1);
    for (std::size_t k = 0; k < config.pairs; ++k) {
      SaddleConnection a = draw(), b = draw();
      while (a == b) b = draw();
      LadderPair lp = ladder_paths(t, a, b);
      props.merge(check_ladder_properties(t, lp));
      auto path = detour_path(g.graph, vertex_of(g, b), via(rng), vertex_of(g, a));
      if (path.empty()) {
        neck.record(false, holonomy_text(b) + " and " + holonomy_text(a) + " are disconnected in the truncation");
        continue;
      }
      neck.merge(check_bottleneck(lp.right, path, g));
      neck.merge(check_bottleneck(lp.left, path, g));
    }
    props.note = std::to_string(config.pairs) + " pairs";
    neck.note = std::to_string(config.pairs) + " pairs with detour paths";
    if (wanted(config, "ladder-properties")) result.certificates.push_back(props);
    if (wanted(config, "bottleneck")) result.certificates.push_back(neck);
  }

  if (wanted(config, "linking")) {
    Certificate link;
    link.kind = "linking";
    link.constants = "2";
    link.semantics = Semantics::proves_true_claim;
    std::size_t found = 0, draws = 0;
    int worst = 0;
    for (; found < config.quadruples && draws < 200 * config.quadruples + 200; ++draws) {
      SaddleConnection a[4] = {draw(), draw(), draw(), draw()};
      Slope s[4];
      for (int i = 0; i < 4; ++i) s[i] = slope_of(a[i]);
      bool distinct = true;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) distinct = distinct && !(s[i] == s[j]);
      if (!distinct || !slopes_separated(s[0], s[2], s[1], s[3])) continue;
      if (crosses(t, a[0], a[2]) || crosses(t, a[1], a[3])) continue;
      auto r = check_linking(t, a[0], a[1], a[2], a[3]);
      link.merge(r.certificate);
      worst = std::max(worst, r.distance);
      ++found;
    }
    link.note = std::to_string(found) + " of " + std::to_string(draws) + " draws satisfy the hypotheses";
    if (found > 0) link.add_witness("largest certified distance " + std::to_string(worst));
    result.certificates.push_back(link);
  }

  if (wanted(config, "centre")) {
    Certificate centre;
    centre.kind = "centre";
    centre.constants = "4";
    centre.semantics = Semantics::at_truncation;
    Certificate thin;
    thin.kind = "centre";
    thin.constants = "4-centre";
    thin.semantics = Semantics::at_truncation;
    for (std::size_t k = 0; k < config.triangles; ++k) {
      SaddleConnection a1 = draw(), a2 = draw(), a3 = draw();
      if (a1 == a2 || a2 == a3 || a1 == a3) {
        --k;
        continue;
      }
      std::string tri = holonomy_text(a1) + " " + holonomy_text(a2) + " " + holonomy_text(a3);
      try {
        auto fc = four_centre(t, a1, a2, a3, g);
        centre.merge(fc.certificate);
        if (torus && fc.triple) {
          const SaddleConnection* a[3] = {&a1, &a2, &a3};
          for (int i = 0; i < 3; ++i) {
            int exact = farey_exact(slope_of(*a[i]), slope_of(*a[(i + 1) % 3]));
            centre.record(fc.sides[i].size() == static_cast<std::size_t>(exact) + 1,
                          tri + " side " + std::to_string(i) + " is not a Farey geodesic");
          }
        }
      } catch (const PreconditionError& e) {
        centre.record(false, tri + " " + e.what());
      }
      auto kc = find_k_centre(g.graph, vertex_of(g, a1), vertex_of(g, a2), vertex_of(g, a3), 4);
      thin.record(kc.has_value(), tri + " has no 4-centre in the truncation");
    }
    centre.note = std::to_string(config.triangles) + " triangles, centre from pairwise ladders";
    thin.note = std::to_string(config.triangles) + " triangles, any vertex";
    result.certificates.push_back(centre);
    result.certificates.push_back(thin);
  }

  TruncatedGraph sg = build_slope_graph(g);
  if (wanted(config, "qi")) {
    Certificate quot;
    quot.kind = "qi";
    quot.constants = "(2,1)";
    quot.semantics = Semantics::at_truncation;
    try {
      Graph q = quotient_graph(g.graph, sg.slope_index, 1);
      quot.record(q.adj == sg.graph.adj, "parallel-class quotient differs from the slope graph");
      auto check = check_quotient_qi(g.graph, q, sg.slope_index, 1, config.qi_samples, rng);
      for (std::size_t i = 0; i < check.pairs; ++i) quot.record(true);
      for (std::size_t i = 0; i < check.violations; ++i)
        quot.record(false, i < check.witnesses.size() ? check.witnesses[i] : std::string());
    } catch (const PreconditionError& e) {
      quot.record(false, e.what());
    }
    result.certificates.push_back(quot);
  }

  std::string tree_dot, slice_csv;
  if (slices_wanted) {
    SliceRun run;
    try {
      run = build_slice_run(big, config.theta0, config.k_max, config.lsq, config.growth, 3);
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
    for (auto& c : certify_slices(run))
      if (wanted(config, c.kind)) result.certificates.push_back(c);
    if (wanted(config, "qi")) {
      ExactDistance exact;
      if (torus) exact = farey_exact;
      for (auto& c : qi_certificate(run, config.qi_samples, rng, exact)) result.certificates.push_back(c);
    }
    std::ostringstream dot, csv;
    write_tree_dot(dot, run.slices[0].tree);
    write_slice_csv(csv, run.slices[0], run.slope_graphs[0]);
    tree_dot = dot.str();
    slice_csv = csv.str();
  }

  std::ostringstream report;
  report << header(config, torus);
  write_report(report, result.certificates);
  result.report = report.str();

  if (!config.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create '" + config.out_dir + "': " + ec.message());
    auto path = [&](const char* name) { return (std::filesystem::path(config.out_dir) / name).string(); };
    std::ostringstream scd, sgd;
    write_dot(scd, g, "sc_graph");
    write_dot(sgd, sg, "slope_graph");
    write_file_atomic(path("sc_graph.dot"), scd.str());
    write_file_atomic(path("slope_graph.dot"), sgd.str());
    if (slices_wanted) {
      write_file_atomic(path("hasse.dot"), tree_dot);
      write_file_atomic(path("slices.csv"), slice_csv);
    }
    write_file_atomic(path("report.txt"), result.report);
  }
  return result;
}

}  // namespace sconn
