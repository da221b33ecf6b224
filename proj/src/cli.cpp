#include "sos/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "sos/lattice.hpp"
#include "sos/predictor.hpp"
#include "sos/sosperm.hpp"

namespace sos {

using nlohmann::json;

std::string RunConfig::text() const {
  json j{{"command", command}, {"alphas", alphas},
         {"n", n},             {"n_from", n_from},
         {"n_to", n_to},       {"n_step", n_step},
         {"n_log2_from", n_log2_from}, {"n_log2_to", n_log2_to},
         {"format", format},   {"digits", digits},
         {"jobs", jobs},       {"cap", cap},
         {"lsvk", lsvk},       {"out", out_path}};
  return j.dump();
}

RunConfig RunConfig::parse_text(const std::string& text) {
  json j = json::parse(text);
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.alphas = j.at("alphas").get<std::vector<std::string>>();
  c.n = j.at("n").get<long>();
  c.n_from = j.at("n_from").get<long>();
  c.n_to = j.at("n_to").get<long>();
  c.n_step = j.at("n_step").get<long>();
  c.n_log2_from = j.at("n_log2_from").get<long>();
  c.n_log2_to = j.at("n_log2_to").get<long>();
  c.format = j.at("format").get<std::string>();
  c.digits = j.at("digits").get<unsigned>();
  c.jobs = j.at("jobs").get<int>();
  c.cap = j.at("cap").get<long>();
  c.lsvk = j.at("lsvk").get<bool>();
  c.out_path = j.at("out").get<std::string>();
  return c;
}

namespace {

std::string rat_text(const Rat& r) {
  std::string s = r.get_num().get_str();
  if (r.get_den() != 1) s += "/" + r.get_den().get_str();
  return s;
}

std::string trivial_text(TrivialShape t) {
  switch (t) {
    case TrivialShape::none: return "";
    case TrivialShape::single_row: return "single_row";
    case TrivialShape::single_column: return "single_column";
  }
  return "";
}

const std::string& one_alpha(const RunConfig& cfg) {
  if (cfg.alphas.size() != 1)
    throw std::domain_error("this command needs exactly one --alpha");
  return cfg.alphas.front();
}

long need_n(const RunConfig& cfg) {
  if (cfg.n < 1) throw std::domain_error("--n must be a positive integer");
  return cfg.n;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

int cmd_perm(const RunConfig& cfg, std::ostream& out) {
  auto alpha = AlphaSpec::parse(one_alpha(cfg));
  auto w = sos_permutation(need_n(cfg), alpha);
  if (cfg.format == "json") {
    json j{{"n", cfg.n}, {"alpha", alpha.text()}, {"permutation", w.values}};
    out << j.dump() << "\n";
  } else {
    out << w.one_line() << "\n";
  }
  return 0;
}

int cmd_shape(const RunConfig& cfg, std::ostream& out) {
  auto alpha = AlphaSpec::parse(one_alpha(cfg));
  auto w = sos_permutation(need_n(cfg), alpha);
  auto lam = shape(w);
  if (cfg.format == "json") {
    json j{{"n", cfg.n},
           {"alpha", alpha.text()},
           {"permutation", w.values},
           {"shape", lam.rows},
           {"arm", lam.rows.empty() ? 0 : lam.rows.front()},
           {"leg", static_cast<long>(lam.rows.size())}};
    out << j.dump() << "\n";
  } else {
    out << w.one_line() << "\n" << lam.text() << "\n";
  }
  return 0;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
  auto alpha = AlphaSpec::parse(one_alpha(cfg));
  auto sp = shape_prediction(need_n(cfg), alpha);
  bool triv = sp.trivial != TrivialShape::none;
  unsigned d = cfg.digits;
  if (cfg.format == "json") {
    json j{{"n", sp.n},
           {"alpha", alpha.text()},
           {"trivial", trivial_text(sp.trivial)},
           {"arm_lo", rat_text(sp.arm_lo)},
           {"arm_hi", rat_text(sp.arm_hi)},
           {"leg_lo", rat_text(sp.leg_lo)},
           {"leg_hi", rat_text(sp.leg_hi)}};
    if (!triv) {
      j["x0"] = rat_text(sp.x0);
      j["y0"] = rat_text(sp.y0);
      j["slope1"] = rat_text(sp.slope1);
      j["slope2"] = rat_text(sp.slope2);
      j["x0_decimal"] = decimal_string(sp.x0, d);
      j["y0_decimal"] = decimal_string(sp.y0, d);
      j["slope1_decimal"] = decimal_string(sp.slope1, d);
      j["slope2_decimal"] = decimal_string(sp.slope2, d);
    }
    out << j.dump() << "\n";
  } else {
    out << "n,alpha_id,trivial,arm_lo,arm_hi,leg_lo,leg_hi,x0,y0,slope1,slope2\n";
    out << sp.n << "," << alpha.text() << "," << trivial_text(sp.trivial) << ","
        << decimal_string(sp.arm_lo, d) << "," << decimal_string(sp.arm_hi, d) << ","
        << decimal_string(sp.leg_lo, d) << "," << decimal_string(sp.leg_hi, d) << ",";
    if (triv)
      out << ",,,";
    else
      out << decimal_string(sp.x0, d) << "," << decimal_string(sp.y0, d) << ","
          << decimal_string(sp.slope1, d) << "," << decimal_string(sp.slope2, d);
    out << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto alpha = AlphaSpec::parse(one_alpha(cfg));
  long n = need_n(cfg);
  auto sp = shape_prediction(n, alpha);
  auto lam = shape(sos_permutation(n, alpha));
  long arm = lam.rows.empty() ? 0 : lam.rows.front();
  long leg = static_cast<long>(lam.rows.size());
  unsigned d = cfg.digits;

  std::vector<std::string> violations;
  std::string max_dist;
  if (sp.trivial == TrivialShape::single_row) {
    if (leg != 1) violations.push_back("expected a single-row shape");
  } else if (sp.trivial == TrivialShape::single_column) {
    if (arm != 1) violations.push_back("expected a single-column shape");
  } else {
    if (!(Rat(arm) > sp.arm_lo && Rat(arm) <= sp.arm_hi))
      violations.push_back("arm outside its sandwich");
    if (!(Rat(leg) > sp.leg_lo && Rat(leg) <= sp.leg_hi))
      violations.push_back("leg outside its sandwich");
    auto conj = lam.conjugate();
    for (long k = 1;; ++k) {
      auto band = sp.row_estimate(k);
      if (!band.in_range) break;
      long row = k <= leg ? lam.rows[k - 1] : 0;
      if (!(abs(Rat(row) - band.center) < band.radius))
        violations.push_back("row " + std::to_string(k) + " outside its band");
    }
    for (long k = 1;; ++k) {
      auto band = sp.col_estimate(k);
      if (!band.in_range) break;
      long col = k <= arm ? conj.rows[k - 1] : 0;
      if (!(abs(Rat(col) - band.center) < band.radius))
        violations.push_back("column " + std::to_string(k) + " outside its band");
    }
    auto rep = boundary_distance(lam, sp);
    max_dist = sqrt_decimal(rep.max_distance_sq, d);
    if (!(rep.max_distance_sq < 64)) violations.push_back("boundary distance not below 8");
  }
  bool ok = violations.empty();

  if (cfg.format == "json") {
    json j{{"n", n},
           {"alpha", alpha.text()},
           {"trivial", trivial_text(sp.trivial)},
           {"arm", arm},
           {"leg", leg},
           {"ok", ok},
           {"violations", violations}};
    if (sp.trivial == TrivialShape::none) {
      j["slope1"] = decimal_string(sp.slope1, d);
      j["slope2"] = decimal_string(sp.slope2, d);
      j["max_dist"] = max_dist;
    }
    out << j.dump() << "\n";
  } else {
    out << "n,alpha_id,arm,leg,slope1,slope2,max_dist,ok\n";
    out << n << "," << alpha.text() << "," << arm << "," << leg << ",";
    if (sp.trivial == TrivialShape::none)
      out << decimal_string(sp.slope1, d) << "," << decimal_string(sp.slope2, d) << ","
          << max_dist;
    else
      out << ",,";
    out << "," << (ok ? "true" : "false") << "\n";
    for (const auto& v : violations) out << "# " << v << "\n";
  }
  return ok ? 0 : 2;
}

struct ScanRow {
  long n = 0;
  std::string alpha_id;
  long arm = 0, leg = 0;
  std::string arm_lo, arm_hi, leg_lo, leg_hi;
  std::string x0, y0, slope1, slope2, max_dist;  // empty for trivial inputs
};

ScanRow scan_row(long n, const std::string& alpha_text, unsigned d) {
  auto alpha = AlphaSpec::parse(alpha_text);
  auto lam = shape(sos_permutation(n, alpha));
  auto sp = shape_prediction(n, alpha);
  ScanRow r;
  r.n = n;
  r.alpha_id = alpha_text;
  r.arm = lam.rows.empty() ? 0 : lam.rows.front();
  r.leg = static_cast<long>(lam.rows.size());
  r.arm_lo = decimal_string(sp.arm_lo, d);
  r.arm_hi = decimal_string(sp.arm_hi, d);
  r.leg_lo = decimal_string(sp.leg_lo, d);
  r.leg_hi = decimal_string(sp.leg_hi, d);
  if (sp.trivial == TrivialShape::none) {
    r.x0 = decimal_string(sp.x0, d);
    r.y0 = decimal_string(sp.y0, d);
    r.slope1 = decimal_string(sp.slope1, d);
    r.slope2 = decimal_string(sp.slope2, d);
    r.max_dist = sqrt_decimal(boundary_distance(lam, sp).max_distance_sq, d);
  }
  return r;
}

std::vector<long> scan_sizes(const RunConfig& cfg) {
  std::vector<long> sizes;
  if (cfg.log2_range()) {
    if (cfg.n_log2_to < cfg.n_log2_from || cfg.n_log2_to > 62)
      throw std::domain_error("bad --n-log2 range");
    for (long k = cfg.n_log2_from; k <= cfg.n_log2_to; ++k) sizes.push_back(1L << k);
  } else if (cfg.n_from > 0) {
    if (cfg.n_step < 1 || cfg.n_to < cfg.n_from) throw std::domain_error("bad --n range");
    for (long n = cfg.n_from; n <= cfg.n_to; n += cfg.n_step) sizes.push_back(n);
  } else {
    sizes.push_back(need_n(cfg));
  }
  return sizes;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  if (cfg.alphas.empty()) throw std::domain_error("scan needs at least one --alpha");
  auto sizes = scan_sizes(cfg);
  std::vector<std::pair<long, std::string>> tasks;
  for (long n : sizes)
    for (const auto& a : cfg.alphas) tasks.push_back({n, a});

  std::vector<ScanRow> rows(tasks.size());
  long jobs = std::clamp<long>(cfg.jobs, 1, 256);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        rows[i] = scan_row(tasks[i].first, tasks[i].second, cfg.digits);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (long t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back(json{{"n", r.n},         {"alpha_id", r.alpha_id},
                         {"arm", r.arm},     {"leg", r.leg},
                         {"arm_lo", r.arm_lo}, {"arm_hi", r.arm_hi},
                         {"leg_lo", r.leg_lo}, {"leg_hi", r.leg_hi},
                         {"x0", r.x0},       {"y0", r.y0},
                         {"slope1", r.slope1}, {"slope2", r.slope2},
                         {"max_dist", r.max_dist}});
    out << arr.dump() << "\n";
  } else {
    out << "n,alpha_id,arm,leg,arm_lo,arm_hi,leg_lo,leg_hi,x0,y0,slope1,slope2,max_dist\n";
    for (const auto& r : rows)
      out << r.n << "," << r.alpha_id << "," << r.arm << "," << r.leg << "," << r.arm_lo
          << "," << r.arm_hi << "," << r.leg_lo << "," << r.leg_hi << "," << r.x0 << ","
          << r.y0 << "," << r.slope1 << "," << r.slope2 << "," << r.max_dist << "\n";
  }
  return 0;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  auto list = enumerate_sos(need_n(cfg), cfg.cap);
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& [iv, w] : list)
      arr.push_back(json{{"left", rat_text(iv.left)},
                         {"right", rat_text(iv.right)},
                         {"width", rat_text(iv.width())},
                         {"permutation", w.values},
                         {"shape", shape(w).rows}});
    out << arr.dump() << "\n";
  } else {
    out << "left,right,width,permutation,shape\n";
    for (const auto& [iv, w] : list)
      out << rat_text(iv.left) << "," << rat_text(iv.right) << "," << rat_text(iv.width())
          << "," << csv_quote(w.one_line()) << "," << csv_quote(shape(w).text()) << "\n";
  }
  return 0;
}

int cmd_lattice_dump(const RunConfig& cfg, std::ostream& out) {
  Rat ab(one_alpha(cfg));
  ab.canonicalize();
  out << lattice_csv(ab.get_num(), ab.get_den());
  return 0;
}

std::string svg_polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& style,
                         const std::function<std::pair<double, double>(double, double)>& map) {
  std::ostringstream os;
  os << "  <polyline fill=\"none\" " << style << " points=\"";
  os.setf(std::ios::fixed);
  os.precision(2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [px, py] = map(pts[i].first, pts[i].second);
    os << (i ? " " : "") << px << "," << py;
  }
  os << "\"/>\n";
  return os.str();
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  auto alpha = AlphaSpec::parse(one_alpha(cfg));
  long n = need_n(cfg);
  auto lam = shape(sos_permutation(n, alpha));
  auto sp = shape_prediction(n, alpha);

  std::vector<std::pair<double, double>> stair;
  long len = static_cast<long>(lam.rows.size());
  auto vertex = [&](double x, double y) {
    if (stair.empty() || stair.back() != std::pair<double, double>{x, y})
      stair.push_back({x, y});
  };
  vertex(lam.rows[0], 0.0);
  for (long r = 1; r <= len; ++r) {
    vertex(lam.rows[r - 1], r);
    if (r < len) vertex(lam.rows[r], r);
  }
  vertex(0.0, len);

  std::vector<std::pair<double, double>> boundary;
  if (sp.trivial == TrivialShape::none)
    boundary = {{0.0, sp.L(Rat(0)).get_d()},
                {sp.x0.get_d(), sp.y0.get_d()},
                {sp.arm_hi.get_d(), 0.0}};

  std::vector<std::pair<double, double>> limit;
  if (cfg.lsvk) {
    double scale = std::sqrt(static_cast<double>(n));
    for (auto [x, y] : lsvk_curve(129)) limit.push_back({x * scale, y * scale});
  }

  double world = 1.0;
  for (const auto* curve : {&stair, &boundary, &limit})
    for (auto [x, y] : *curve) world = std::max({world, x, y});
  world += 1.0;
  const double size = 640.0, margin = 40.0;
  auto map = [&](double x, double y) -> std::pair<double, double> {
    return {margin + x * (size - 2 * margin) / world,
            size - margin - y * (size - 2 * margin) / world};
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n";
  auto [ox, oy] = map(0, 0);
  auto [xx, xy] = map(world, 0);
  auto [yx, yy] = map(0, world);
  out << "  <line x1=\"" << ox << "\" y1=\"" << oy << "\" x2=\"" << xx << "\" y2=\"" << xy
      << "\" stroke=\"#999\"/>\n";
  out << "  <line x1=\"" << ox << "\" y1=\"" << oy << "\" x2=\"" << yx << "\" y2=\"" << yy
      << "\" stroke=\"#999\"/>\n";
  out << svg_polyline(stair, "stroke=\"black\" stroke-width=\"1.5\"", map);
  if (!boundary.empty()) out << svg_polyline(boundary, "stroke=\"#c00\" stroke-width=\"1.5\"", map);
  if (!limit.empty())
    out << svg_polyline(limit, "stroke=\"#06c\" stroke-width=\"1.5\" stroke-dasharray=\"5 4\"",
                        map);
  out << "</svg>\n";
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out_stream, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out_stream;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "cannot open output file: " << cfg.out_path << "\n";
      return 1;
    }
    sink = &file;
  }
  try {
    if (cfg.command == "perm") return cmd_perm(cfg, *sink);
    if (cfg.command == "shape") return cmd_shape(cfg, *sink);
    if (cfg.command == "predict") return cmd_predict(cfg, *sink);
    if (cfg.command == "verify") return cmd_verify(cfg, *sink);
    if (cfg.command == "scan") return cmd_scan(cfg, *sink);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg, *sink);
    if (cfg.command == "lattice-dump") return cmd_lattice_dump(cfg, *sink);
    if (cfg.command == "plot") return cmd_plot(cfg, *sink);
    err << "unknown command: " << cfg.command << "\n";
    return 1;
  } catch (const resource_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int sos_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sos permutations, Schensted shapes, and the two-slope boundary predictor"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    sub->add_option("--digits", cfg.digits, "decimal digits in emitted numbers");
    sub->add_option("--out", cfg.out_path, "write output to a file instead of stdout");
    return sub;
  };
  auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alphas,
                    "alpha as p/q, cf:[a0;a1,...], e, or surd:(p+sqrt(d))/q");
    return sub;
  };

  auto* perm = add_alpha(add_common(app.add_subcommand("perm", "print w(n, alpha)")));
  perm->add_option("--n", cfg.n, "permutation size");
  auto* shp = add_alpha(add_common(app.add_subcommand("shape", "permutation and its shape")));
  shp->add_option("--n", cfg.n, "permutation size");
  auto* pre = add_alpha(add_common(app.add_subcommand("predict", "two-slope boundary data")));
  pre->add_option("--n", cfg.n, "permutation size");
  auto* ver = add_alpha(add_common(
      app.add_subcommand("verify", "check the predicted bounds against the actual shape")));
  ver->add_option("--n", cfg.n, "permutation size");
  auto* scn = add_alpha(add_common(
      app.add_subcommand("scan", "prediction-vs-shape table over a range of sizes")));
  scn->add_option("--n", cfg.n, "single size");
  scn->add_option("--n-from", cfg.n_from, "range start");
  scn->add_option("--n-to", cfg.n_to, "range end (inclusive)");
  scn->add_option("--n-step", cfg.n_step, "range step");
  scn->add_option("--n-log2-from", cfg.n_log2_from, "log2 range start (n = 2^k)");
  scn->add_option("--n-log2-to", cfg.n_log2_to, "log2 range end");
  scn->add_option("--jobs", cfg.jobs, "worker threads");
  auto* enu = add_common(app.add_subcommand("enumerate", "all w(n, alpha) with probabilities"));
  enu->add_option("--n", cfg.n, "permutation size");
  enu->add_option("--cap", cfg.cap, "enumeration guard");
  add_alpha(add_common(
      app.add_subcommand("lattice-dump", "walk lengths of every L_{a,b} box point; --alpha a/b")));
  auto* plt = add_alpha(add_common(app.add_subcommand("plot", "SVG of the staircase and overlay")));
  plt->add_option("--n", cfg.n, "permutation size");
  plt->add_flag("--lsvk", cfg.lsvk, "overlay the random-permutation limit shape");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  auto* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  if (cfg.command == "plot" && sub->count("--format") == 0) cfg.format = "svg";
  return run(cfg, out, err);
}

}  // namespace sos
