#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "nefcert/certificate.hpp"
#include "nefcert/surface_lattice.hpp"

using namespace nefcert;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct RunConfig {
  std::string command;
  uint64_t p = 3;
  int k = 0;  // 0: smallest admissible
  uint64_t seed = 1;
  BuildBudget budget;
  std::string out;
  std::string format = "text";
  std::string input;
  std::string base = "p1xp1";
  int d = 3;
  std::string coeffs;
};

std::string matrix_text(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m.field()->to_string(m.at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

json matrix_json(const Matrix& m) {
  json a = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (size_t j = 0; j < m.cols(); ++j) r.push_back(m.field()->to_string(m.at(i, j)));
    a.push_back(r);
  }
  return a;
}

void echo_config(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.command == "search") {
    j["p"] = c.p;
    j["seed"] = c.seed;
    j["out"] = c.out;
    j["budget"] = {{"curves_per_field", c.budget.curves_per_field}, {"field_steps", c.budget.field_steps},
                   {"pencils_per_curve", c.budget.pencils_per_curve}, {"delta_tries", c.budget.delta_tries},
                   {"delta_samples", c.budget.delta_samples}};
    j["guard"] = c.budget.guard;
  } else if (c.command == "verify") {
    j["input"] = c.input;
  } else if (c.command == "lattice") {
    j["base"] = c.base;
    j["d"] = c.d;
  } else {
    j["p"] = c.p;
    j["k"] = c.k;
    j["f"] = c.coeffs;
    j["guard"] = c.budget.guard;
  }
  j["format"] = c.format;
  std::cerr << "config " << j.dump() << "\n";
}

int write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << path << "\n";
    return kUsage;
  }
  f << text;
  return kOk;
}

int run_search(const RunConfig& c) {
  BuildResult r = certificate_build(c.p, c.seed, c.budget);
  if (!r.cert) {
    write_out(c.out, failure_to_json(r.report, c.p, c.seed));
    std::cerr << "search failed: " << r.report.reason << "\n";
    return kFail;
  }
  int rc = write_out(c.out, certificate_to_json(*r.cert));
  if (rc != kOk) return rc;
  if (!c.out.empty() && c.out != "-") {
    const FiniteField* f = r.cert->curve.field();
    std::cout << "certificate written to " << c.out << "\n"
              << "field: " << f->describe() << "\n"
              << "curve: " << r.cert->curve.to_string() << "\n"
              << "obstruction: " << f->to_string(r.cert->obstruction) << "\n"
              << "curves tried: " << r.report.stats["curves"] << "\n";
  }
  return kOk;
}

int run_verify(const RunConfig& c) {
  std::ifstream f(c.input, std::ios::binary);
  if (!f) {
    std::cerr << "cannot read " << c.input << "\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  Certificate cert;
  try {
    cert = certificate_from_json(buf.str());
  } catch (const ParseError& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kUsage;
  }
  VerifyReport r = certificate_verify(cert);
  if (c.format == "json") {
    json j;
    j["valid"] = r.ok();
    json arr = json::array();
    for (const auto& ch : r.checks)
      arr.push_back({{"index", ch.index}, {"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    j["checks"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_to_text(r);
  }
  return r.ok() ? kOk : kFail;
}

int run_lattice(const RunConfig& c) {
  SurfaceBase base = parse_base(c.base);
  Configuration cfg = base == SurfaceBase::P1xP1 ? ruling_configuration(c.d) : plane_configuration(c.d);
  Signature sig = hodge_signature(cfg.lat);
  ExceptionalSet ex = exceptional_curves(cfg.lat, cfg.l, cfg.curves);
  std::vector<LatticeClass> exc;
  for (size_t i : ex.negative) exc.push_back(cfg.curves[i]);
  long chain = exc.empty() ? 0 : l_equivalence_bound(cfg.lat, exc);
  long l2 = intersect(cfg.lat, cfg.l, cfg.l);
  size_t vdim = cfg.lat.rank - (l2 == 0 ? 2 : 1);
  if (c.format == "json") {
    json j;
    j["lattice"] = json::parse(lattice_to_json(cfg.lat));
    j["rho"] = cfg.lat.rank;
    j["signature"] = {sig.plus, sig.minus};
    j["L_squared"] = l2;
    j["exceptional_curves"] = ex.negative.size();
    j["bound"] = ex.bound;
    j["rankin_dim"] = vdim;
    j["rankin_nonstrict_bound"] = 2 * vdim;
    j["rankin_strict_bound"] = vdim + 1;
    j["l_equivalence_bound"] = chain;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "base: " << base_tag(cfg.lat.base) << "\n"
              << "d: " << cfg.lat.d << "\n"
              << "rho: " << cfg.lat.rank << "\n"
              << "signature: (" << sig.plus << ", " << sig.minus << ")\n"
              << "L^2: " << l2 << "\n"
              << "exceptional curves: " << ex.negative.size() << "\n";
    for (size_t i : ex.negative) {
      std::cout << "  [";
      for (size_t t = 0; t < cfg.curves[i].coords.size(); ++t) std::cout << (t ? "," : "") << cfg.curves[i].coords[t];
      std::cout << "] self-intersection " << intersect(cfg.lat, cfg.curves[i], cfg.curves[i]) << "\n";
    }
    std::cout << "bound: " << ex.bound << (ex.negative.size() == ex.bound ? " (attained)" : "") << "\n"
              << "Rankin: dim V = " << vdim << ", at most " << 2 * vdim << " (non-strict), " << vdim + 1
              << " (strict)\n"
              << "L-equivalence chain bound: " << chain << "\n";
  }
  return kOk;
}

int run_curve_info(const RunConfig& c) {
  std::vector<int64_t> ints;
  std::stringstream ss(c.coeffs);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      ints.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      std::cerr << "bad coefficient list\n";
      return kUsage;
    }
  }
  int k = c.k > 0 ? c.k : 1;
  FieldPtr F = FiniteField::create(c.p, k);
  Curve cv = Curve::create(F, Poly::from_ints(F.get(), ints));
  CartierManin cm = cartier_manin(cv);
  uint64_t q = F->q();
  bool counted = q * q <= c.budget.guard;
  FrobeniusData fd;
  if (counted) fd = frobenius_data(cv);
  if (c.format == "json") {
    json j;
    j["field"] = F->describe();
    j["curve"] = cv.to_string();
    j["genus"] = cv.genus();
    j["smooth"] = true;
    j["cartier_manin"] = matrix_json(cm.matrix);
    j["ordinary"] = cm.ordinary;
    j["p_rank"] = p_rank(cv);
    if (counted) {
      j["points"] = {fd.n1, fd.n2};
      j["jacobian_order"] = fd.jacobian_order;
      j["charpoly"] = fd.charpoly;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "field: " << F->describe() << "\n"
              << "curve: " << cv.to_string() << "\n"
              << "genus: " << cv.genus() << " (smooth: true)\n"
              << "Cartier-Manin: " << matrix_text(cm.matrix) << "\n"
              << "ordinary: " << (cm.ordinary ? "true" : "false") << "\n"
              << "p-rank: " << p_rank(cv) << "\n";
    if (counted) {
      std::cout << "points: #C(F_q) = " << fd.n1 << ", #C(F_q^2) = " << fd.n2 << "\n"
                << "Jacobian order: " << fd.jacobian_order << "\n";
    } else {
      std::cout << "points: skipped (guard)\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nefcert: certificates for nef, non-semi-ample line bundles in positive characteristic"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* search = app.add_subcommand("search", "search for a certificate");
  search->add_option("--p", cfg.p, "odd prime")->required();
  search->add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  search->add_option("--out", cfg.out, "output file (default stdout)");
  search->add_option("--curves-per-field", cfg.budget.curves_per_field)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--field-steps", cfg.budget.field_steps)->capture_default_str()->check(CLI::NonNegativeNumber);
  search->add_option("--pencils", cfg.budget.pencils_per_curve)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--delta-tries", cfg.budget.delta_tries)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--delta-samples", cfg.budget.delta_samples)->capture_default_str()->check(CLI::PositiveNumber);
  search->add_option("--guard", cfg.budget.guard, "point enumeration limit")->capture_default_str();
  search->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  auto* verify = app.add_subcommand("verify", "verify a certificate file");
  verify->add_option("file", cfg.input)->required();
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  auto* lattice = app.add_subcommand("lattice", "lattice data of a blow-up");
  lattice->add_option("--base", cfg.base)->check(CLI::IsMember({"p1xp1", "p2"}))->capture_default_str();
  lattice->add_option("--d", cfg.d)->check(CLI::Range(0, 200))->capture_default_str();
  lattice->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  auto* info = app.add_subcommand("curve-info", "diagnostics for y^2 = f(x)");
  info->add_option("--p", cfg.p)->required();
  info->add_option("--k", cfg.k, "extension degree (default 1)");
  info->add_option("--f", cfg.coeffs, "coefficients of f, constant term first")->required();
  info->add_option("--guard", cfg.budget.guard)->capture_default_str();
  info->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  echo_config(cfg);
  try {
    if (cfg.command == "search") return run_search(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "lattice") return run_lattice(cfg);
    return run_curve_info(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
