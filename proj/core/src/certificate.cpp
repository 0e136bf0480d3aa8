#include "nefcert/certificate.hpp"

#include <json.hpp>
#include <sstream>

namespace nefcert {

using json = nlohmann::ordered_json;

namespace {

// ---- serialization ----

json poly_json(const Poly& a) { return a.indices(); }

Poly poly_from(const FiniteField* f, const json& j) {
  auto idx = j.get<std::vector<uint64_t>>();
  for (auto i : idx)
    if (i >= f->q()) throw ParseError("field element out of range");
  return Poly::from_indices(f, idx);
}

Fq elem_from(const FiniteField* f, const json& j) {
  uint64_t i = j.get<uint64_t>();
  if (i >= f->q()) throw ParseError("field element out of range");
  return f->from_index(i);
}

const char* kind_name(PlaceKind k) {
  switch (k) {
    case PlaceKind::Infinite:
      return "infinite";
    case PlaceKind::Split:
      return "split";
    case PlaceKind::Ramified:
      return "ramified";
    case PlaceKind::Inert:
      return "inert";
  }
  return "?";
}

PlaceKind kind_from(const std::string& s) {
  if (s == "infinite") return PlaceKind::Infinite;
  if (s == "split") return PlaceKind::Split;
  if (s == "ramified") return PlaceKind::Ramified;
  if (s == "inert") return PlaceKind::Inert;
  throw ParseError("unknown place kind " + s);
}

json place_json(const Place& p) {
  json j;
  j["kind"] = kind_name(p.kind);
  if (!p.is_infinite()) {
    j["u"] = poly_json(p.u);
    j["v"] = poly_json(p.v);
  }
  return j;
}

Place place_from(const Curve& c, const json& j) {
  Place p;
  p.kind = kind_from(j.at("kind").get<std::string>());
  if (!p.is_infinite()) {
    p.u = poly_from(c.field(), j.at("u"));
    p.v = poly_from(c.field(), j.at("v"));
  }
  c.check_place(p);
  return p;
}

json divisor_json(const Divisor& d) {
  json a = json::array();
  for (const auto& [p, n] : d.entries()) a.push_back({{"place", place_json(p)}, {"mult", n}});
  return a;
}

Divisor divisor_from(const Curve& c, const json& j) {
  Divisor d;
  for (const auto& e : j) d.add(place_from(c, e.at("place")), e.at("mult").get<long>());
  return d;
}

json function_json(const FunctionElement& g) {
  return {{"a", poly_json(g.A())}, {"b", poly_json(g.B())}, {"c", poly_json(g.C())}};
}

FunctionElement function_from(const Curve& c, const json& j) {
  Poly den = poly_from(c.field(), j.at("c"));
  if (den.is_zero()) throw ParseError("zero denominator");
  return FunctionElement(c, poly_from(c.field(), j.at("a")), poly_from(c.field(), j.at("b")), den);
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.index());
  return a;
}

Vec vec_from(const FiniteField* f, const json& j) {
  Vec v;
  for (const auto& e : j) v.push_back(elem_from(f, e));
  return v;
}

json matrix_json(const Matrix& m) {
  json a = json::array();
  for (size_t i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
  return a;
}

Matrix matrix_from(const FiniteField* f, const json& j, size_t cols) {
  std::vector<Vec> rows;
  for (const auto& r : j) {
    rows.push_back(vec_from(f, r));
    if (rows.back().size() != cols) throw ParseError("ragged matrix");
  }
  return Matrix::from_rows(f, rows, cols);
}

json class_json(const MumfordClass& m) { return {{"u", poly_json(m.u)}, {"v", poly_json(m.v)}}; }

json budget_json(const BuildBudget& b) {
  return {{"curves_per_field", b.curves_per_field}, {"field_steps", b.field_steps},
          {"pencils_per_curve", b.pencils_per_curve}, {"delta_tries", b.delta_tries},
          {"delta_samples", b.delta_samples}, {"guard", b.guard}};
}

BuildBudget budget_from(const json& j) {
  BuildBudget b;
  b.curves_per_field = j.at("curves_per_field").get<int>();
  b.field_steps = j.at("field_steps").get<int>();
  b.pencils_per_curve = j.at("pencils_per_curve").get<int>();
  b.delta_tries = j.at("delta_tries").get<int>();
  b.delta_samples = j.at("delta_samples").get<int>();
  b.guard = j.at("guard").get<uint64_t>();
  return b;
}

// ---- search ----

std::optional<Divisor> random_pencil(const Curve& c, Rng& rng) {
  std::vector<Place> pts;
  for (const auto& p : c.rational_places())
    if (!p.is_infinite()) pts.push_back(p);
  if (pts.size() < 3) return std::nullopt;
  for (size_t i = 0; i < 3; ++i) std::swap(pts[i], pts[i + rng() % (pts.size() - i)]);
  Divisor a;
  for (size_t i = 0; i < 3; ++i) a.add(pts[i], 1);
  return a;
}

struct CurveAttempt {
  std::optional<Certificate> cert;
  std::string stage;  // rejection stage when cert is empty
};

CurveAttempt try_curve(const FieldPtr& F, Rng& rng, const BuildBudget& budget, FailureReport& rep) {
  uint64_t p = F->p();
  Poly f = random_poly(F.get(), 5, rng, true);
  if (!is_squarefree(f)) return {std::nullopt, "singular"};
  Curve c = Curve::create(F, f);
  CartierManin cm = cartier_manin(c);
  if (!cm.ordinary) return {std::nullopt, "not_ordinary"};
  if (c.rational_places().size() < 16) return {std::nullopt, "few_points"};
  if (jacobian_order(c) % p != 0) return {std::nullopt, "no_rational_torsion"};
  auto tors = p_torsion_subgroup(c, rng());
  if (tors.empty()) return {std::nullopt, "no_rational_torsion"};

  std::optional<EmbeddingData> emb;
  for (int t = 0; t < budget.pencils_per_curve && !emb; ++t) {
    auto a = random_pencil(c, rng);
    if (!a) break;
    try {
      emb = embed_bidegree_2_3(c, *a);
    } catch (const Error& e) {
      ++rep.stats[std::string("pencil: ") + e.what()];
    }
  }
  if (!emb) return {std::nullopt, "embedding"};
  NormalBundle n = random_normal_bundle(*emb, rng);
  std::optional<BetaFunctional> beta;
  try {
    beta = beta_functional(*emb, n);
  } catch (const Error& e) {
    return {std::nullopt, std::string("beta: ") + e.what()};
  }
  if (beta->is_zero()) return {std::nullopt, "beta_zero"};

  std::string stage = "torsion_classes";
  for (const auto& cls : tors) {
    if (class_order(c, cls) != p) continue;
    PTorsionBundle l = make_p_torsion_bundle(c, cls);
    SemilinearMap fr = frobenius_h1(c, -l.rep, l);
    if (!fr.injective()) {
      ++rep.stats["frobenius_not_injective"];
      continue;
    }
    Differential gamma = cartier_class(c, l);
    FunctionElement alpha = alpha_section(c, l);
    for (int s = 0; s < budget.delta_samples; ++s) {
      auto dc = choose_delta(*emb, n, l, rng, budget.delta_tries);
      if (!dc) {
        ++rep.stats["extend field"];
        break;
      }
      Fq val = obstruction_scalar(*beta, dc->delta, gamma, alpha);
      if (val.is_zero()) {
        ++rep.stats["zero_obstruction"];
        continue;
      }
      Certificate cert;
      cert.curve = c;
      cert.torsion = cls;
      cert.g = l.g;
      cert.a_div = emb->a_div;
      cert.z = emb->z;
      cert.aux = n.aux;
      cert.n_div = n.n_div;
      cert.delta_coords = *rr_space(c, n.n_div - l.rep).coordinates(dc->delta);
      cert.d = dc->d;
      cert.gamma = gamma;
      cert.alpha = alpha;
      cert.obstruction = val;
      cert.frob_neg_l = fr;
      cert.cartier_manin = cm.matrix;
      return {cert, ""};
    }
  }
  return {std::nullopt, stage};
}

}  // namespace

int minimal_degree(uint64_t p) {
  int k = 1;
  for (uint64_t q = p; q < 16; q *= p) ++k;
  return k;
}

BuildResult certificate_build(uint64_t p, uint64_t seed, const BuildBudget& budget) {
  if (p == 2) throw Error("characteristic two unsupported");
  BuildResult out;
  Rng rng(seed);
  int k0 = minimal_degree(p);
  for (int k = k0; k <= k0 + budget.field_steps; ++k) {
    FieldPtr F = FiniteField::create(p, k);  // throws "not prime"
    if (F->q() * F->q() > budget.guard) {
      out.report.reason = "point enumeration guard reached";
      return out;
    }
    out.report.degrees_tried.push_back(k);
    for (int it = 0; it < budget.curves_per_field; ++it) {
      CurveAttempt a = try_curve(F, rng, budget, out.report);
      ++out.report.stats["curves"];
      if (a.cert) {
        a.cert->seed = seed;
        a.cert->budget = budget;
        out.cert = std::move(a.cert);
        return out;
      }
      ++out.report.stats[a.stage];
    }
    ++out.report.stats["field_escalations"];
  }
  out.report.reason = "budget exhausted";
  return out;
}

// ---- verification ----

bool VerifyReport::ok() const {
  if (checks.size() != 7) return false;
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

int VerifyReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.index;
  return 0;
}

FunctionElement certificate_delta(const Certificate& cert) {
  Divisor rep = mumford_divisor(cert.curve, cert.torsion);
  RRSpace s = rr_space(cert.curve, cert.n_div - rep);
  if (s.dim() != cert.delta_coords.size()) throw Error("delta coordinates have wrong length");
  return s.combine(cert.delta_coords);
}

VerifyReport certificate_verify(const Certificate& cert) {
  VerifyReport r;
  const Curve& c = cert.curve;
  uint64_t p = c.field()->p();
  auto run = [&](int idx, const std::string& name, auto&& body) {
    CheckResult res{idx, name, false, ""};
    try {
      res.detail = body();
      res.passed = res.detail.empty();
    } catch (const std::exception& e) {
      res.detail = e.what();
    }
    if (res.passed) res.detail = "ok";
    r.checks.push_back(res);
  };

  run(1, "smooth genus-2 curve", [&]() -> std::string {
    if (p == 2) return "characteristic two";
    Curve::create(c.field_ptr(), c.f());
    return "";
  });

  std::optional<Divisor> rep;
  run(2, "torsion class of order p", [&]() -> std::string {
    if (!is_valid_class(c, cert.torsion)) return "invalid Mumford pair";
    if (class_order(c, cert.torsion) != p) return "class not of exact order p";
    rep = mumford_divisor(c, cert.torsion);
    if (divisor_class(c, cert.n_div - cert.d) != cert.torsion) return "class(N - D) differs from the torsion class";
    return "";
  });
  if (!rep) rep = mumford_divisor(c, cert.torsion);

  run(3, "trivialization and Cartier class", [&]() -> std::string {
    if (cert.g.is_zero()) return "trivialization is zero";
    if (divisor_of_function(cert.g) != *rep * static_cast<long>(p)) return "div(g) != p rep";
    Differential dlog = Differential::of(cert.g) * cert.g.inverse();
    if (dlog != cert.gamma) return "gamma != dg/g";
    if (cert.gamma.is_zero()) return "gamma is zero";
    if (!divisor_of_differential(cert.gamma).is_effective()) return "gamma not regular";
    return "";
  });

  run(4, "obstruction scalar nonzero", [&]() -> std::string {
    EmbeddingData e = embed_bidegree_2_3(c, cert.a_div);
    if (e.z != cert.z) return "pencil function mismatch";
    NormalBundle n = normal_bundle_divisor(e, cert.aux);
    if (n.n_div != cert.n_div) return "normal divisor mismatch";
    FunctionElement delta = certificate_delta(cert);
    if (delta.is_zero()) return "delta is zero";
    if (divisor_of_function(delta) + cert.n_div - *rep != cert.d) return "div(delta) + N - rep != D";
    RRSpace ka = rr_space(c, canonical_divisor(c) + *rep);
    if (ka.dim() != 1) return "h0(K + L) != 1";
    if (cert.alpha.is_zero() || !ka.coordinates(cert.alpha)) return "alpha not a section of K + L";
    BetaFunctional beta = beta_functional(e, n);
    Fq s = obstruction_scalar(beta, delta, cert.gamma, cert.alpha);
    if (s != cert.obstruction) return "recorded scalar differs";
    if (s.is_zero()) return "obstruction vanishes";
    return "";
  });

  run(5, "Frobenius injective on H1(-L)", [&]() -> std::string {
    PTorsionBundle l{cert.torsion, *rep, cert.g};
    SemilinearMap fr = frobenius_h1(c, -*rep, l);
    if (!(fr.matrix == cert.frob_neg_l.matrix) || fr.twist != cert.frob_neg_l.twist) return "recorded map differs";
    if (!fr.injective()) return "not injective";
    return "";
  });

  run(6, "Cartier-Manin nonsingular", [&]() -> std::string {
    CartierManin cm = cartier_manin(c);
    if (!(cm.matrix == cert.cartier_manin)) return "recorded matrix differs";
    if (!cm.ordinary) return "singular";
    return "";
  });

  run(7, "blow-up locus: 12 distinct rational points", [&]() -> std::string {
    if (!cert.d.is_effective() || cert.d.degree() != 12) return "D not effective of degree 12";
    if (!twelve_distinct_rational(cert.d)) return "D not reduced or not rational";
    return "";
  });
  return r;
}

std::string report_to_text(const VerifyReport& r) {
  std::ostringstream os;
  for (const auto& c : r.checks)
    os << "[" << (c.passed ? "PASS" : "FAIL") << "] " << c.index << ". " << c.name << ": " << c.detail << "\n";
  os << (r.ok() ? "certificate valid" : "certificate INVALID") << "\n";
  return os.str();
}

std::string certificate_to_json(const Certificate& cert) {
  const Curve& c = cert.curve;
  const FiniteField* f = c.field();
  json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["seed"] = cert.seed;
  j["budget"] = budget_json(cert.budget);
  j["field"] = {{"p", f->p()}, {"k", f->k()}, {"modulus", f->modulus()}};
  j["f"] = poly_json(c.f());
  j["torsion"] = class_json(cert.torsion);
  j["g"] = function_json(cert.g);
  j["a_div"] = divisor_json(cert.a_div);
  j["z"] = function_json(cert.z);
  j["aux"] = vec_json(cert.aux.c);
  j["n_div"] = divisor_json(cert.n_div);
  j["delta_coords"] = vec_json(cert.delta_coords);
  j["D"] = divisor_json(cert.d);
  j["gamma"] = function_json(cert.gamma.coefficient());
  j["alpha"] = function_json(cert.alpha);
  j["obstruction"] = cert.obstruction.index();
  j["frob_neg_L"] = {{"matrix", matrix_json(cert.frob_neg_l.matrix)}, {"twist", cert.frob_neg_l.twist}};
  j["cartier_manin"] = matrix_json(cert.cartier_manin);
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.at("schema").get<std::string>() != kSchema) throw ParseError("unsupported schema");
    const json& fj = j.at("field");
    FieldPtr F = FiniteField::create(fj.at("p").get<uint64_t>(), fj.at("k").get<int>(),
                                     fj.at("modulus").get<std::vector<uint32_t>>());
    const FiniteField* f = F.get();
    Certificate cert;
    cert.seed = j.at("seed").get<uint64_t>();
    cert.budget = budget_from(j.at("budget"));
    Poly fp = poly_from(f, j.at("f"));
    try {
      cert.curve = Curve::create(F, fp);
    } catch (const Error& e) {
      throw ParseError(std::string("curve: ") + e.what());
    }
    const Curve& c = cert.curve;
    cert.torsion = {poly_from(f, j.at("torsion").at("u")), poly_from(f, j.at("torsion").at("v"))};
    if (!cert.torsion.u.is_monic()) throw ParseError("torsion u not monic");
    cert.g = function_from(c, j.at("g"));
    cert.a_div = divisor_from(c, j.at("a_div"));
    cert.z = function_from(c, j.at("z"));
    cert.aux = BiForm(f);
    Vec aux = vec_from(f, j.at("aux"));
    if (aux.size() != cert.aux.c.size()) throw ParseError("aux form has wrong size");
    cert.aux.c = aux;
    cert.n_div = divisor_from(c, j.at("n_div"));
    cert.delta_coords = vec_from(f, j.at("delta_coords"));
    cert.d = divisor_from(c, j.at("D"));
    cert.gamma = Differential(function_from(c, j.at("gamma")));
    cert.alpha = function_from(c, j.at("alpha"));
    cert.obstruction = elem_from(f, j.at("obstruction"));
    const json& fr = j.at("frob_neg_L");
    cert.frob_neg_l.twist = fr.at("twist").get<uint64_t>();
    size_t fcols = fr.at("matrix").empty() ? 0 : fr.at("matrix")[0].size();
    cert.frob_neg_l.matrix = matrix_from(f, fr.at("matrix"), fcols);
    cert.cartier_manin = matrix_from(f, j.at("cartier_manin"), 2);
    return cert;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

std::string failure_to_json(const FailureReport& r, uint64_t p, uint64_t seed) {
  json j;
  j["schema"] = "nefcert-failure/1";
  j["version"] = kVersion;
  j["p"] = p;
  j["seed"] = seed;
  j["reason"] = r.reason;
  j["degrees_tried"] = r.degrees_tried;
  json s = json::object();
  for (const auto& [k, v] : r.stats) s[k] = v;
  j["stats"] = s;
  return j.dump(2) + "\n";
}

}  // namespace nefcert
