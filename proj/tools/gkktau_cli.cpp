#include <gkktau/gkktau.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gkktau;

namespace {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string output;
  std::string format = "json";
  unsigned precision = 80;
  unsigned jobs = 1;
  std::size_t cap_n = 0;
  bool format_given = false;
};

struct Source {
  std::size_t n = 0, k = 0, identity = 0;
  std::string t;
  std::string matrix_file;
  std::string poly_file;
  std::size_t eta = 0;
  bool limit = false;
};

void add_matrix_source(CLI::App* cmd, Source& s) {
  cmd->add_option("--n", s.n, "order of A(n, k, t)");
  cmd->add_option("--k", s.k, "family parameter k");
  cmd->add_option("--t", s.t, "family parameter t as num/den in (0, 1)");
  cmd->add_flag("--limit", s.limit, "use the limit matrix B_k instead of A(n, k, t)");
  cmd->add_option("--identity", s.identity, "the identity of the given order");
  cmd->add_option("--matrix", s.matrix_file, "matrix in the JSON exchange format");
}

std::string describe_source(const Source& s) {
  if (!s.matrix_file.empty()) return "file:" + s.matrix_file;
  if (s.identity) return "identity(" + std::to_string(s.identity) + ")";
  if (s.limit) return "B(" + std::to_string(s.k) + ")";
  return "A(" + std::to_string(s.n) + "," + std::to_string(s.k) + "," + s.t + ")";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

bool is_family(const Source& s) { return s.matrix_file.empty() && !s.identity && !s.limit; }

RatMatrix load_matrix(const Source& s) {
  int chosen = !s.matrix_file.empty() + (s.identity > 0) + (s.limit || s.n || !s.t.empty());
  if (chosen != 1) throw UsageError("give exactly one of --matrix, --identity, (--n --k --t) or (--k --limit)");
  if (!s.matrix_file.empty()) return matrix_from_json(read_json_file(s.matrix_file));
  if (s.identity) return RatMatrix::identity(s.identity);
  if (s.limit) {
    if (!s.k) throw UsageError("--limit needs --k");
    if (s.n || !s.t.empty()) throw UsageError("--limit takes only --k");
    return build_B(s.k);
  }
  if (!s.n || !s.k || s.t.empty()) throw UsageError("the family needs --n, --k and --t");
  return build_A(s.n, s.k, parse_rational(s.t));
}

Polynomial load_polynomial(const Source& s) {
  if (!s.poly_file.empty()) return polynomial_from_json(read_json_file(s.poly_file));
  if (s.eta) return eta(s.eta);
  return charpoly(load_matrix(s));
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Globals& g, const Json& j, int indent = 2) {
  Output out(g.output);
  out.stream() << j.dump(indent) << '\n';
}

void require_format(const Globals& g, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (g.format == f) return;
  throw UsageError("format " + g.format + " is not available for this command");
}

int cmd_build(const Globals& g, const Source& s) {
  require_format(g, {"json", "csv"});
  RatMatrix a = load_matrix(s);
  if (g.format == "json") {
    emit_json(g, to_json(a), -1);
    return kHolds;
  }
  Output out(g.output);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.stream() << (j ? "," : "") << to_string(a(i, j));
    out.stream() << '\n';
  }
  return kHolds;
}

ClassReport structured_gkk(const RatMatrix& a, const Source& s) {
  const Rational t = parse_rational(s.t);
  auto cert = certify_gkk_structured(a, s.k, t);
  ClassReport r;
  r.property = Property::GKK;
  r.holds = cert.holds;
  r.n = a.rows();
  r.params["method"] = "structured";
  r.params["leading_minors_checked"] = std::to_string(cert.leading_minors_checked);
  r.params["window_pairs_checked"] = std::to_string(cert.window_pairs_checked);
  r.params["exponent_triples_checked"] = std::to_string(cert.exponent_triples_checked);
  r.params["random_pairs_checked"] = std::to_string(cert.random_pairs_checked);
  if (!cert.holds) r.witness = Witness{std::nullopt, std::nullopt, {}, {}, cert.failure};
  return r;
}

ClassReport run_property(Property p, const RatMatrix& a, const SweepLimits& lim) {
  switch (p) {
    case Property::P: return is_P_matrix(a, lim);
    case Property::WSS: return is_weakly_sign_symmetric(a, lim);
    case Property::GKK: return is_GKK(a, lim);
    case Property::OMEGA: return is_omega(a, lim);
    case Property::TAU: return is_tau(a, lim);
    case Property::POS_STABLE: return is_positive_stable(a);
    case Property::VARGA_WEDGE: return varga_wedge_check(a);
  }
  throw std::logic_error("unknown property");
}

int cmd_classify(const Globals& g, const Source& s, const std::vector<std::string>& names, bool structured) {
  require_format(g, {"json"});
  std::vector<Property> props;
  for (const auto& name : names) {
    if (name == "all" || name == "ALL") {
      props = {Property::P,   Property::WSS,        Property::GKK,        Property::OMEGA,
               Property::TAU, Property::POS_STABLE, Property::VARGA_WEDGE};
      break;
    }
    auto p = parse_property(name);
    if (!p) throw UsageError("unknown property " + name);
    props.push_back(*p);
  }
  if (props.empty()) throw UsageError("no property requested");
  if (structured && !is_family(s)) throw UsageError("--structured needs a family matrix (--n --k --t)");
  RatMatrix a = load_matrix(s);
  SweepLimits lim;
  lim.jobs = g.jobs;
  if (g.cap_n) lim.p_cap = lim.pair_cap = g.cap_n;

  Json reports = Json::array();
  bool all_hold = true;
  for (Property p : props) {
    ClassReport r;
    try {
      r = structured && p == Property::GKK ? structured_gkk(a, s) : run_property(p, a, lim);
    } catch (const SweepCapError& e) {
      throw UsageError(std::string(to_string(p)) + " refused: " + e.what());
    } catch (const std::domain_error& e) {
      throw UsageError(std::string(to_string(p)) + " undefined: " + e.what());
    }
    all_hold = all_hold && r.holds;
    reports.push_back(to_json(r));
  }
  emit_json(g, Json{{"matrix", describe_source(s)}, {"n", a.rows()}, {"reports", std::move(reports)}});
  return all_hold ? kHolds : kFails;
}

int cmd_charpoly(const Globals& g, const Source& s) {
  require_format(g, {"json"});
  Polynomial p = charpoly(load_matrix(s));
  Json j = to_json(p);
  j["text"] = p.to_string();
  emit_json(g, j, -1);
  return kHolds;
}

int cmd_roots(const Globals& g, const Source& s, bool real_only) {
  require_format(g, {"json"});
  Polynomial p = load_polynomial(s);
  Json j{{"degree", p.degree()}};
  if (real_only) {
    const Rational width(Integer(1), Integer(1) << g.precision);
    SturmSequence sturm(p);
    Json list = Json::array();
    for (const auto& e : real_roots(p)) list.push_back(to_json(refine(e, sturm, width)));
    j["width_exponent"] = g.precision;
    j["real_roots"] = std::move(list);
  } else {
    j.update(to_json(complex_roots_with_multiplicity(p)));
  }
  emit_json(g, j);
  return kHolds;
}

int cmd_hurwitz(const Globals& g, const Source& s, std::size_t tnn_order) {
  require_format(g, {"json"});
  Polynomial p = load_polynomial(s);
  auto h = build_hurwitz(p);
  Stability st = routh_stable(p);
  Json minors = Json::array();
  for (const auto& m : hurwitz_leading_minors(p)) minors.push_back(to_string(m));
  Json j{{"polynomial", to_json(p)}, {"matrix", to_json(h.matrix)}, {"routh", to_string(st)},
         {"leading_minors", std::move(minors)}};
  if (s.eta >= 3) {
    const long k = static_cast<long>(s.eta);
    j["minor_2to5"] = to_string(hurwitz_minor_2to5(k));
    j["closed_form_minor"] = to_string(closed_form_minor(k));
  }
  if (tnn_order) {
    if (tnn_order > h.matrix.rows()) throw UsageError("--tnn-order exceeds the matrix order");
    j["tnn"] = to_json(tnn_spot_check(h, tnn_order, g.jobs));
  }
  emit_json(g, j);
  return st == Stability::stable ? kHolds : kFails;
}

int cmd_scan_k(const Globals& g, long k_max) {
  if (k_max < 21) throw UsageError("scan range below known threshold: --k-max must be at least 21");
  auto scan = threshold_scan(k_max);
  const std::string format = g.format_given ? g.format : "csv";
  if (format == "csv") {
    Output out(g.output);
    write_scan_csv(out.stream(), scan);
  } else if (format == "json") {
    emit_json(g, to_json(scan));
  } else {
    throw UsageError("format " + format + " is not available for this command");
  }
  std::cerr << "first unstable k = " << (scan.first_negative ? std::to_string(*scan.first_negative) : "none")
            << '\n';
  return kHolds;
}

int cmd_verify_paper(const Globals& g) {
  require_format(g, {"json"});
  VerifyOptions opt;
  opt.jobs = g.jobs;
  auto results = verify_paper(opt);
  bool all = true;
  Json items = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    Json item{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
    item["deviation"] = r.deviation ? Json(to_decimal(Real(*r.deviation), 3)) : Json(nullptr);
    items.push_back(std::move(item));
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << ' ' << r.title << " (" << r.seconds << " s)\n";
  }
  emit_json(g, Json{{"passed", all}, {"checks", std::move(items)}});
  return all ? kHolds : kFails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of GKK, tau and stability properties of Toeplitz Hessenberg matrices"};
  app.set_config("--config", "", "TOML file with the same keys as the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--output,-o", g.output, "write the result here instead of stdout");
  auto* fmt = app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--precision", g.precision, "real root enclosures are refined to width 2^-precision")
      ->check(CLI::Range(1u, 4096u));
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::Range(1u, 256u));
  app.add_option("--cap-n", g.cap_n, "largest order accepted by brute-force sweeps")->check(CLI::Range(1, 30));

  Source src;
  auto* build = app.add_subcommand("build", "emit A(n, k, t) or B_k");
  add_matrix_source(build, src);

  std::vector<std::string> props{"all"};
  bool structured = false;
  auto* classify = app.add_subcommand("classify", "certify matrix classes with witnesses");
  add_matrix_source(classify, src);
  classify->add_option("--property,-p", props, "P, WSS, GKK, OMEGA, TAU, POS_STABLE, VARGA_WEDGE or all");
  classify->add_flag("--structured", structured, "certify GKK of a family matrix by structured checks");

  auto* cp = app.add_subcommand("charpoly", "exact characteristic polynomial det(A - l I)");
  add_matrix_source(cp, src);

  bool real_only = false;
  auto* roots = app.add_subcommand("roots", "roots of a characteristic or given polynomial");
  add_matrix_source(roots, src);
  roots->add_option("--poly", src.poly_file, "polynomial JSON instead of a matrix");
  roots->add_option("--eta", src.eta, "the polynomial eta_k");
  roots->add_flag("--real", real_only, "exact real root enclosures instead of complex roots");

  std::size_t tnn_order = 0;
  auto* hur = app.add_subcommand("hurwitz", "Hurwitz matrix, Routh test and minors");
  hur->add_option("--eta", src.eta, "the polynomial eta_k");
  hur->add_option("--poly", src.poly_file, "polynomial JSON");
  hur->add_option("--tnn-order", tnn_order, "search minors up to this order for a negative one");

  long k_max = 40;
  auto* scan = app.add_subcommand("scan-k", "sign of the Hurwitz minor [2:5] for k = 3..k_max");
  scan->add_option("--k-max", k_max, "last k scanned");

  auto* verify = app.add_subcommand("verify-paper", "run the full reproduction suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  g.format_given = fmt->count() > 0;

  try {
    if (*build) return cmd_build(g, src);
    if (*classify) return cmd_classify(g, src, props, structured);
    if (*cp) return cmd_charpoly(g, src);
    if (*roots) return cmd_roots(g, src, real_only);
    if (*hur) {
      if ((src.eta > 0) == !src.poly_file.empty()) throw UsageError("give exactly one of --eta or --poly");
      return cmd_hurwitz(g, src, tnn_order);
    }
    if (*scan) return cmd_scan_k(g, k_max);
    if (*verify) return cmd_verify_paper(g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
