// mmf-cli: command-line front end for the mmf library.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "mmf/mmf.hpp"

namespace {

using mmf::io::json;

struct RunConfig {
  int p = 3;
  int m = 1;
  long prec = -1;
  std::uint64_t seed = 1;
  std::string format = "auto";

  mmf::FieldPtr field() const { return mmf::field_make(p, m); }
  long precision() const { return prec; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(RunConfig& cfg) {
  if (cfg.p < 3 || !mmf::is_prime(cfg.p)) throw UsageError("--p must be an odd prime");
  if (cfg.m < 1 || mmf::ipow(cfg.p, static_cast<unsigned>(cfg.m)) > (1LL << 24)) throw UsageError("--m out of range");
  if (cfg.prec < 0) cfg.prec = std::max(40L, static_cast<long>(cfg.p) * cfg.p);
  if (cfg.prec < static_cast<long>(cfg.p) * cfg.p) throw UsageError("--prec must be at least p^2");
  if (cfg.format != "auto" && cfg.format != "json" && cfg.format != "table") throw UsageError("--format must be auto, json or table");
}

// Parse failures are usage errors, not math errors.
template <class Fn>
auto parsed(Fn&& fn) {
  try {
    return fn();
  } catch (const mmf::math_error& e) {
    throw UsageError(e.what());
  }
}

mmf::Rational rational_arg(const std::string& t) { return parsed([&] { return mmf::parse_rational(t); }); }
mmf::PMatrix matrix_arg(const std::string& t) { return parsed([&] { return mmf::io::parse_matrix(t); }); }
mmf::TameChar char_arg(const std::string& t, mmf::FieldPtr f) { return parsed([&] { return mmf::parse_tame_char(t, f); }); }
mmf::FieldElem elem_arg(const std::string& t, mmf::FieldPtr f) { return parsed([&] { return mmf::parse_field_elem(t, f); }); }

void flatten(const json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << " = " << j.dump() << "\n";
  }
}

// Scalars print bare in auto mode; structured results as JSON.
void emit(const RunConfig& cfg, const json& body, const json* scalar = nullptr) {
  if (scalar && cfg.format == "auto") {
    std::cout << (scalar->is_string() ? scalar->get<std::string>() : scalar->dump()) << "\n";
    return;
  }
  const json out = mmf::io::with_schema(body);
  if (cfg.format == "table") {
    flatten(out, "", std::cout);
    return;
  }
  std::cout << out.dump(2) << "\n";
}

void emit_scalar(const RunConfig& cfg, const std::string& key, const json& value) {
  emit(cfg, json{{key, value}}, &value);
}

struct InducedArgs {
  int n = 4;
  long long h = 1;
  std::string lam = "1";
  int tame = 0;

  void add(CLI::App* sub) {
    sub->add_option("--n", n, "Induction degree")->check(CLI::Range(1, 8));
    sub->add_option("--h", h, "Exponent of omega_n");
    sub->add_option("--lam", lam, "Unramified value");
    sub->add_option("--tame", tame, "Tame twist exponent");
  }
  mmf::PhiGammaModule module(const RunConfig& cfg) const {
    return mmf::make_induced(n, h, elem_arg(lam, cfg.field()), tame, cfg.precision());
  }
  mmf::InducedParams params(const RunConfig& cfg) const {
    return mmf::InducedParams::with_twist(n, h, tame, elem_arg(lam, cfg.field()).pow(n));
  }
};

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw UsageError("malformed integer list: " + text);
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Metaplectic (phi, Gamma)-module calculator"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--p", cfg.p, "Odd prime");
  app.add_option("--m", cfg.m, "Degree of the coefficient field over F_p");
  app.add_option("--prec", cfg.prec, "X-adic precision (default max(40, p^2))");
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");
  app.add_option("--format", cfg.format, "auto, json or table");

  std::vector<std::function<void()>> actions;
  auto command = [&](const std::string& name, const std::string& help) {
    return app.add_subcommand(name, help);
  };

  std::string a_text, b_text;
  auto* hilbert = command("hilbert", "Hilbert symbol (a, b)");
  hilbert->add_option("a", a_text)->required();
  hilbert->add_option("b", b_text)->required();
  hilbert->callback([&] {
    emit_scalar(cfg, "hilbert", mmf::hilbert(rational_arg(a_text), rational_arg(b_text), cfg.p));
  });

  std::string g1_text, g2_text;
  auto* cocycle = command("cocycle", "Cocycle sigma(g1, g2); matrices as a,b,c,d");
  cocycle->add_option("g1", g1_text)->required();
  cocycle->add_option("g2", g2_text)->required();
  cocycle->callback([&] {
    emit_scalar(cfg, "cocycle", mmf::cocycle(matrix_arg(g1_text), matrix_arg(g2_text), cfg.p));
  });

  int zeta = 1;
  auto* split = command("split", "Lift of g in K to the cover");
  split->add_option("g", g1_text)->required();
  split->add_option("--zeta", zeta)->check(CLI::IsMember({-1, 1}));
  split->callback([&] { emit(cfg, {{"lift", mmf::io::to_json(mmf::kappa_split(matrix_arg(g1_text), zeta, cfg.p))}}); });

  std::string z_text, x_text;
  auto* chiz = command("chi-z", "Quadratic character chi_z, optionally evaluated at x");
  chiz->add_option("z", z_text)->required();
  chiz->add_option("x", x_text);
  chiz->callback([&] {
    const auto q = mmf::chi_z(rational_arg(z_text), cfg.p);
    json body = {{"chi_z", mmf::io::to_json(q)}};
    if (!x_text.empty()) body["value"] = q.evaluate(rational_arg(x_text), cfg.p);
    emit(cfg, body);
  });

  std::string chi_text = "1";
  unsigned long long unit = 2;
  auto* rank1 = command("build-rank1", "Rank-1 module D(chi)");
  rank1->add_option("--chi", chi_text, "Character, e.g. mu(2)*omega^3");
  rank1->add_option("--c", unit, "Unit at which to print gamma");
  rank1->callback([&] {
    emit(cfg, {{"module", mmf::io::to_json(mmf::make_rank1(char_arg(chi_text, cfg.field()), cfg.precision()), unit)}});
  });

  InducedArgs ind;
  auto* induced = command("build-induced", "Induced module of omega_n^h");
  ind.add(induced);
  induced->add_option("--c", unit);
  induced->callback([&] {
    emit(cfg, {{"module", mmf::io::to_json(ind.module(cfg), unit)}, {"galois", mmf::io::to_json(ind.params(cfg))}});
  });

  auto* twist = command("twist", "Twist an induced module by a tame character");
  ind.add(twist);
  twist->add_option("--chi", chi_text);
  twist->add_option("--c", unit);
  twist->callback([&] {
    const auto chi = char_arg(chi_text, cfg.field());
    emit(cfg, {{"module", mmf::io::to_json(mmf::twist(ind.module(cfg), chi), unit)},
               {"galois", mmf::io::to_json(mmf::twist(ind.params(cfg), chi))}});
  });

  auto* dual = command("dual", "Dual of an induced module");
  ind.add(dual);
  dual->add_option("--c", unit);
  dual->callback([&] {
    emit(cfg, {{"module", mmf::io::to_json(mmf::dual(ind.module(cfg)), unit)},
               {"galois", mmf::io::to_json(mmf::dual(ind.params(cfg)))}});
  });

  long val = 0;
  std::string coeffs_text;
  auto* psi = command("psi", "psi on k((X)) applied to X^val (c0 + c1 X + ...)");
  psi->add_option("--val", val);
  psi->add_option("--coeffs", coeffs_text)->required();
  psi->callback([&] {
    const auto f = mmf::LaurentSeries::from_ints(cfg.field(), val, parse_int_list(coeffs_text), cfg.precision());
    const auto parts = mmf::phi_basis_decompose(f);
    json comps = json::array();
    for (const auto& g : parts) comps.push_back(mmf::io::to_json(g));
    emit(cfg, {{"input", mmf::io::to_json(f)}, {"psi", mmf::io::to_json(parts.front())}, {"components", comps}});
  });

  int r = 0;
  bool noise = false;
  auto* normalize = command("normalize", "Normal form of the dual-basis cyclic form of the supersingular data");
  normalize->add_option("--r", r)->required();
  normalize->add_flag("--noise", noise, "Inject seeded random 1-unit noise");
  normalize->callback([&] {
    auto form = mmf::dual_basis_form(mmf::ss_data(cfg.p, r, cfg.field()).cycle());
    if (noise) {
      mmf::Sampler s(cfg.p, cfg.seed);
      for (auto& g : form.noise) g = s.one_unit(cfg.field(), cfg.precision());
    }
    const auto nf = mmf::normalize_cyclic(form, cfg.precision());
    emit(cfg, {{"seed", cfg.seed}, {"cyclic_form", mmf::io::to_json(form)}, {"normal_form", mmf::io::to_json(nf, true)}});
  });

  auto* classify = command("classify-ss", "Supersingular data through to Galois parameters");
  classify->add_option("--r", r)->required();
  classify->callback([&] {
    const auto d = mmf::ss_data(cfg.p, r, cfg.field());
    const auto form = mmf::dual_basis_form(d.cycle());
    const auto nf = mmf::normalize_cyclic(form, cfg.precision());
    const auto g = mmf::galois_of_cycle(d);
    emit(cfg, {{"ss_data", mmf::io::to_json(d)},
               {"cyclic_form", mmf::io::to_json(form)},
               {"normal_form", mmf::io::to_json(nf)},
               {"galois", mmf::io::to_json(g)},
               {"closed_form_agrees", g == mmf::ss_closed_form(cfg.p, r, cfg.field())},
               {"normalized_exponent", mmf::lemma1_classify(g).value_or(0)}});
  });

  int index = 1;
  long digits = 4;
  int level = 0;
  auto* simulate = command("simulate-dual", "Finite-level simulation of phi and gamma on the dual");
  simulate->add_option("--r", r)->required();
  simulate->add_option("--i", index)->check(CLI::Range(1, 4));
  simulate->add_option("--K", digits)->check(CLI::PositiveNumber);
  simulate->add_option("--level", level);
  simulate->add_option("--c", unit);
  simulate->callback([&] {
    const auto d = mmf::ss_data(cfg.p, r, cfg.field());
    std::optional<int> lv;
    if (level > 0) lv = level;
    const auto sim = mmf::simulate_dual_frobenius(d, index, digits, lv);
    emit(cfg, {{"frobenius", mmf::io::to_json(sim)},
               {"gamma_unit", unit},
               {"gamma", mmf::io::to_json(mmf::simulate_dual_gamma(d.cycle(), index, unit, digits, lv))}});
  });

  long long h_odd = 1;
  auto* reduce = command("galois-reduce", "Reduce Ind(omega_4^{(p^2+1)/2 h}) to omega^a (x) Ind(omega_4^{(p^2+1)/2 h'})");
  reduce->add_option("--h", h_odd)->required();
  reduce->callback([&] {
    const auto [a, hp] = mmf::lemma2_reduce(h_odd, cfg.p);
    emit(cfg, {{"h", h_odd}, {"a", a}, {"h_prime", hp}});
  });

  int n_iso = 4;
  long long H1 = 0, H2 = 0;
  std::string lam1 = "1", lam2 = "1";
  auto* iso = command("galois-iso", "Isomorphism test of two induced parameters");
  iso->add_option("--n", n_iso);
  iso->add_option("--H1", H1)->required();
  iso->add_option("--H2", H2)->required();
  iso->add_option("--lam1", lam1, "Lam of the first (lambda^n)");
  iso->add_option("--lam2", lam2);
  iso->callback([&] {
    const auto f = cfg.field();
    emit_scalar(cfg, "isomorphic",
                mmf::iso_test(mmf::InducedParams::make(n_iso, H1, elem_arg(lam1, f)),
                              mmf::InducedParams::make(n_iso, H2, elem_arg(lam2, f))));
  });

  std::string chi1_text = "1", chi2_text = "1";
  auto* ps = command("ps-image", "Image of the principal series pi~(chi1, chi2)");
  ps->add_option("--chi1", chi1_text);
  ps->add_option("--chi2", chi2_text);
  ps->callback([&] {
    const auto f = cfg.field();
    emit(cfg, {{"image", mmf::io::to_json(mmf::ps_image(char_arg(chi1_text, f), char_arg(chi2_text, f)))}});
  });

  std::string eta_text = "1";
  auto* ss = command("ss-image", "Image of the supersingular pi~(r, 0, eta)");
  ss->add_option("--r", r)->required();
  ss->add_option("--eta", eta_text);
  ss->callback([&] {
    const auto m = mmf::ss_image(mmf::SSRep{r, char_arg(eta_text, cfg.field())});
    json thetas = json::array();
    for (const auto& t : mmf::theta_candidates(m))
      thetas.push_back({{"eps", mmf::io::to_json(t.eps)}, {"s_char", mmf::io::to_json(t.s_char)}});
    emit(cfg, {{"image", mmf::io::to_json(m)}, {"theta_candidates", thetas}});
  });

  auto* bij = command("verify-bijection", "Enumerate both sides of the supersingular correspondence");
  bij->callback([&] { emit(cfg, {{"report", mmf::io::to_json(mmf::verify_bijection(cfg.p, cfg.m))}}); });

  bool failed = false;
  auto* self = command("selftest", "Run the invariant suite");
  self->callback([&] {
    json results = json::array();
    for (const auto& res : mmf::run_selftest(cfg.seed)) {
      failed = failed || !res.passed;
      if (cfg.format == "auto") std::cout << (res.passed ? "PASS " : "FAIL ") << res.name << (res.detail.empty() ? "" : " (" + res.detail + ")") << "\n";
      results.push_back({{"name", res.name}, {"passed", res.passed}, {"detail", res.detail}});
    }
    if (cfg.format != "auto") emit(cfg, {{"seed", cfg.seed}, {"results", results}});
  });

  app.parse_complete_callback([&] { validate(cfg); });
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const mmf::math_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
