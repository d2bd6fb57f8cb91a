// dhb: command-line front end for quadratic systems, their algebras, gDHB
// recognition and numerical Brioschi checks.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dhb/corpus.hpp"
#include "dhb/descriptor.hpp"
#include "dhb/dhb_algebra.hpp"
#include "dhb/fuchsian.hpp"
#include "dhb/numeric.hpp"

using namespace dhb;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Common {
  bool json = false;
};

Json report_header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

template <class F>
std::string format_vector(const Vector<F>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_scalar(v[i]);
  return s + ")";
}

template <class F, std::size_t N>
std::string format_array(const std::array<F, N>& v) {
  return format_vector(Vector<F>(v.begin(), v.end()));
}

template <class F>
Json exact_json(const F& x) {
  return FieldTraits<F>::format(x);
}

template <class F>
Json exact_json(const Vector<F>& v) {
  Json out = Json::array();
  for (const F& x : v) out.push_back(exact_json(x));
  return out;
}

template <class F, std::size_t N>
Json exact_json(const std::array<F, N>& v) {
  return exact_json(Vector<F>(v.begin(), v.end()));
}

template <class F>
Json exact_json(const Matrix<F>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(exact_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Descriptor resolve(const std::string& arg) {
  if (arg == "-") {
    try {
      return descriptor_from_json(Json::parse(std::cin));
    } catch (const Json::exception& e) {
      throw InvalidInput(std::string("stdin: ") + e.what());
    }
  }
  if (std::filesystem::exists(arg)) return load_descriptor(arg);
  if (auto d = corpus_descriptor(arg)) return *d;
  throw InvalidInput("'" + arg + "' is neither a readable file nor a corpus entry (see 'dhb corpus list')");
}

std::string display_name(const Descriptor& d, const std::string& arg) { return d.name.empty() ? arg : d.name; }

template <class F>
std::string format_linear(const LinearForm<F>& l, const std::vector<std::string>& labels) {
  if (is_zero(l.coeffs)) return "0";
  std::string out;
  for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
    if (is_zero(l.coeffs[i])) continue;
    std::string c = format_scalar(l.coeffs[i]);
    const bool neg = c.rfind('-', 0) == 0;
    if (neg) c.erase(0, 1);
    if (c == "1") c.clear();
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += c.empty() ? labels[i] : c + " " + labels[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// analyze

template <class F>
int analyze_exact(const Descriptor& d, const SystemData<F>& s, const std::string& name, const Common& common) {
  const Algebra<F> alg = system_to_algebra(s.system);
  const auto unit = find_unit(alg);
  const std::size_t dd = derivation_dimension(alg);
  std::optional<Rank3Class> cls;
  if (s.system.dim() == 3) cls = classify_rank3(alg);
  std::optional<std::optional<LinearForm<F>>> cof;
  if (s.quadric) cof = find_cofactor(s.system, *s.quadric);

  if (common.json) {
    Json j = report_header("analyze");
    j["system"] = name;
    j["scalar_domain"] = to_string(d.domain());
    j["dim"] = s.system.dim();
    j["unit"] = unit ? exact_json(*unit) : Json(nullptr);
    j["derivation_dimension"] = dd;
    j["classification"] = cls ? Json(to_string(*cls)) : Json(nullptr);
    if (cof) {
      j["quadric"] = format_quadric(*s.quadric, d.labels);
      j["cofactor"] = *cof ? exact_json((*cof)->coeffs) : Json(nullptr);
    }
    emit_json(j);
    return kOk;
  }
  std::cout << "system: " << name << " (" << to_string(d.domain()) << ", dim " << s.system.dim() << ")\n";
  for (std::size_t i = 0; i < s.system.dim(); ++i)
    std::cout << "  d" << d.labels[i] << "/dt = " << format_quadric(s.system.component(i), d.labels) << "\n";
  std::cout << "unit: " << (unit ? format_vector(*unit) : std::string("none")) << "\n";
  std::cout << "derivation dimension: " << dd << (dd == 0 ? " (finite automorphism group)" : "") << "\n";
  if (cls) std::cout << "rank-3 class: " << to_string(*cls) << "\n";
  if (cof) {
    std::cout << "quadric: " << format_quadric(*s.quadric, d.labels) << "\n";
    if (!*cof) std::cout << "cofactor: none (the quadric is not invariant)\n";
    else if (is_zero((*cof)->coeffs)) std::cout << "cofactor: L = 0 (first integral)\n";
    else std::cout << "cofactor: L = " << format_linear(**cof, d.labels) << "\n";
  }
  return kOk;
}

int cmd_analyze(const std::string& arg, const Common& common) {
  const Descriptor d = resolve(arg);
  const std::string name = display_name(d, arg);
  if (const auto* r = std::get_if<SystemData<Rational>>(&d.data)) return analyze_exact(d, *r, name, common);
  if (const auto* e = std::get_if<SystemData<Eisenstein>>(&d.data)) return analyze_exact(d, *e, name, common);
  throw InvalidInput("analysis is exact; complex-domain descriptors are accepted by 'verify' only");
}

// ---------------------------------------------------------------------------
// recognize

template <class F>
LinearMap<F> load_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open basis file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  const Json& m = j.is_object() ? j.at("basis") : j;
  if (!m.is_array() || m.size() != 4) throw InvalidInput("basis must be a 4x4 matrix (rows are basis elements)");
  Matrix<F> out(4, 4);
  for (std::size_t r = 0; r < 4; ++r) {
    if (!m[r].is_array() || m[r].size() != 4) throw InvalidInput("basis must be a 4x4 matrix");
    for (std::size_t c = 0; c < 4; ++c) {
      const Json& x = m[r][c];
      if (x.is_number_integer()) out(r, c) = F(Rational(x.get<long>()));
      else if (x.is_string()) out(r, c) = FieldTraits<F>::parse(x.get<std::string>());
      else throw InvalidInput("basis entries must be exact strings");
    }
  }
  return LinearMap<F>(out);
}

struct RecognizeOptions {
  std::string basis_file;
  bool search = false;
  std::uint64_t seed = 1;
};

template <class F>
int recognize_exact(const Descriptor& d, const SystemData<F>& s, const std::string& name, const RecognizeOptions& ro,
                    const Common& common) {
  if (s.system.dim() != 4) throw InvalidInput("recognize needs a 4-dimensional system");
  if (!s.quadric) throw InvalidInput("recognize needs a descriptor with a quadric");
  const auto cof = find_cofactor(s.system, *s.quadric);
  const ParametricAlgebra<F> pa(s.system, *s.quadric);
  std::optional<LinearMap<F>> basis;
  std::string basis_source = "identity";
  if (!ro.basis_file.empty()) {
    basis = load_basis<F>(ro.basis_file);
    basis_source = ro.basis_file;
  } else if (!ro.search) {
    basis = LinearMap<F>::identity(4);
  } else {
    basis_source = "search";
  }
  SearchOptions so;
  so.seed = ro.seed;
  const RecognitionReport<F> rep = recognize(pa, basis, so);

  if (common.json) {
    Json j = report_header("recognize");
    j["system"] = name;
    j["scalar_domain"] = to_string(d.domain());
    j["cofactor"] = cof ? exact_json(cof->coeffs) : Json(nullptr);
    j["basis_source"] = basis_source;
    j["search"] = rep.searched ? Json{{"found", rep.search_found}} : Json(nullptr);
    j["basis"] = exact_json(rep.basis_used);
    j["condition1"] = rep.condition1;
    Json c3 = Json::array();
    for (std::size_t i = 0; i < 4; ++i)
      c3.push_back(rep.condition3_lambda[i] ? exact_json(*rep.condition3_lambda[i]) : Json(nullptr));
    j["condition3_lambda"] = c3;
    j["condition2_c"] = rep.condition2 ? exact_json(rep.condition2->c) : Json(nullptr);
    if (rep.normal_form) {
      const auto& nf = *rep.normal_form;
      j["normal_form"] = Json{{"alpha_tilde", exact_json(nf.alpha_tilde)}, {"beta_tilde", exact_json(nf.beta_tilde)},
                              {"gamma", exact_json(nf.gamma)},             {"alpha", exact_json(nf.alpha)},
                              {"beta", exact_json(nf.beta)},               {"c", exact_json(nf.c)}};
    } else {
      j["normal_form"] = nullptr;
    }
    j["recognized"] = rep.passed();
    j["failure"] = rep.failure;
    emit_json(j);
    return rep.passed() ? kOk : kNegative;
  }

  const auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::cout << "system: " << name << " (" << to_string(d.domain()) << ")\n";
  std::cout << "quadric: " << format_quadric(*s.quadric, d.labels) << "\n";
  if (!cof) std::cout << "cofactor: none (the quadric is not invariant)\n";
  else std::cout << "cofactor: L = " << format_linear(*cof, d.labels) << "\n";
  if (rep.searched)
    std::cout << "basis search: " << (rep.search_found ? "found a basis passing exact verification" : "no basis found")
              << "\n";
  else
    std::cout << "basis: " << basis_source << "\n";
  if (rep.searched && rep.search_found)
    for (std::size_t r = 0; r < 4; ++r)
      std::cout << "  x" << r << " = " << format_vector(rep.basis_used.row(r)) << "\n";
  std::cout << "condition 1 (x0+x1+x2+x3 is a unit for every c): " << verdict(rep.condition1) << "\n";
  if (rep.condition1) {
    std::cout << "condition 3 (single-minus squares proportional to the unit):";
    for (std::size_t i = 0; i < 4; ++i)
      std::cout << " " << (rep.condition3_lambda[i] ? format_scalar(*rep.condition3_lambda[i]) : std::string("FAIL"));
    std::cout << "\n";
  }
  if (rep.condition1 && rep.condition3_all()) {
    std::cout << "condition 2 (a common c for the two-minus squares): " << verdict(rep.condition2.has_value());
    if (rep.condition2) std::cout << "  c = " << format_vector(rep.condition2->c);
    std::cout << "\n";
  }
  if (rep.normal_form) {
    const auto& nf = *rep.normal_form;
    std::cout << "normal form:\n"
              << "  alpha~ = " << format_array(nf.alpha_tilde) << "\n"
              << "  beta~  = " << format_array(nf.beta_tilde) << "\n"
              << "  gamma  = " << format_array(nf.gamma) << "\n"
              << "  alpha  = " << format_array(nf.alpha) << "\n"
              << "  beta   = " << format_array(nf.beta) << "\n"
              << "  c      = " << format_vector(nf.c) << "\n";
    std::cout << "verdict: gDHB\n";
    return kOk;
  }
  std::cout << "verdict: not recognized (" << rep.failure << ")\n";
  return kNegative;
}

int cmd_recognize(const std::string& arg, const RecognizeOptions& ro, const Common& common) {
  const Descriptor d = resolve(arg);
  const std::string name = display_name(d, arg);
  if (const auto* r = std::get_if<SystemData<Rational>>(&d.data)) return recognize_exact(d, *r, name, ro, common);
  if (const auto* e = std::get_if<SystemData<Eisenstein>>(&d.data)) return recognize_exact(d, *e, name, ro, common);
  throw InvalidInput("recognize needs an exact scalar domain");
}

// ---------------------------------------------------------------------------
// build-dhb

struct BuildOptions {
  std::string input;
  std::vector<std::string> hypergeometric;
  std::string out;
};

template <ExactField F>
FuchsianData<F> fuchsian_from_json(const Json& j) {
  const Json& f = j.contains("fuchsian") ? j.at("fuchsian") : j;
  const auto list = [&](const char* key) {
    if (!f.contains(key) || !f.at(key).is_array()) throw InvalidInput(std::string("Fuchsian input needs a list '") + key + "'");
    std::vector<F> out;
    for (const auto& x : f.at(key)) {
      if (x.is_number_integer()) out.push_back(F(Rational(x.get<long>())));
      else if (x.is_string()) out.push_back(FieldTraits<F>::parse(x.get<std::string>()));
      else throw InvalidInput(std::string("entries of '") + key + "' must be exact strings");
    }
    return out;
  };
  FuchsianData<F> fd{list("poles"), list("alpha"), list("beta")};
  fd.validate();
  return fd;
}

template <ExactField F>
int build_from(const FuchsianData<F>& fd, const std::string& source, const BuildOptions& bo, const Common& common) {
  const Descriptor d = gdhb_descriptor(fd, "gdhb-m" + std::to_string(fd.m()));
  const auto& s = std::get<SystemData<F>>(d.data);
  const std::string text = dump_descriptor(d);
  if (!bo.out.empty()) {
    std::ofstream out(bo.out);
    if (!out) throw InvalidInput("cannot write " + bo.out);
    out << text;
  }
  std::optional<HalphenABC<F>> abc;
  if (fd.m() == 2) {
    const F a = fd.beta[0] / F(2);
    abc = HalphenABC<F>{a, -fd.alpha[1] - a, -fd.alpha[0] - a};
  }

  if (common.json) {
    Json j = report_header("build-dhb");
    j["source"] = source;
    j["m"] = fd.m();
    j["constraints"] = s.constraints.size();
    if (abc) j["halphen2_abc"] = Json::array({exact_json(abc->a), exact_json(abc->b), exact_json(abc->c)});
    if (!bo.out.empty()) j["written"] = bo.out;
    j["descriptor"] = descriptor_to_json(d);
    emit_json(j);
    return kOk;
  }
  if (bo.out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::cout << "gDHB system with m = " << fd.m() << " from " << source << "\n";
  for (std::size_t i = 0; i < s.system.dim(); ++i)
    std::cout << "  d" << d.labels[i] << "/dtau = " << format_quadric(s.system.component(i), d.labels) << "\n";
  std::cout << "constraints: " << s.constraints.size() << "\n";
  for (const auto& c : s.constraints) std::cout << "  0 = " << format_quadric(c, d.labels) << "\n";
  if (abc)
    std::cout << "Halphen II parameters (a, b, c) = (" << format_scalar(abc->a) << ", " << format_scalar(abc->b) << ", "
              << format_scalar(abc->c) << ")\n";
  std::cout << "descriptor written to " << bo.out << "\n";
  return kOk;
}

int cmd_build_dhb(const BuildOptions& bo, const Common& common) {
  if (!bo.hypergeometric.empty()) {
    if (bo.hypergeometric.size() != 3) throw InvalidInput("--from-hypergeometric takes alpha beta gamma");
    const HGParams<Rational> hg{parse_rational(bo.hypergeometric[0]), parse_rational(bo.hypergeometric[1]),
                                parse_rational(bo.hypergeometric[2])};
    const auto [p, q] = hypergeometric_pq(hg);
    const auto fd = fuchsian_from_q(normal_form_reduce(p, q), std::vector<Rational>{0, 1});
    return build_from(fd, "hypergeometric (" + bo.hypergeometric[0] + ", " + bo.hypergeometric[1] + ", " +
                              bo.hypergeometric[2] + ")",
                      bo, common);
  }
  if (bo.input.empty()) throw InvalidInput("build-dhb needs a Fuchsian JSON file or --from-hypergeometric");
  std::ifstream in(bo.input);
  if (!in) throw InvalidInput("cannot open " + bo.input);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput(bo.input + ": " + e.what());
  }
  const std::string domain = j.contains("scalar_domain") ? j["scalar_domain"].get<std::string>() : "rational";
  switch (parse_domain(domain)) {
    case Domain::Rational:
      return build_from(fuchsian_from_json<Rational>(j), bo.input, bo, common);
    case Domain::Eisenstein:
      return build_from(fuchsian_from_json<Eisenstein>(j), bo.input, bo, common);
    case Domain::Complex:
      break;
  }
  throw InvalidInput("Fuchsian data needs an exact scalar_domain");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  bool integrate = false;
  bool brioschi = false;
  bool invariance = false;
  double tol = 1e-10;
  std::string dump;
  std::size_t samples = 101;
};

struct Check {
  std::string name;
  double value;
  double threshold;
  std::string note;
  bool ok() const { return value <= threshold; }
};

void write_brioschi_csv(const std::string& path, const BrioschiRun& run, const QuadraticSystem<Complex>& sys,
                        const std::vector<QuadricForm<Complex>>& constraints) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << std::setprecision(17) << "z_re,z_im,tau_re,tau_im";
  for (std::size_t k = 0; k < sys.dim(); ++k) out << ",X" << k << "_re,X" << k << "_im";
  out << ",residual\n";
  for (const auto& s : run.samples.samples) {
    BrioschiSamples one;
    one.samples = {s};
    const double r = gdhb_residual(sys, constraints, one).max();
    out << s.z.real() << "," << s.z.imag() << "," << s.tau.real() << "," << s.tau.imag();
    for (Complex x : s.x) out << "," << x.real() << "," << x.imag();
    out << "," << r << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, const std::vector<std::string>& labels) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << std::setprecision(17) << "t";
  for (const auto& l : labels) out << "," << l << "_re," << l << "_im";
  out << "\n";
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    out << traj.t[i];
    for (Complex x : traj.x[i]) out << "," << x.real() << "," << x.imag();
    out << "\n";
  }
}

template <class F>
int verify_typed(const Descriptor& d, const SystemData<F>& s, const std::string& name, VerifyOptions vo,
                 const Common& common) {
  if (!vo.integrate && !vo.brioschi && !vo.invariance) {
    vo.integrate = d.initial.has_value();
    vo.brioschi = d.fuchsian.has_value();
    vo.invariance = d.initial.has_value() && s.quadric.has_value();
    if (!vo.integrate && !vo.brioschi && !vo.invariance)
      throw InvalidInput("nothing to verify: the descriptor has neither initial data nor Fuchsian data");
  }
  IntegratorOptions opts;
  opts.tol = vo.tol;
  const QuadraticSystem<Complex> csys = to_complex(s.system);
  const double t_end = d.t_end.value_or(1.0);

  std::vector<Check> checks;
  Json j = report_header("verify");
  j["system"] = name;
  j["tol"] = vo.tol;
  std::optional<Trajectory> traj;

  if (vo.integrate || vo.invariance) {
    if (!d.initial) throw InvalidInput("the descriptor has no 'initial' state to integrate from");
  }

  if (vo.integrate) {
    traj = integrate_quadratic(csys, *d.initial, t_end, vo.samples, opts);
    Json t{{"t_end", t_end}, {"samples", traj->t.size()}, {"truncated", traj->truncated}};
    if (traj->truncated) t["truncation"] = traj->truncation_reason;
    Json fin = Json::array();
    for (Complex x : traj->x.back()) fin.push_back(complex_json(x));
    t["final_t"] = traj->t.back();
    t["final_state"] = fin;
    j["integrate"] = t;
  }

  if (vo.invariance) {
    if (!s.quadric) throw InvalidInput("--invariance needs a quadric");
    std::optional<LinearForm<Complex>> l;
    std::string note;
    bool invariant = true;
    if constexpr (ExactField<F>) {
      const auto cof = find_cofactor(s.system, *s.quadric);
      if (!cof) {
        invariant = false;
        note = "no exact cofactor: the quadric is not invariant";
      } else {
        l = to_complex(*cof);
        note = "L = " + format_linear(*cof, d.labels);
      }
    } else {
      note = "complex domain: L = 0 assumed";
    }
    const bool with_l = l && std::any_of(l->coeffs.begin(), l->coeffs.end(), [](Complex c) { return c != Complex(0); });
    const Trajectory tr = integrate_quadratic(csys, *d.initial, t_end, vo.samples, opts, l);
    const ResidualReport rep = invariance_drift(tr, to_complex(*s.quadric), l);
    const double threshold = with_l ? 1e-8 : 1e-9;
    checks.push_back({"invariance drift", invariant ? rep.max() : INFINITY, threshold, note});
    j["invariance"] = Json{{"drift", rep.max()},        {"threshold", threshold},       {"cofactor", note},
                           {"samples", rep.samples},    {"truncated", tr.truncated},    {"invariant", invariant}};
  }

  if (vo.brioschi) {
    if (!d.fuchsian) throw InvalidInput("--brioschi needs a 'fuchsian' block");
    if constexpr (ExactField<F>) {
      const FuchsianData<F> fd = fuchsian_data<F>(*d.fuchsian);
      const BrioschiRun run = run_brioschi(fd, opts);
      const GDHBSystem<F> g = build_gdhb(fd);
      const double threshold = d.domain() == Domain::Eisenstein ? 1e-7 : 1e-8;
      const double drift = run.solution.wronskian_drift();
      double eq = 0, con = 0;
      for (double r : run.residual.equations) eq = std::max(eq, r);
      for (double r : run.residual.constraints) con = std::max(con, r);
      checks.push_back({"gDHB equations", eq, threshold, ""});
      if (!run.residual.constraints.empty()) checks.push_back({"cross-ratio constraints", con, threshold, ""});
      checks.push_back({"Wronskian drift", drift, 1e-9, ""});
      Json path = Json::array();
      for (Complex z : run.path.points) path.push_back(complex_json(z));
      j["brioschi"] = Json{{"m", fd.m()},
                           {"path", path},
                           {"samples", run.residual.samples},
                           {"equation_residual", eq},
                           {"constraint_residual", con},
                           {"wronskian_drift", drift},
                           {"threshold", threshold},
                           {"descriptor_is_gdhb_tensor", g.system == s.system}};
      if (!vo.dump.empty()) {
        std::vector<QuadricForm<Complex>> cs;
        for (const auto& c : g.constraints) cs.push_back(to_complex(c));
        write_brioschi_csv(vo.dump, run, to_complex(g.system), cs);
      }
    } else {
      throw InvalidInput("Fuchsian data needs an exact scalar_domain");
    }
  } else if (!vo.dump.empty() && traj) {
    write_trajectory_csv(vo.dump, *traj, d.labels);
  }

  const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
  if (common.json) {
    Json cj = Json::array();
    for (const auto& c : checks)
      cj.push_back(Json{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"ok", c.ok()}});
    j["checks"] = cj;
    j["verified"] = all_ok;
    emit_json(j);
    return all_ok ? kOk : kNegative;
  }
  std::cout << "system: " << name << "  (integrator tol " << sci(vo.tol) << ")\n";
  if (traj) {
    std::cout << "integrate: t in [0, " << t_end << "], " << traj->t.size() << " samples"
              << (traj->truncated ? ", TRUNCATED: " + traj->truncation_reason : std::string()) << "\n";
  }
  if (j.contains("brioschi")) {
    const auto& b = j["brioschi"];
    std::cout << "brioschi: m = " << b["m"].get<std::size_t>() << ", " << b["samples"].get<std::size_t>()
              << " samples along";
    for (const auto& z : b["path"]) std::cout << " (" << z[0].get<double>() << (z[1].get<double>() < 0 ? "" : "+") << z[1].get<double>() << "i)";
    std::cout << "\n";
    if (!b["descriptor_is_gdhb_tensor"].get<bool>())
      std::cout << "  note: residuals use the gDHB system built from the Fuchsian data\n";
  }
  std::cout << std::left << std::setw(26) << "check" << std::setw(12) << "value" << std::setw(12) << "threshold"
            << "status\n";
  for (const auto& c : checks) {
    std::cout << std::left << std::setw(26) << c.name << std::setw(12) << sci(c.value) << std::setw(12)
              << sci(c.threshold) << (c.ok() ? "ok" : "EXCEEDED");
    if (!c.note.empty()) std::cout << "  " << c.note;
    std::cout << "\n";
  }
  if (checks.empty()) std::cout << "verdict: integrated (no residual check applies)\n";
  else std::cout << "verdict: " << (all_ok ? "verified" : "residual exceeded") << "\n";
  return all_ok ? kOk : kNegative;
}

int cmd_verify(const std::string& arg, const VerifyOptions& vo, const Common& common) {
  if (!(vo.tol > 0)) throw InvalidInput("--tol must be positive");
  const Descriptor d = resolve(arg);
  const std::string name = display_name(d, arg);
  return std::visit([&](const auto& s) { return verify_typed(d, s, name, vo, common); }, d.data);
}

// ---------------------------------------------------------------------------
// corpus

int cmd_corpus_list(const Common& common) {
  if (common.json) {
    Json j = report_header("corpus list");
    Json entries = Json::array();
    for (const auto& e : corpus_entries()) entries.push_back(Json{{"name", e.name}, {"description", e.description}});
    j["entries"] = entries;
    emit_json(j);
    return kOk;
  }
  for (const auto& e : corpus_entries()) std::cout << std::left << std::setw(26) << e.name << e.description << "\n";
  return kOk;
}

template <class F>
void show_typed(const Descriptor& d, const SystemData<F>& s) {
  for (std::size_t i = 0; i < s.system.dim(); ++i)
    std::cout << "  d" << d.labels[i] << "/dt = " << format_quadric(s.system.component(i), d.labels) << "\n";
  if (s.quadric) std::cout << "quadric: " << format_quadric(*s.quadric, d.labels) << "\n";
  for (const auto& c : s.constraints) std::cout << "constraint: 0 = " << format_quadric(c, d.labels) << "\n";
}

int cmd_corpus_show(const std::string& name, const Common& common) {
  const auto d = corpus_descriptor(name);
  if (!d) throw InvalidInput("unknown corpus entry '" + name + "'");
  if (common.json) {
    Json j = report_header("corpus show");
    j["descriptor"] = descriptor_to_json(*d);
    emit_json(j);
    return kOk;
  }
  std::cout << name << " (" << to_string(d->domain()) << ", dim " << d->dim() << ")\n";
  std::visit([&](const auto& s) { show_typed(*d, s); }, d->data);
  if (d->fuchsian) {
    const auto join = [](const std::vector<std::string>& v) {
      std::string out;
      for (const auto& x : v) out += (out.empty() ? "" : ", ") + x;
      return "(" + out + ")";
    };
    std::cout << "fuchsian: poles " << join(d->fuchsian->poles) << ", alpha " << join(d->fuchsian->alpha) << ", beta "
              << join(d->fuchsian->beta) << "\n";
  }
  return kOk;
}

int cmd_corpus_export(const std::string& name, const std::string& out_path) {
  const auto d = corpus_descriptor(name);
  if (!d) throw InvalidInput("unknown corpus entry '" + name + "'");
  const std::string text = dump_descriptor(*d);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot write " + out_path);
    out << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic systems, their algebras, gDHB recognition and Brioschi checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_flag("--json", common.json, "machine-readable JSON output");

  std::string target;
  auto* analyze = app.add_subcommand("analyze", "unit, derivations, rank-3 class and cofactor of a system");
  analyze->add_option("system", target, "descriptor file, corpus name, or - for stdin")->required();

  RecognizeOptions ro;
  auto* recog = app.add_subcommand("recognize", "decide whether a rank-4 system with quadric is gDHB");
  recog->add_option("system", target, "descriptor file, corpus name, or - for stdin")->required();
  recog->add_option("--basis", ro.basis_file, "JSON 4x4 matrix whose rows are the candidate basis");
  recog->add_flag("--search", ro.search, "search numerically for a basis, then verify exactly");
  recog->add_option("--seed", ro.seed, "seed of the basis search");

  BuildOptions bo;
  auto* build = app.add_subcommand("build-dhb", "gDHB system and constraints from Fuchsian data");
  build->add_option("input", bo.input, "JSON with poles, alpha, beta");
  build->add_option("--from-hypergeometric", bo.hypergeometric, "hypergeometric parameters alpha beta gamma")
      ->expected(3);
  build->add_option("--out", bo.out, "write the descriptor here");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "numerical residual checks");
  verify->add_option("system", target, "descriptor file, corpus name, or - for stdin")->required();
  verify->add_flag("--integrate", vo.integrate, "integrate the system from its initial state");
  verify->add_flag("--brioschi", vo.brioschi, "gDHB residual of Brioschi variables from the Fuchsian data");
  verify->add_flag("--invariance", vo.invariance, "drift of the quadric along a trajectory");
  verify->add_option("--tol", vo.tol, "integrator tolerance");
  verify->add_option("--dump", vo.dump, "CSV dump of the samples");
  verify->add_option("--samples", vo.samples, "trajectory samples")->check(CLI::Range(2, 1000000));
  std::uint64_t unused_seed = 1;
  verify->add_option("--seed", unused_seed, "accepted for uniformity; the numeric pipelines are deterministic");

  auto* corpus = app.add_subcommand("corpus", "built-in systems");
  corpus->require_subcommand(1);
  corpus->add_subcommand("list", "list the entries");
  std::string entry, out_path;
  auto* show = corpus->add_subcommand("show", "print an entry");
  show->add_option("name", entry)->required();
  auto* exp = corpus->add_subcommand("export", "print or write an entry as a descriptor");
  exp->add_option("name", entry)->required();
  exp->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(target, common);
    if (*recog) return cmd_recognize(target, ro, common);
    if (*build) return cmd_build_dhb(bo, common);
    if (*verify) return cmd_verify(target, vo, common);
    if (*corpus) {
      if (corpus->got_subcommand("list")) return cmd_corpus_list(common);
      if (*show) return cmd_corpus_show(entry, common);
      if (*exp) return cmd_corpus_export(entry, out_path);
    }
  } catch (const ResampleRequired& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ClearanceViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const IntegrationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
