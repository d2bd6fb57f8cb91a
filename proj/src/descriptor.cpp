#include "dhb/descriptor.hpp"

#include <fstream>
#include <sstream>

#include "dhb/corpus.hpp"
#include "dhb/dhb_algebra.hpp"

namespace dhb {

std::string to_string(Domain d) {
  switch (d) {
    case Domain::Rational:
      return "rational";
    case Domain::Eisenstein:
      return "eisenstein";
    case Domain::Complex:
      return "complex";
  }
  return "?";
}

Domain parse_domain(const std::string& s) {
  if (s == "rational") return Domain::Rational;
  if (s == "eisenstein") return Domain::Eisenstein;
  if (s == "complex") return Domain::Complex;
  throw InvalidInput("unknown scalar_domain '" + s + "' (expected rational, eisenstein or complex)");
}

std::string format_scalar(const Rational& x) { return to_string(x); }

std::string format_scalar(const Eisenstein& x) {
  const std::string s = to_string(x);
  if (x.b() == 0 || x.a() == 0) return s;
  return "(" + s + ")";
}

std::string format_scalar(const Complex& x) {
  std::ostringstream os;
  os.precision(12);
  if (x.imag() == 0) {
    os << x.real();
    return os.str();
  }
  os << "(" << x.real() << (x.imag() < 0 ? "" : "+") << x.imag() << "i)";
  return os.str();
}

std::size_t Descriptor::dim() const {
  return std::visit([](const auto& d) { return d.system.dim(); }, data);
}

namespace {

// --- scalars ---------------------------------------------------------------

template <class F>
F scalar_from_json(const Json& j, const std::string& where) {
  if constexpr (std::is_same_v<F, Complex>) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
      return Complex(j[0].get<double>(), j[1].get<double>());
    throw InvalidInput(where + ": complex entries are numbers or [re, im] pairs");
  } else {
    if (j.is_number_integer()) return F(Rational(j.get<long>()));
    if (j.is_string()) {
      try {
        return FieldTraits<F>::parse(j.get<std::string>());
      } catch (const InvalidInput& e) {
        throw InvalidInput(where + ": " + e.what());
      }
    }
    throw InvalidInput(where + ": exact entries must be strings such as \"3/4\" (floats are not accepted)");
  }
}

template <class F>
Json scalar_to_json(const F& x) {
  if constexpr (std::is_same_v<F, Complex>) {
    return Json::array({x.real(), x.imag()});
  } else {
    return FieldTraits<F>::format(x);
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("descriptor is missing '") + key + "'");
  return j.at(key);
}

template <class F>
Matrix<F> matrix_from_json(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) throw InvalidInput(where + ": expected " + std::to_string(n) + " rows");
  Matrix<F> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw InvalidInput(where + ": row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = scalar_from_json<F>(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

template <class F>
Json matrix_to_json(const Matrix<F>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

template <class F>
QuadricForm<F> quadric_from_json(const Json& j, std::size_t n, const std::string& where) {
  Matrix<F> m = matrix_from_json<F>(j, n, where);
  if (!is_symmetric(m)) throw InvalidInput(where + ": quadric matrix is not symmetric");
  return QuadricForm<F>(std::move(m));
}

template <class F>
SystemData<F> system_from_json(const Json& j, std::size_t n) {
  const Json& t = field(j, "tensor");
  if (!t.is_array() || t.size() != n) throw InvalidInput("tensor: expected " + std::to_string(n) + " slices");
  Tensor3<F> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix<F> m = matrix_from_json<F>(t[i], n, "tensor[" + std::to_string(i) + "]");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(i, r, c) = m(r, c);
  }
  if (!a.symmetric_in_lower()) throw InvalidInput("tensor violates a^i_jk = a^i_kj");
  SystemData<F> d{QuadraticSystem<F>(std::move(a)), std::nullopt, {}};
  if (j.contains("quadric")) d.quadric = quadric_from_json<F>(j["quadric"], n, "quadric");
  if (j.contains("constraints")) {
    if (!j["constraints"].is_array()) throw InvalidInput("constraints must be a list of matrices");
    for (std::size_t c = 0; c < j["constraints"].size(); ++c)
      d.constraints.push_back(quadric_from_json<F>(j["constraints"][c], n, "constraints[" + std::to_string(c) + "]"));
  }
  return d;
}

template <class F>
void system_to_json(const SystemData<F>& d, Json& out) {
  const std::size_t n = d.system.dim();
  Json t = Json::array();
  for (std::size_t i = 0; i < n; ++i) t.push_back(matrix_to_json(d.system.component(i).matrix()));
  out["tensor"] = t;
  if (d.quadric) out["quadric"] = matrix_to_json(d.quadric->matrix());
  if (!d.constraints.empty()) {
    Json cs = Json::array();
    for (const auto& c : d.constraints) cs.push_back(matrix_to_json(c.matrix()));
    out["constraints"] = cs;
  }
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (x.is_string()) out.push_back(x.get<std::string>());
    else if (x.is_number_integer()) out.push_back(std::to_string(x.get<long>()));
    else throw InvalidInput(where + ": entries must be exact strings");
  }
  return out;
}

}  // namespace

Descriptor descriptor_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("descriptor must be a JSON object");
  const Json& ver = field(j, "schema_version");
  if (!ver.is_number_integer() || ver.get<int>() != kSchemaVersion)
    throw InvalidInput("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long>() <= 0) throw InvalidInput("dim must be a positive integer");
  const auto n = static_cast<std::size_t>(dim.get<long>());
  const Domain domain = parse_domain(field(j, "scalar_domain").get<std::string>());

  Descriptor d;
  if (j.contains("name")) d.name = j["name"].get<std::string>();
  switch (domain) {
    case Domain::Rational:
      d.data = system_from_json<Rational>(j, n);
      break;
    case Domain::Eisenstein:
      d.data = system_from_json<Eisenstein>(j, n);
      break;
    case Domain::Complex:
      d.data = system_from_json<Complex>(j, n);
      break;
  }
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) d.labels.push_back(l.get<std::string>());
    if (d.labels.size() != n) throw InvalidInput("labels must have dim entries");
  } else {
    for (std::size_t i = 0; i < n; ++i) d.labels.push_back("X" + std::to_string(i + 1));
  }
  if (j.contains("fuchsian")) {
    if (domain == Domain::Complex) throw InvalidInput("fuchsian data needs an exact scalar_domain");
    const Json& f = j["fuchsian"];
    d.fuchsian = FuchsianBlock{string_list(field(f, "poles"), "fuchsian.poles"),
                               string_list(field(f, "alpha"), "fuchsian.alpha"),
                               string_list(field(f, "beta"), "fuchsian.beta")};
    // Canonicalize and validate in the descriptor's field.
    if (domain == Domain::Rational) d.fuchsian = fuchsian_block(fuchsian_data<Rational>(*d.fuchsian));
    else d.fuchsian = fuchsian_block(fuchsian_data<Eisenstein>(*d.fuchsian));
  }
  if (j.contains("initial")) {
    Vector<Complex> x;
    for (std::size_t i = 0; i < j["initial"].size(); ++i)
      x.push_back(scalar_from_json<Complex>(j["initial"][i], "initial[" + std::to_string(i) + "]"));
    if (x.size() != n) throw InvalidInput("initial must have dim entries");
    d.initial = x;
  }
  if (j.contains("t_end")) {
    if (!j["t_end"].is_number() || !(j["t_end"].get<double>() > 0)) throw InvalidInput("t_end must be a positive number");
    d.t_end = j["t_end"].get<double>();
  }
  return d;
}

Json descriptor_to_json(const Descriptor& d) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  if (!d.name.empty()) out["name"] = d.name;
  out["scalar_domain"] = to_string(d.domain());
  out["dim"] = d.dim();
  out["labels"] = d.labels;
  std::visit([&](const auto& s) { system_to_json(s, out); }, d.data);
  if (d.fuchsian) out["fuchsian"] = Json{{"poles", d.fuchsian->poles}, {"alpha", d.fuchsian->alpha}, {"beta", d.fuchsian->beta}};
  if (d.initial) {
    Json x = Json::array();
    for (Complex c : *d.initial) x.push_back(scalar_to_json(c));
    out["initial"] = x;
  }
  if (d.t_end) out["t_end"] = *d.t_end;
  return out;
}

Descriptor load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  try {
    return descriptor_from_json(j);
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

std::string dump_descriptor(const Descriptor& d) { return descriptor_to_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Corpus

namespace {

std::vector<std::string> numbered(const std::string& stem, std::size_t from, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stem + std::to_string(from + i));
  return out;
}

Descriptor rational_descriptor(const std::string& name, QuadraticSystem<Rational> sys, std::vector<std::string> labels) {
  return Descriptor{name, std::move(labels), SystemData<Rational>{std::move(sys), std::nullopt, {}}, std::nullopt,
                    std::nullopt, std::nullopt};
}

const HalphenABC<Rational> kTheta{frac(-1, 8), frac(-1, 8), frac(-1, 8)};

FuchsianData<Rational> roundtrip_data() {
  return {{0, 1, -2}, {frac(1, 3), frac(-1, 2), frac(2, 5)}, {frac(3, 4), frac(-1, 6)}};
}

Descriptor make_euler() {
  Descriptor d = rational_descriptor("euler-top", euler_top(), numbered("X", 1, 3));
  QuadricForm<Rational> q(3);
  q.add_monomial(0, 0, 1);
  q.add_monomial(1, 1, -1);
  std::get<SystemData<Rational>>(d.data).quadric = q;
  d.initial = Vector<Complex>{1.0, 0.5, 0.25};
  d.t_end = 0.5;
  return d;
}

Descriptor make_halphen1() {
  Descriptor d = rational_descriptor("halphen1", halphen1(), numbered("X", 1, 3));
  d.initial = Vector<Complex>{0.3, 0.2, 0.1};
  d.t_end = 1.0;
  return d;
}

Descriptor make_halphen2(const std::string& name, const HalphenABC<Rational>& abc) {
  Descriptor d = rational_descriptor(name, halphen2(abc), numbered("X", 1, 3));
  d.initial = Vector<Complex>{0.3, 0.2, 0.1};
  d.t_end = 1.0;
  return d;
}

Descriptor make_theta() {
  Descriptor d = make_halphen2("halphen2-theta", kTheta);
  // Hypergeometric (1/2, 1/2, 1) in normal form: poles 0, 1.
  d.fuchsian = fuchsian_block(FuchsianData<Rational>{{0, 1}, {frac(1, 4), frac(1, 4)}, {frac(-1, 4)}});
  return d;
}

Descriptor make_level3() {
  const Level3 l3 = level3_system();
  Descriptor d{"level3", {"W", "X", "Y", "Z"}, SystemData<Eisenstein>{l3.system, l3.quadric, {}},
               fuchsian_block(level3_fuchsian()), std::nullopt, std::nullopt};
  d.initial = Vector<Complex>{Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.15, -0.1), Complex(0.05, 0.2)};
  d.t_end = 1.0;
  return d;
}

Descriptor make_roundtrip_scrambled() {
  const GDHBSystem<Rational> g = build_gdhb(roundtrip_data());
  const auto pa = scramble(ParametricAlgebra<Rational>(g.system, g.constraints.front()), roundtrip_scramble_basis());
  return Descriptor{"roundtrip-gdhb-scrambled", numbered("Y", 0, 4),
                    SystemData<Rational>{QuadraticSystem<Rational>(pa.base()), pa.quadric(), {}},
                    std::nullopt, std::nullopt, std::nullopt};
}

Descriptor make_padded_euler() {
  const auto euler = euler_top();
  Tensor3<Rational> t(4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) t(i, j, k) = euler.tensor()(i, j, k);
  Descriptor d = rational_descriptor("padded-euler", QuadraticSystem<Rational>(t), numbered("X", 1, 4));
  QuadricForm<Rational> q(4);
  q.add_monomial(0, 0, 1);
  q.add_monomial(1, 1, -1);
  std::get<SystemData<Rational>>(d.data).quadric = q;
  return d;
}

}  // namespace

LinearMap<Rational> roundtrip_scramble_basis() {
  Matrix<Rational> m(4, 4);
  const long rows[4][4] = {{1, 2, 0, -1}, {0, 1, 1, 0}, {2, 0, 1, 1}, {-1, 1, 0, 2}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  return LinearMap<Rational>(m);
}

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries{
      {"euler-top", "Euler top dX1/dt = 2 X2 X3 and cyclic; quadric X1^2 - X2^2 is a first integral", make_euler},
      {"lotka-volterra", "Lotka-Volterra (a, b, c, d) = (1, 1/2, 1/3, 1/4) with a dummy variable N3 = 1",
       [] {
         Descriptor d = rational_descriptor("lotka-volterra", lotka_volterra(1, frac(1, 2), frac(1, 3), frac(1, 4)),
                                            {"N1", "N2", "N3"});
         d.initial = Vector<Complex>{0.5, 0.5, 1.0};
         d.t_end = 1.0;
         return d;
       }},
      {"halphen1", "Halphen's first equation solved for the derivatives", make_halphen1},
      {"halphen2", "Halphen's second equation at a = b = c = -1/8", [] { return make_halphen2("halphen2", kTheta); }},
      {"halphen2-theta", "Halphen II at a = b = c = -1/8 with the hypergeometric (1/2, 1/2, 1) Fuchsian data", make_theta},
      {"halphen2-generic", "Halphen II at (a, b, c) = (1/3, -2/5, 1/7)",
       [] { return make_halphen2("halphen2-generic", {frac(1, 3), frac(-2, 5), frac(1, 7)}); }},
      {"chazy-k0", "the (X, W, V) system of the k = 0 Chazy case",
       [] { return rational_descriptor("chazy-k0", chazy_k0_system(), {"X", "W", "V"}); }},
      {"level3", "level-three Halphen system over Q(w) with its invariant quadric and Picard-Fuchs data", make_level3},
      {"riccati-identity", "matrix Riccati dX/dt = X A X with A = I on symmetric 2x2 X",
       [] { return rational_descriptor("riccati-identity", riccati(Matrix<Rational>::identity(2)), {"X11", "X12", "X22"}); }},
      {"roundtrip-gdhb", "gDHB system, m = 3, poles (0, 1, -2), alpha (1/3, -1/2, 2/5), beta (3/4, -1/6)",
       [] { return gdhb_descriptor(roundtrip_data(), "roundtrip-gdhb"); }},
      {"roundtrip-gdhb-scrambled", "roundtrip-gdhb written in a scrambled basis", make_roundtrip_scrambled},
      {"padded-euler", "Euler top with an idle fourth variable and quadric X1^2 - X2^2", make_padded_euler},
  };
  return entries;
}

std::optional<Descriptor> corpus_descriptor(const std::string& name) {
  for (const auto& e : corpus_entries())
    if (e.name == name) return e.make();
  return std::nullopt;
}

}  // namespace dhb
