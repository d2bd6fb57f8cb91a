#pragma once

// JSON system descriptors and the built-in corpus.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dhb/fuchsian.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Domain { Rational, Eisenstein, Complex };
std::string to_string(Domain d);
Domain parse_domain(const std::string& s);

template <class F>
struct SystemData {
  QuadraticSystem<F> system;
  std::optional<QuadricForm<F>> quadric;
  std::vector<QuadricForm<F>> constraints;
  friend bool operator==(const SystemData&, const SystemData&) = default;
};

/// Fuchsian block kept as canonical strings; parsed in the descriptor's domain on use.
struct FuchsianBlock {
  std::vector<std::string> poles, alpha, beta;
  friend bool operator==(const FuchsianBlock&, const FuchsianBlock&) = default;
};

struct Descriptor {
  std::string name;
  std::vector<std::string> labels;
  std::variant<SystemData<Rational>, SystemData<Eisenstein>, SystemData<Complex>> data;
  std::optional<FuchsianBlock> fuchsian;
  std::optional<Vector<Complex>> initial;
  std::optional<double> t_end;

  Domain domain() const { return static_cast<Domain>(data.index()); }
  std::size_t dim() const;
  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

/// Throws InvalidInput with a readable message on any schema violation.
Descriptor descriptor_from_json(const Json& j);
Json descriptor_to_json(const Descriptor& d);
Descriptor load_descriptor(const std::string& path);
std::string dump_descriptor(const Descriptor& d);

template <ExactField F>
FuchsianBlock fuchsian_block(const FuchsianData<F>& fd) {
  FuchsianBlock b;
  for (const F& x : fd.poles) b.poles.push_back(FieldTraits<F>::format(x));
  for (const F& x : fd.alpha) b.alpha.push_back(FieldTraits<F>::format(x));
  for (const F& x : fd.beta) b.beta.push_back(FieldTraits<F>::format(x));
  return b;
}

template <ExactField F>
FuchsianData<F> fuchsian_data(const FuchsianBlock& b) {
  FuchsianData<F> fd;
  for (const auto& s : b.poles) fd.poles.push_back(FieldTraits<F>::parse(s));
  for (const auto& s : b.alpha) fd.alpha.push_back(FieldTraits<F>::parse(s));
  for (const auto& s : b.beta) fd.beta.push_back(FieldTraits<F>::parse(s));
  fd.validate();
  return fd;
}

/// Descriptor of a gDHB system with its constraints; dim 4 systems also carry
/// the single constraint as `quadric`.
template <ExactField F>
Descriptor gdhb_descriptor(const FuchsianData<F>& fd, const std::string& name) {
  const GDHBSystem<F> g = build_gdhb(fd);
  SystemData<F> data{g.system, std::nullopt, g.constraints};
  if (g.constraints.size() == 1) data.quadric = g.constraints.front();
  Descriptor d{name, {}, data, fuchsian_block(fd), std::nullopt, std::nullopt};
  for (std::size_t i = 0; i <= g.m; ++i) d.labels.push_back("X" + std::to_string(i));
  return d;
}

std::string format_scalar(const Rational& x);
std::string format_scalar(const Eisenstein& x);
std::string format_scalar(const Complex& x);

/// Polynomial text of a quadric form, e.g. "2 X1 X2 - X3^2".
template <class F>
std::string format_quadric(const QuadricForm<F>& q, const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t j = 0; j < q.dim(); ++j)
    for (std::size_t k = j; k < q.dim(); ++k) {
      const F c = j == k ? q(j, k) : F(2) * q(j, k);
      if (c == F(0)) continue;
      const std::string mono = j == k ? labels[j] + "^2" : labels[j] + " " + labels[k];
      std::string coef = format_scalar(c);
      if (coef == "1") coef.clear();
      else if (coef == "-1") coef = "-";
      if (!out.empty()) {
        if (coef.rfind('-', 0) == 0) {
          out += " - ";
          coef.erase(0, 1);
        } else {
          out += " + ";
        }
      }
      out += coef.empty() || coef == "-" ? coef + mono : coef + " " + mono;
    }
  return out.empty() ? "0" : out;
}

struct CorpusEntry {
  std::string name;
  std::string description;
  std::function<Descriptor()> make;
};

const std::vector<CorpusEntry>& corpus_entries();
std::optional<Descriptor> corpus_descriptor(const std::string& name);

/// The fixed scrambling basis of the roundtrip-gdhb-scrambled entry.
LinearMap<Rational> roundtrip_scramble_basis();

}  // namespace dhb
