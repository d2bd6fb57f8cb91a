#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dhb/corpus.hpp"
#include "dhb/descriptor.hpp"

using namespace dhb;
using R = Rational;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string data(const std::string& name) { return std::string(DHB_TEST_DATA) + "/" + name; }

Json euler_json() { return descriptor_to_json(*corpus_descriptor("euler-top")); }

/// Replaces exact string entries by floating-point numbers.
void to_numbers(Json& j) {
  if (j.is_array())
    for (auto& x : j) to_numbers(x);
  else if (j.is_string())
    j = parse_rational(j.get<std::string>()).get_d();
}

}  // namespace

TEST_CASE("every corpus entry round-trips through JSON") {
  REQUIRE(corpus_entries().size() >= 8);
  for (const auto& e : corpus_entries()) {
    CAPTURE(e.name);
    const Descriptor d = e.make();
    CHECK(d.name == e.name);
    const Descriptor back = descriptor_from_json(Json::parse(dump_descriptor(d)));
    CHECK(back == d);
    CHECK(dump_descriptor(back) == dump_descriptor(d));
  }
}

TEST_CASE("fixtures equal the corpus exports byte for byte") {
  CHECK(read_file(data("roundtrip_gdhb.json")) == dump_descriptor(*corpus_descriptor("roundtrip-gdhb")));
  CHECK(read_file(data("roundtrip_gdhb_scrambled.json")) ==
        dump_descriptor(*corpus_descriptor("roundtrip-gdhb-scrambled")));
  CHECK(read_file(data("padded_euler.json")) == dump_descriptor(*corpus_descriptor("padded-euler")));
  CHECK(load_descriptor(data("roundtrip_gdhb.json")) == *corpus_descriptor("roundtrip-gdhb"));
}

TEST_CASE("gDHB descriptors carry the tensor, constraint and Fuchsian block") {
  const FuchsianData<R> fd{{R(0), R(1), R(-2)}, {R(1, 3), R(-1, 2), R(2, 5)}, {R(3, 4), R(-1, 6)}};
  Descriptor d = gdhb_descriptor(fd, "roundtrip-gdhb");
  d.initial = corpus_descriptor("roundtrip-gdhb")->initial;
  d.t_end = corpus_descriptor("roundtrip-gdhb")->t_end;
  CHECK(d == *corpus_descriptor("roundtrip-gdhb"));
  const auto& s = std::get<SystemData<R>>(d.data);
  CHECK(s.system == build_gdhb(fd).system);
  REQUIRE(s.quadric);
  CHECK(*s.quadric == build_gdhb(fd).constraints.front());
  CHECK(fuchsian_data<R>(*d.fuchsian).alpha == fd.alpha);

  const Descriptor m2 = gdhb_descriptor(FuchsianData<R>{{R(0), R(1)}, {R(1, 4), R(1, 4)}, {R(-1, 4)}}, "m2");
  CHECK_FALSE(std::get<SystemData<R>>(m2.data).quadric);
  CHECK(m2.labels == std::vector<std::string>{"X0", "X1", "X2"});
}

TEST_CASE("Eisenstein and complex descriptors keep their domain") {
  const Descriptor l3 = *corpus_descriptor("level3");
  CHECK(l3.domain() == Domain::Eisenstein);
  CHECK(descriptor_from_json(descriptor_to_json(l3)) == l3);

  Json j = euler_json();
  j["scalar_domain"] = "complex";
  to_numbers(j["tensor"]);
  to_numbers(j["quadric"]);
  j["tensor"][0][1][2] = Json::array({2.0, 0.5});
  j["tensor"][0][2][1] = Json::array({2.0, 0.5});
  const Descriptor c = descriptor_from_json(j);
  CHECK(c.domain() == Domain::Complex);
  CHECK(std::get<SystemData<Complex>>(c.data).system.tensor()(0, 1, 2) == Complex(2.0, 0.5));
  CHECK(descriptor_from_json(descriptor_to_json(c)) == c);
}

TEST_CASE("schema violations are rejected with InvalidInput") {
  const auto rejects = [](Json j) { CHECK_THROWS_AS(descriptor_from_json(j), InvalidInput); };
  Json j = euler_json();
  CHECK_NOTHROW(descriptor_from_json(j));

  j = euler_json();
  j["schema_version"] = 2;
  rejects(j);
  j = euler_json();
  j.erase("tensor");
  rejects(j);
  j = euler_json();
  j["scalar_domain"] = "real";
  rejects(j);
  j = euler_json();
  j["tensor"][0][1][2] = 1.5;
  rejects(j);
  j = euler_json();
  j["tensor"][0][1][2] = "3";
  rejects(j);  // asymmetric in the lower indices
  j = euler_json();
  j["tensor"][0][1][2] = "x";
  j["tensor"][0][2][1] = "x";
  rejects(j);
  j = euler_json();
  j["dim"] = 4;
  rejects(j);
  j = euler_json();
  j["quadric"][0][1] = "1";
  rejects(j);
  j = euler_json();
  j["labels"] = Json::array({"a", "b"});
  rejects(j);
  j = euler_json();
  j["t_end"] = -1.0;
  rejects(j);
  j = euler_json();
  j["initial"] = Json::array({1.0});
  rejects(j);
  j = euler_json();
  j["fuchsian"] = Json{{"poles", {"0", "0"}}, {"alpha", {"1/4", "1/4"}}, {"beta", {"0"}}};
  rejects(j);
  rejects(Json::array());
  CHECK_THROWS_AS(load_descriptor(data("does_not_exist.json")), InvalidInput);
}

TEST_CASE("polynomial text of quadrics") {
  const std::vector<std::string> xyz{"X", "Y", "Z"};
  QuadricForm<R> q(3);
  q.add_monomial(0, 0, R(1));
  q.add_monomial(1, 2, R(-2));
  q.add_monomial(0, 2, R(1, 3));
  CHECK(format_quadric(q, xyz) == "X^2 + 1/3 X Z - 2 Y Z");
  CHECK(format_quadric(QuadricForm<R>(3), xyz) == "0");
  QuadricForm<Eisenstein> e(2);
  e.add_monomial(0, 1, Eisenstein(R(-1), R(-1)));
  CHECK(format_quadric(e, {"A", "B"}) == "(-1-w) A B");
  CHECK(parse_eisenstein("-1-w") == Eisenstein(R(-1), R(-1)));
  CHECK(format_scalar(Eisenstein(R(0), R(-1))) == "-w");
}

TEST_CASE("unknown corpus names are reported as absent") {
  CHECK_FALSE(corpus_descriptor("no-such-system"));
  CHECK(corpus_descriptor("halphen2-theta")->fuchsian.has_value());
}
