#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fox/cli.hpp"
#include "fox/freiheit.hpp"

using namespace fox;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  Json doc;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "fox");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  Json doc = out.str().empty() || out.str()[0] != '{' ? Json() : Json::parse(out.str());
  return {code, doc, err.str()};
}

}  // namespace

TEST_CASE("cli examples") {
  Result dims = call({"lie", "dims", "--rank", "2", "--degree", "3"});
  CHECK(dims.code == 0);
  CHECK(dims.doc == Json{{"dim", 2}});

  Result der = call({"group", "derive", "--rank", "2", "--word", "g1 g2", "--gen", "1"});
  CHECK(der.code == 0);
  CHECK(der.doc["terms"] == Json::parse(R"([{"coeff":"1","word":"g2"}])"));

  CHECK(call({"lie", "dims", "--rank", "2", "--frobnicate", "1"}).code == 2);
  CHECK(call({"lie"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("cli exit codes follow the criterion verdict") {
  // derivatives vanish mod N only on [N,N]
  CHECK(call({"group", "schumann", "--rank", "2", "--word", "g1^-1 g2^-1 g1 g2", "--quotient", "abelian"}).code == 1);
  CHECK(call({"group", "schumann", "--rank", "2", "--word", "g1^2", "--quotient", "finite:2/1;0"}).code == 1);
  CHECK(call({"group", "schumann", "--rank", "1", "--word", "g1^4", "--quotient", "finite:2/1"}).code == 1);
  CHECK(call({"group", "schumann", "--rank", "2", "--word", "g1", "--quotient", "abelian"}).code == 2);

  Result t1 = call({"group", "theorem1", "--rank", "2", "--word", "g1^2", "--K", "1", "--quotient", "finite:2,2/1,0;0,1"});
  CHECK(t1.code == 0);
  CHECK(t1.doc["agree"] == true);
  CHECK(call({"group", "theorem1", "--rank", "2", "--word", "g2^2", "--K", "1", "--quotient", "finite:2,2/1,0;0,1"}).code == 1);

  Result neg = call({"group", "conjcrit", "--rank", "3", "--relator", "g1^-1 g3^-1 g1 g3"});
  CHECK(neg.code == 0);
  CHECK(neg.doc["conjugate_found"] == false);
  Result pos = call({"group", "conjcrit", "--rank", "3", "--relator", "g3^-1 g1^-1 g2^-1 g1 g2 g3"});
  CHECK(pos.code == 1);
  CHECK(pos.doc["witness"]["conjugator"] == "g3");

  Result fr = call({"lie", "freiheit", "--rank", "3", "--relator", "[y1,y3]", "--cutoff", "4"});
  CHECK(fr.code == 0);
  CHECK(fr.doc["all_equal"] == true);
  Result fr2 = call({"lie", "freiheit", "--rank", "3", "--relator", "[y1,y2]", "--cutoff", "4"});
  CHECK(fr2.code == 1);
  CHECK(fr2.doc["consistent"] == true);
  CHECK(call({"lie", "freiheit", "--rank", "3", "--relator", "[y1,[y1,y3]]", "--cutoff", "3"}).code == 2);

  CHECK(call({"lie", "decompose", "--rank", "3", "--cutoff", "4", "--K", "1,2", "--expr", "[[y1,y2],y3]"}).code == 0);
  CHECK(call({"lie", "decompose", "--rank", "3", "--cutoff", "4", "--K", "1", "--expr", "[y2,y3]"}).code == 1);
  CHECK(call({"lie", "kharlampovich", "--rank", "3", "--cutoff", "5", "--samples", "10", "--seed", "3"}).code == 0);
}

TEST_CASE("cli parse errors carry positions") {
  Result bad = call({"lie", "derive", "--rank", "2", "--expr", "[y1,y2"});
  CHECK(bad.code == 2);
  CHECK(bad.doc["kind"] == "parse");
  CHECK(bad.doc["position"] == 6);
  CHECK(call({"group", "derive", "--rank", "2", "--word", "g1 g7"}).code == 2);
  CHECK(call({"group", "schumann", "--rank", "2", "--word", "g1", "--quotient", "bogus"}).code == 2);
}

TEST_CASE("cli output re-parses") {
  Result d = call({"lie", "derive", "--rank", "3", "--expr", "[y1,[y2,y3]] - 1/2*[y1,y3]"});
  REQUIRE(d.code == 0);
  AssocPoly u = parse_assoc_poly(3, d.doc["expanded"].get<std::string>());
  CHECK(u == expand_to_assoc(parse_lie(3, "[y1,[y2,y3]] - 1/2*[y1,y3]")));
  for (const auto& [j, text] : d.doc["parts"].items())
    CHECK(parse_assoc_poly(3, text.get<std::string>()) == lie_fox_derivative(u, std::stoi(j)));

  Result k = call({"lie", "decompose", "--rank", "3", "--cutoff", "5", "--K", "1,2", "--expr", "[[y1,y2],y3] + [y1,y2] + [[y1,y3],[y2,y3]]"});
  REQUIRE(k.code == 0);
  LieElt v0 = parse_lie(3, k.doc["v0"].get<std::string>()), v1 = parse_lie(3, k.doc["v1"].get<std::string>());
  CHECK(to_string(v0) == k.doc["v0"].get<std::string>());
  CHECK(to_string(v1) == k.doc["v1"].get<std::string>());

  auto A = make_alphabet(3);
  Result c = call({"group", "conjcrit", "--rank", "3", "--relator", "g3^-1 g1^-1 g2^-1 g1 g2 g3"});
  Word conj = parse_word(A, c.doc["witness"]["conjugator"].get<std::string>());
  Word h = parse_word(A, c.doc["witness"]["word"].get<std::string>());
  CHECK(invert(conj) * h * conj == parse_word(A, c.doc["relator"].get<std::string>()));

  Result t = call({"group", "transversal", "--rank", "2", "--quotient", "finite:2,2/1,0;0,1"});
  REQUIRE(t.code == 0);
  CHECK(t.doc["index"] == 4);
  auto A2 = make_alphabet(2);
  for (const auto& g : t.doc["generators"]) {
    Word w = parse_word(A2, g["w"].get<std::string>());
    CHECK(to_string(w) == g["w"].get<std::string>());
  }
}
