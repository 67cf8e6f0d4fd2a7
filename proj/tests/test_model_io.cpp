#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>

#include "rhetsent/error.hpp"
#include "rhetsent/model_io.hpp"
#include "testutil.hpp"

using namespace rhetsent;

namespace {

SavedModel sample_logreg() {
  SavedModel m;
  m.kind = SavedModel::Kind::LogReg;
  m.seed = 42;
  m.vocab = Vocabulary::from_tokens({"great", "awful", "movie"});
  m.theta = {1.25, -0.7500000000000001, 0.0};
  m.bias = -0.125;
  m.reg_coef = 0.01;
  return m;
}

SavedModel sample_r2n2() {
  SavedModel m;
  m.kind = SavedModel::Kind::R2n2;
  m.seed = 7;
  m.vocab = Vocabulary::from_tokens({"a", "b"});
  m.theta = {0.1, -0.2};
  m.mode = RelationMode::WithRelations;
  m.k_n = {0.9, 1.1};
  m.k_s = {-0.3, 0.4};
  m.gamma = 0.55;
  return m;
}

std::string to_bytes(const SavedModel& m) {
  std::ostringstream out;
  save_model(m, out);
  return out.str();
}

}  // namespace

TEST_CASE("double formatting round-trips exactly") {
  for (double v : {0.0, 1.0, -0.7500000000000001, 1.0 / 3.0, 1e-300, 12345.678901234567}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("logistic model round-trip") {
  SavedModel m = sample_logreg();
  std::string bytes = to_bytes(m);
  std::istringstream in(bytes);
  SavedModel back = load_model(in);
  CHECK(back.kind == SavedModel::Kind::LogReg);
  CHECK(back.seed == m.seed);
  CHECK(back.vocab.size() == 3);
  CHECK(back.vocab.token_at(0) == "great");
  CHECK(back.theta == m.theta);
  CHECK(back.bias == m.bias);
  CHECK(back.reg_coef == m.reg_coef);
  // byte-identical re-serialization
  CHECK(to_bytes(back) == bytes);
}

TEST_CASE("recursive model round-trip") {
  SavedModel m = sample_r2n2();
  std::string bytes = to_bytes(m);
  std::istringstream in(bytes);
  SavedModel back = load_model(in);
  CHECK(back.kind == SavedModel::Kind::R2n2);
  CHECK(back.mode == RelationMode::WithRelations);
  CHECK(back.k_n == m.k_n);
  CHECK(back.k_s == m.k_s);
  CHECK(back.gamma == m.gamma);
  CHECK(back.theta == m.theta);
  CHECK(to_bytes(back) == bytes);

  R2n2Params p = back.r2n2_params();
  CHECK(p.mode == m.mode);
  CHECK(p.k_n == m.k_n);
  CHECK(p.theta == m.theta);
}

TEST_CASE("same model always produces the same bytes") {
  CHECK(to_bytes(sample_logreg()) == to_bytes(sample_logreg()));
  CHECK(to_bytes(sample_r2n2()) == to_bytes(sample_r2n2()));
}

TEST_CASE("file round-trip") {
  SavedModel m = sample_r2n2();
  std::string path = "/tmp/rhetsent-model-test.model";
  save_model_file(m, path);
  SavedModel back = load_model_file(path);
  CHECK(to_bytes(back) == to_bytes(m));
  std::remove(path.c_str());
}

TEST_CASE("malformed files are rejected") {
  auto expect_parse_error = [](std::string bytes) {
    std::istringstream in(bytes);
    CHECK_THROWS_AS(load_model(in), ParseError);
  };
  expect_parse_error("");
  expect_parse_error("not-a-model\n");

  std::string good = to_bytes(sample_logreg());
  expect_parse_error(good.substr(0, good.size() / 2));  // truncated

  // unsupported version
  std::string versioned = good;
  size_t pos = versioned.find("version 1");
  REQUIRE(pos != std::string::npos);
  versioned.replace(pos, 9, "version 9");
  expect_parse_error(versioned);

  // vocabulary tampering breaks the recorded hash
  std::string tampered = good;
  pos = tampered.find("great");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 5, "grape");
  expect_parse_error(tampered);
}
