#include <doctest.h>

#include <filesystem>

#include "descentkit/gallery.hpp"
#include "descentkit/io.hpp"
#include "helpers.hpp"

using namespace descentkit;
using testutil::code_of;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "descentkit-io-tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("scalars travel as decimal strings") {
  FieldDescriptor q = make_rational_field();
  Scalar s = parse_scalar(q, "-2/7");
  Json j = scalar_to_json(s);
  CHECK(j.is_string());
  CHECK(j.get<std::string>() == "-2/7");
  CHECK(scalar_from_json(q, j) == s);
  CHECK(scalar_from_json(q, Json(3)) == Scalar::from_int(q, 3));

  FieldDescriptor f5 = make_prime_field(5);
  CHECK(scalar_to_json(Scalar::from_int(f5, 7)).get<std::string>() == "2");
  CHECK(code_of([&] { scalar_from_json(f5, Json(Json::value_t::object)); }) == Errc::parse_error);
}

TEST_CASE("fields round-trip and reject junk") {
  FieldDescriptor f7 = make_prime_field(7);
  CHECK(field_from_json(field_to_json(f7)) == f7);
  FieldDescriptor q = make_rational_field();
  CHECK(field_from_json(field_to_json(q)) == q);
  Json bad = {{"kind", "complex"}};
  CHECK(code_of([&] { field_from_json(bad); }) == Errc::parse_error);
  Json nonprime = {{"kind", "prime"}, {"p", 6}};
  CHECK(code_of([&] { field_from_json(nonprime); }) == Errc::non_prime_modulus);
}

TEST_CASE("algebras survive a json round-trip") {
  MapFamily fam = frobenius_family(2, 1, 1);
  Json j = algebra_to_json(*fam.total);
  AlgebraPtr back = algebra_from_json(j);
  CHECK(algebra_equal(*fam.total, *back));
  CHECK(back->labels() == fam.total->labels());
  CHECK(back->is_graded());

  AlgebraPtr ext = exterior_algebra(make_rational_field(), 2);
  CHECK(algebra_equal(*ext, *algebra_from_json(algebra_to_json(*ext))));
}

TEST_CASE("graded modules survive a json round-trip") {
  MapFamily fam = frobenius_family(2, 1, 1);
  auto mods = starter_modules(fam.total);
  const Module& cyc3 = mods[3].second;
  REQUIRE(cyc3.is_graded());
  Json j = module_to_json(cyc3);  // inline algebra
  Module back = module_from_json(j, ".");
  CHECK(back.dim() == cyc3.dim());
  CHECK(back.actions() == cyc3.actions());
  REQUIRE(back.is_graded());
  CHECK(*back.grading() == *cyc3.grading());
  CHECK(algebra_equal(*back.algebra(), *cyc3.algebra()));
}

TEST_CASE("maps survive a json round-trip") {
  MapFamily fam = frobenius_family(2, 1, 1);
  Json j = map_to_json(fam.map);
  AlgebraMap back = map_from_json(j, ".");
  CHECK(back.matrix == fam.map.matrix);
  CHECK(algebra_equal(*back.source, *fam.map.source));
  CHECK(algebra_equal(*back.target, *fam.map.target));
}

TEST_CASE("relative algebra references resolve against the file directory") {
  auto dir = scratch_dir();
  MapFamily fam = frobenius_family(2, 1, 1);
  save_json(algebra_to_json(*fam.total), (dir / "alg.json").string());
  Module reg = free_module(fam.total, 1);
  save_json(module_to_json(reg, std::string("alg.json")), (dir / "mod.json").string());
  Module back = load_module((dir / "mod.json").string());
  CHECK(back.dim() == 4);
  CHECK(algebra_equal(*back.algebra(), *fam.total));
  CHECK(back.actions() == reg.actions());

  save_json(map_to_json(fam.map, std::nullopt, std::string("alg.json")),
            (dir / "map.json").string());
  AlgebraMap m = load_map((dir / "map.json").string());
  CHECK(algebra_equal(*m.target, *fam.total));
  CHECK(m.matrix == fam.map.matrix);
}

TEST_CASE("dumps are byte-stable") {
  MapFamily fam = frobenius_family(3, 1, 1);
  Json j = algebra_to_json(*fam.total);
  std::string once = j.dump(2);
  std::string twice = parse_json_text(once).dump(2);
  CHECK(once == twice);

  auto dir = scratch_dir();
  save_json(j, (dir / "stable_a.json").string());
  save_json(j, (dir / "stable_b.json").string());
  CHECK(read_text_file((dir / "stable_a.json").string()) ==
        read_text_file((dir / "stable_b.json").string()));
  CHECK(file_digest((dir / "stable_a.json").string()) ==
        fnv1a_hex(read_text_file((dir / "stable_b.json").string())));
}

TEST_CASE("digests match the reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("hello") == "a430d84680aabd0b");
}

TEST_CASE("malformed input fails with parse errors") {
  CHECK(code_of([] { parse_json_text("{ not json"); }) == Errc::parse_error);

  MapFamily fam = frobenius_family(2, 1, 1);
  Json no_unit = algebra_to_json(*fam.base);
  no_unit.erase("unit");
  CHECK(code_of([&] { algebra_from_json(no_unit); }) == Errc::parse_error);

  Json bad_mul = algebra_to_json(*fam.base);
  bad_mul["mul"].push_back(Json::array({9, 0, 0, "1"}));
  CHECK(code_of([&] { algebra_from_json(bad_mul); }) == Errc::parse_error);

  Json short_action = module_to_json(free_module(fam.base, 1));
  short_action["action"].erase(0);
  CHECK(code_of([&] { module_from_json(short_action, "."); }) == Errc::parse_error);

  Json bad_dim = module_to_json(free_module(fam.base, 1));
  bad_dim["dim"] = "two";
  CHECK(code_of([&] { module_from_json(bad_dim, "."); }) == Errc::parse_error);
}

TEST_CASE("json kinds are sniffed from their shape") {
  MapFamily fam = frobenius_family(2, 1, 1);
  CHECK(sniff_kind(algebra_to_json(*fam.base)) == JsonKind::algebra);
  CHECK(sniff_kind(module_to_json(free_module(fam.base, 1))) == JsonKind::module);
  CHECK(sniff_kind(map_to_json(fam.map)) == JsonKind::map);
  CHECK(code_of([] { sniff_kind(Json::object()); }) == Errc::parse_error);
}

#include <cstdlib>

#include "descentkit/cli.hpp"
#include "descentkit/descent.hpp"

TEST_CASE("seed resolution prefers flag over environment over default") {
  unsetenv("DESCENTKIT_SEED");
  CHECK(cli::resolve_seed(std::nullopt) == kDefaultSeed);
  setenv("DESCENTKIT_SEED", "123", 1);
  CHECK(cli::resolve_seed(std::nullopt) == 123);
  setenv("DESCENTKIT_SEED", "0x1f", 1);
  CHECK(cli::resolve_seed(std::nullopt) == 31);
  CHECK(cli::resolve_seed(std::string("77")) == 77);  // flag wins
  setenv("DESCENTKIT_SEED", "pumpkin", 1);
  CHECK(code_of([] { cli::resolve_seed(std::nullopt); }) == Errc::parse_error);
  unsetenv("DESCENTKIT_SEED");
  CHECK(code_of([] { cli::resolve_seed(std::string("")); }) == Errc::parse_error);
}

TEST_CASE("error kinds map onto the documented exit codes") {
  CHECK(cli::exit_code_for(Errc::parse_error) == 2);
  CHECK(cli::exit_code_for(Errc::budget_exceeded) == 4);
  CHECK(cli::exit_code_for(Errc::kernel_not_nilpotent) == 1);
  CHECK(cli::exit_code_for(Errc::not_free_over_base) == 1);
  CHECK(cli::exit_code_for(Errc::validation_failed) == 1);
}

TEST_CASE("outcome serialization follows the documented shape") {
  MapFamily fam = frobenius_family(2, 1, 1);
  ExtensionContext ctx = build_context(fam.base, fam.total, fam.map);
  auto mods = starter_modules(fam.total);

  Json ok = cli::outcome_to_json(descend(ctx, mods[0].second));  // regular module
  CHECK(ok["criterion"]["free"] == true);
  CHECK(ok["criterion"]["rank"] == 1);
  CHECK(ok["outcome"] == "certificate");
  CHECK(ok.contains("M"));
  CHECK(ok["checks"]["S2"] == true);
  CHECK(ok["checks"]["S7"] == true);
  CHECK(ok["retries_used"] == 0);
  CHECK(!ok.contains("failed_step"));

  Json bad = cli::outcome_to_json(descend(ctx, mods[3].second));  // cyclic3
  CHECK(bad["criterion"]["free"] == true);
  CHECK(bad["outcome"] == "failure");
  CHECK(bad["failed_step"] == "S4");
  CHECK(bad["witness"].is_array());
  CHECK(!bad["witness"].empty());
  CHECK(bad["checks"]["S3"] == true);
  CHECK(bad["checks"]["S4"] == false);
  CHECK(!bad.contains("M"));

  Json crit = cli::outcome_to_json(descend(ctx, mods[1].second));  // trivial module
  CHECK(crit["criterion"]["free"] == false);
  CHECK(!crit["criterion"].contains("rank"));
  CHECK(crit["outcome"] == "failure");
  CHECK(!crit.contains("failed_step"));  // the criterion failed, no step ran
}
