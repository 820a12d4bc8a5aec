// Double-entry bookkeeping for the transcribed polynomials: the library's
// dump of every stored system and Hamiltonian must match the frozen
// reference files byte for byte. The references are produced by an
// independent generator (tests/data/generate_reference.py); regenerating
// them goes through that script, never through this code.
#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "pwl/systems.hpp"

using namespace pwl;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void compare(const std::string& name, const MultiPoly& p) {
  const std::string path =
      std::string(PWL_TEST_DATA) + "/dumps/" + name + ".dump";
  INFO(name);
  CHECK(dump_poly(p) == slurp(path));
}

}  // namespace

TEST_CASE("all stored vector fields match the reference dumps", "[dump]") {
  for (WeylType t : kAllTypes) {
    const auto sys = build_vector_field(t);
    for (size_t i = 0; i < sys.signed_part.size(); ++i)
      compare(std::string(weyl_cli_name(t)) + "_F" + std::to_string(i),
              sys.signed_part[i]);
  }
}

TEST_CASE("the restriction Hamiltonian matches its reference dump", "[dump]") {
  compare("h_xy", detail::x_eq_y_ham_poly());
}

TEST_CASE("the named Hamiltonians match their reference dumps", "[dump]") {
  for (HamKind k : {HamKind::hvi, HamKind::hv, HamKind::hiii}) {
    const auto h = hamiltonian(k);
    compare(std::string(ham_name(k)) + "_num", h.expr.num());
    compare(std::string(ham_name(k)) + "_den", h.expr.den());
  }
}

TEST_CASE("the reference set is complete", "[dump]") {
  // 23 field components + h_xy + 3 Hamiltonians split into num/den
  size_t fields = 0;
  for (WeylType t : kAllTypes) fields += build_vector_field(t).signed_part.size();
  CHECK(fields == 23);
  // 23 + 1 + 6 = 30 files pinned above
}
