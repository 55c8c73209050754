#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "toric_cy/lattice_cone.hpp"

namespace toric_cy {

struct FixtureCheck {
  std::string description;  ///< what is compared, and where the expected value comes from
  bool passed = false;
  std::string detail;       ///< computed value, or the error text
};

struct Fixture {
  std::string name;
  std::vector<IntVector> normals;
  std::string provenance;
  std::function<std::vector<FixtureCheck>(const GoodCone&)> checks;
};

struct FixtureReport {
  std::string name;
  std::string provenance;
  std::vector<FixtureCheck> checks;
  bool passed = false;
};

/// The bundled cones, sorted by name.
const std::vector<Fixture>& fixtures();

/// Throws InvalidInput for unknown names.
const Fixture& find_fixture(std::string_view name);

GoodCone fixture_cone(const Fixture& f);

/// Runs every known-value check; exceptions become failed checks.
FixtureReport run_fixture(const Fixture& f);

/// Throws FixtureCheckFailed naming the first failed check.
void require_passed(const FixtureReport& report);

}  // namespace toric_cy
