#pragma once

// Verification suites behind `holocurve verify`. Each suite returns table
// rows (case, parameter, observed, bound, pass); `bound` is the threshold
// or reference value the row is judged against.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holocurve/contour.hpp"
#include "holocurve/fieldexpr.hpp"
#include "holocurve/lincomplex.hpp"

namespace holocurve::cli {

struct Row {
  std::string case_name;
  std::string parameter;
  double observed = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  ContourSpec contour = ContourSpec();
};

/// contour, superpose, ode, chi (the order `all` runs them in).
const std::vector<std::string>& suite_names();
bool is_suite_name(std::string_view name);

/// Runs one named suite, or every suite for "all". Throws ConfigError for
/// an unknown name.
std::vector<Row> run_suite(std::string_view name, const SuiteOptions& options);

/// Header plus one line per row; numbers in %.6e.
std::string to_csv(const std::vector<Row>& rows);

/// Field sources shipped with the tool and used by the ode suite.
struct BundledField {
  std::string name;
  std::string source;  // field-file text including the domain block
  std::vector<Complex> xi;
};
const std::vector<BundledField>& bundled_fields();

/// (Sigma(xi + h dxi, phi + h dphi) - Sigma(xi - h dxi, phi - h dphi)) / (2h)
/// with Picard solves on `grid_nodes` nodes.
Curve central_difference(const Field& phi, const CVector& xi, const CVector& dxi, const std::optional<Field>& dphi,
                         Complex h, std::size_t grid_nodes, double tol, std::size_t max_iter);

}  // namespace holocurve::cli
