#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cosym/contact.hpp"
#include "cosym/field.hpp"
#include "cosym/sample.hpp"

namespace cosym {

// A named chart with everything the suites need: the metric, optionally an
// almost contact metric structure, optionally a fixed conformal exponent,
// a sampling box and the excluded set of the chart.
struct CatalogEntry {
    std::string id;
    std::string summary;
    int dim = 0;
    ChartField metric;
    std::optional<AlmostContactMetricStructure> structure;
    std::optional<ChartField> conformal_exponent;
    std::vector<Interval> box;
    std::function<bool(const ChartPoint&)> excluded; // true = outside the chart
    bool cosymplectic = false;
    bool conformally_flat = false;
    std::optional<double> known_scalar;
};

// Flat structure on R^{2m+1}: g = delta, phi the block rotation pairing
// x^a with x^{a+m}, xi the last coordinate direction.
AlmostContactMetricStructure flat_cosymplectic(int m);

// Product of round 2-spheres (stereographic charts, one radius each) with a
// line factor; phi rotates each sphere factor. Nonpositive radius is refused.
AlmostContactMetricStructure kaehler_product_cosymplectic(const std::vector<double>& radii);

// g = e^{2p} delta on R^n, n >= 4; p comes from the deformation catalog.
ChartField conformally_flat_metric(int n, const std::string& p_id);

std::vector<std::string> catalog_ids();
CatalogEntry catalog_entry(const std::string& id);

// Scalar fields used as conformal exponents. "Horizontal" ones depend only on
// the non-Reeb coordinates (all but the last); reeb-linear deliberately does
// not and is kept as the standard inadmissible example.
std::vector<std::string> deformation_ids();
ChartField deformation_field(int dim, const std::string& id);

} // namespace cosym
