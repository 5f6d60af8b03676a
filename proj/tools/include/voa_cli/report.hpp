#pragma once

#include "voa/rational.hpp"
#include "voa/series.hpp"

#include <json.hpp>

#include <complex>
#include <optional>
#include <vector>

namespace voa::cli {

using Json = nlohmann::ordered_json;

// An exact rational as a JSON integer when it is one and fits in 64 bits,
// otherwise as the string "p/q".
Json exact_value(const Rational& r);
Json exact_values(const std::vector<Rational>& rs);

// Numeric objects carry a provenance field.
Json exact_scalar(const Rational& r);
Json exact_series(const TruncSeries& s);
Json exact_qseries(const QExpansion& s);
Json float_scalar(double x, std::optional<double> error = {});
Json float_complex_vector(const std::vector<std::complex<double>>& v, std::optional<double> error = {});

}  // namespace voa::cli
