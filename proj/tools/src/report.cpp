#include "voa_cli/report.hpp"

namespace voa::cli {

Json exact_value(const Rational& r) {
    if (r.is_integer() && r.num().fits_slong_p()) return static_cast<std::int64_t>(r.num().get_si());
    return r.str();
}

Json exact_values(const std::vector<Rational>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(exact_value(r));
    return a;
}

Json exact_scalar(const Rational& r) { return Json{{"provenance", "exact"}, {"value", exact_value(r)}}; }

Json exact_series(const TruncSeries& s) {
    std::vector<Rational> c;
    for (int e = s.floor(); e < s.order(); ++e) c.push_back(s.coeff(e));
    return Json{{"provenance", "exact"}, {"var", s.var()}, {"floor", s.floor()}, {"order", s.order()},
                {"coeffs", exact_values(c)}};
}

Json exact_qseries(const QExpansion& s) {
    return Json{{"provenance", "exact"}, {"offset", exact_value(s.offset())}, {"coeffs", exact_values(s.coeffs())}};
}

Json float_scalar(double x, std::optional<double> error) {
    Json j{{"provenance", "float"}, {"value", x}};
    if (error) j["error"] = *error;
    return j;
}

Json float_complex_vector(const std::vector<std::complex<double>>& v, std::optional<double> error) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(Json::array({z.real(), z.imag()}));
    Json j{{"provenance", "float"}, {"value", a}};
    if (error) j["error"] = *error;
    return j;
}

}  // namespace voa::cli
