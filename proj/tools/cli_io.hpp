#pragma once

#include <string>

#include <json.hpp>

#include "algebroid/bialgebroid.hpp"
#include "algebroid/examples.hpp"
#include "algebroid/integration.hpp"
#include "algebroid/report.hpp"

namespace cli {

using nlohmann::json;

/// Rationals as "p/q" strings; otherwise {"re", "im", "sqrt_part": [{"radicand", "re", "im"}]}.
json scalar_to_json(const algebroid::Scalar& z);
algebroid::Scalar scalar_from_json(const json& j, const std::string& where);

json vector_to_json(const algebroid::Vector& v);
algebroid::Vector vector_from_json(const json& j, const std::string& where);

/// Array of rows.
json matrix_to_json(const algebroid::Matrix& m);
algebroid::Matrix matrix_from_json(const json& j, const std::string& where);

/// {"dim", "structure": sparse products e_i e_j at i * dim + j as [[k, coeff], ...], "involution"?, "labels"}.
json algebra_to_json(const algebroid::FiniteAlgebra& a);
algebroid::FiniteAlgebra algebra_from_json(const json& j, const std::string& where);

json algebroid_to_json(const algebroid::AlgebroidData& d);
algebroid::AlgebroidData algebroid_from_json(const json& j, const std::string& where);

/// {"arrows", "units", "s", "t", "compose": [[a, b, ab], ...], "inverse"} keyed by arrow labels.
json groupoid_to_json(const algebroid::FiniteGroupoid& g);
algebroid::FiniteGroupoid groupoid_from_json(const json& j, const std::string& where);

json entry_to_json(const algebroid::ReportEntry& e);

/// Parses `text` as JSON, reporting syntax errors as schema errors at `where`.
json parse(const std::string& text, const std::string& where);

}  // namespace cli
