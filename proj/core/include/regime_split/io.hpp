#pragma once
// CSV, key=value, and JSON plumbing for the command line tools.
//
// CSV files carry a mandatory header row, '.' decimals, UTF-8, no
// quoting. Numbers print as shortest round-trip decimals, so a file
// written here and read back reproduces the exact double values.
// Scalar samples use "index,value", vector samples "index,x1..xk",
// regression data "index,y,x1..xk", labels "index,label".
//
// Generator specs and experiment plans load from flat key=value text;
// a [row] section header starts a new plan row.

#include <string>
#include <vector>

#include "regime_split/experiment_harness.hpp"
#include "regime_split/types.hpp"

namespace regime_split {

// Shortest decimal that parses back to exactly v.
std::string format_double(double v);

// Full-string parse (surrounding blanks allowed); throws parse_error.
double parse_double(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

void write_values_csv(const std::string& path, const sample& values);
void write_vectors_csv(const std::string& path, const vector_sample& rows);
void write_regression_csv(const std::string& path, const regression_data& data);
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

// Writes whichever block the generator filled: regression, vectors, or
// scalar values.
void write_data_csv(const std::string& path, const generated_data& data);

sample read_values_csv(const std::string& path);
vector_sample read_vectors_csv(const std::string& path);
regression_data read_regression_csv(const std::string& path);

generator_spec generator_from_file(const std::string& path);
experiment_plan plan_from_file(const std::string& path);

std::string to_json(const calibration_result& r);
std::string to_json(const detection_report& r);
std::string to_json(const multiclass_report& r);
std::string to_json(const regression_switch_report& r);
std::string to_json(const experiment_table& t);

calibration_result calibration_from_json(const std::string& text);

// One row per cell; blank fields where a column does not apply.
std::string to_csv(const experiment_table& t);

}  // namespace regime_split
