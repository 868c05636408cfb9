#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace regime_split {

enum class errc {
  empty_sample,
  non_finite_value,
  sample_too_small,
  empty_grid,
  invalid_grid,
  degenerate_epsilon,
  zero_denominator,
  no_root_in_range,
  negative_phi,
  degenerate_variance,
  degenerate_calibration,
  quadrature_failure,
  division_by_support_gap,
  no_such_lag,
  rank_deficient,
  dimension_mismatch,
  domain_error,
  invalid_spec,
  unknown_preset,
  io_error,
  parse_error,
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
  error(errc code, const std::string& message, std::size_t index)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                           " (index " + std::to_string(index) + ")"),
        code_(code),
        index_(index) {}

  errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  errc code_;
  std::optional<std::size_t> index_;
};

}  // namespace regime_split
