#include "regime_split/errors.hpp"

namespace regime_split {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::empty_sample: return "EmptySample";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::sample_too_small: return "SampleTooSmall";
    case errc::empty_grid: return "EmptyGrid";
    case errc::invalid_grid: return "InvalidGrid";
    case errc::degenerate_epsilon: return "DegenerateEpsilon";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::no_root_in_range: return "NoRootInRange";
    case errc::negative_phi: return "NegativePhi";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::degenerate_calibration: return "DegenerateCalibration";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::division_by_support_gap: return "DivisionBySupportGap";
    case errc::no_such_lag: return "NoSuchLag";
    case errc::rank_deficient: return "RankDeficient";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::domain_error: return "DomainError";
    case errc::invalid_spec: return "InvalidSpec";
    case errc::unknown_preset: return "UnknownPreset";
    case errc::io_error: return "IoError";
    case errc::parse_error: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace regime_split
