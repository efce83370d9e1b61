#pragma once

#include <map>
#include <string>
#include <vector>

#include "lsrk/conditions.hpp"
#include "lsrk/ext_float.hpp"
#include "lsrk/scheme.hpp"

namespace lsrk {

/// Order conditions through `order` evaluated in `bits`-bit arithmetic.
/// Decimal coefficients are re-read at that precision; schemes with an
/// A-form are converted to the a-form at that precision first.
/// bits < 128 is an argument error.
ResidualReport<ExtFloat> residuals_extended(const Scheme& scheme, int order, int bits);

/// Same A and B re-read at `bits`; nodes are recomputed from them.
LowStorageForm<ExtFloat> at_precision(const LowStorageForm<ExtFloat>& f, int bits);

/// "A2".."As", "B1".."Bs".
std::vector<std::string> lowstorage_parameter_names(int stages);
ExtFloat parameter_value(const LowStorageForm<ExtFloat>& f, const std::string& name);
/// Copy with one A_i or B_i replaced; nodes are recomputed.
LowStorageForm<ExtFloat> with_parameter(const LowStorageForm<ExtFloat>& f, const std::string& name,
                                        const ExtFloat& value);

/// Order-condition residuals of the A-form, nodes taken from A and B.
std::vector<ExtFloat> condition_residuals(const LowStorageForm<ExtFloat>& f, int order);
/// d residual_k / d unknown_j by forward-mode differentiation; rows are conditions.
std::vector<std::vector<ExtFloat>> condition_jacobian(const LowStorageForm<ExtFloat>& f,
                                                      const std::vector<std::string>& unknowns, int order);

struct RefineResult {
  LowStorageForm<ExtFloat> form;
  int iterations = 0;
  std::vector<ExtFloat> history;  // max |residual| before each iteration and at the end
};

/// Damped Newton on the order conditions through `order` for the unknowns
/// {A2..As, B1..Bs} minus `pins` (each pinned parameter is held at the given
/// value). Converges when max |residual| < 2^-(bits-20); at most 50 iterations.
/// Errors: DimensionError (unknowns != conditions), SingularJacobianError,
/// ConvergenceError (carrying the residual history).
RefineResult newton_refine(const LowStorageForm<ExtFloat>& initial, const std::map<std::string, ExtFloat>& pins,
                           int order, int bits = ExtFloat::kRefineBits);

}  // namespace lsrk
