#pragma once

// JSON forms of GADs, decomposition reports, dual series and bench configs.
// Output is canonical: object keys sorted, doubles with 17 significant digits,
// complex numbers as [re, im], monomial maps keyed by "(a,b,...)".

#include <string>
#include <string_view>

#include "gadkit/apolarity.hpp"
#include "gadkit/benchlab.hpp"
#include "gadkit/decomposer.hpp"
#include "gadkit/invsystems.hpp"

namespace gadkit {

std::string gad_to_json(const GAD& g);

/// Accepts {"n", "d", "terms": [{"k"?, "ell", "omega"}]}. ell entries and
/// omega coefficients are numbers or [re, im]; omega may also be a
/// polynomial string. k defaults to the degree of omega. Throws ParseError on
/// malformed JSON, ContractError when the result fails validate().
GAD gad_from_json(std::string_view text);

std::string report_to_json(const DecompositionReport& r);

/// The partial results carried by a failed decomposition, plus its exit code and message.
std::string failure_to_json(const DecompositionError& e);

std::string dual_series_to_json(const DualSeries& fs);

/// Keys n, d, ks, eps (array) or eps_min_exp / eps_max_exp / eps_step,
/// trials, seed, bases, auto, threads, svd_tol, cluster_tol, nil_tol, polish_steps.
/// Missing keys keep their defaults.
BenchConfig bench_config_from_json(std::string_view text);

}  // namespace gadkit
