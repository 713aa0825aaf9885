#ifndef REDACT_MSP_HPP_
#define REDACT_MSP_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "redact/policy.hpp"
#include "redact/rng.hpp"

namespace redact {

// Monotone span program: share-generating matrix M (n1 x n2) with a row
// labeling. A set of attributes is authorized exactly when the target
// vector (1, 0, ..., 0) lies in the span of its rows.
struct Msp {
    std::vector<std::vector<Scalar>> rows;
    std::vector<std::string> row_labels;
    const Field* f = nullptr;

    size_t n_rows() const { return rows.size(); }
    size_t n_cols() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Vector-labeling recursion: AND widens the sharing vector by one column,
// OR duplicates it.
Msp policy_to_msp(const AccessPolicy& policy, const Field& f);

// Shares lambda = M * nu with nu = (secret, r_2, ..., r_n2), r_i random.
std::vector<Scalar> lss_share(const Msp& msp, const Scalar& secret, Rng& rng);
// Deterministic variant used by oracles: the full sharing vector is given.
std::vector<Scalar> lss_share_with_vector(const Msp& msp, const std::vector<Scalar>& nu);

struct MspSolution {
    std::vector<size_t> rows;      // indexes into the MSP
    std::vector<Scalar> coeffs;    // gamma, aligned with rows
};

// Finds reconstruction coefficients over the rows labeled by the attribute
// set, or nothing when the set is unauthorized.
std::optional<MspSolution> msp_satisfy(const Msp& msp, const AttributeSet& attrs);

Scalar lss_reconstruct(const MspSolution& sol, const std::vector<Scalar>& shares);

}  // namespace redact

#endif
