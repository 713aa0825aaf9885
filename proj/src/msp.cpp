#include "redact/msp.hpp"

#include <cassert>

namespace redact {

namespace {

using Node = AccessPolicy::Node;

// Vectors during the recursion are held as signed ints (entries are only
// ever 0, 1, -1) and reduced into Z_q at the end.
struct LabelState {
    std::vector<std::pair<std::string, std::vector<int>>> leaf_vectors;
    size_t width = 1;
};

void label(const Node& n, std::vector<int> vec, LabelState& st) {
    switch (n.kind) {
        case Node::kLeaf:
            st.leaf_vectors.emplace_back(n.label, std::move(vec));
            return;
        case Node::kOr:
            label(*n.left, vec, st);
            label(*n.right, std::move(vec), st);
            return;
        case Node::kAnd: {
            std::vector<int> left = vec;
            left.resize(st.width, 0);
            left.push_back(1);
            std::vector<int> right(st.width, 0);
            right.push_back(-1);
            st.width += 1;
            label(*n.left, std::move(left), st);
            label(*n.right, std::move(right), st);
            return;
        }
    }
}

}  // namespace

Msp policy_to_msp(const AccessPolicy& policy, const Field& f) {
    LabelState st;
    label(policy.root(), {1}, st);
    Msp msp;
    msp.f = &f;
    msp.rows.reserve(st.leaf_vectors.size());
    msp.row_labels.reserve(st.leaf_vectors.size());
    for (auto& [lbl, vec] : st.leaf_vectors) {
        vec.resize(st.width, 0);
        std::vector<Scalar> row;
        row.reserve(st.width);
        for (int e : vec) row.push_back(f.reduce(mpz_class(e)));
        msp.rows.push_back(std::move(row));
        msp.row_labels.push_back(lbl);
    }
    return msp;
}

std::vector<Scalar> lss_share_with_vector(const Msp& msp, const std::vector<Scalar>& nu) {
    assert(nu.size() == msp.n_cols());
    std::vector<Scalar> shares;
    shares.reserve(msp.n_rows());
    for (const auto& row : msp.rows) {
        Scalar acc = msp.f->zero();
        for (size_t j = 0; j < row.size(); j++) acc = acc + row[j] * nu[j];
        shares.push_back(acc);
    }
    return shares;
}

std::vector<Scalar> lss_share(const Msp& msp, const Scalar& secret, Rng& rng) {
    std::vector<Scalar> nu;
    nu.reserve(msp.n_cols());
    nu.push_back(secret);
    for (size_t j = 1; j < msp.n_cols(); j++) nu.push_back(msp.f->random(rng));
    return lss_share_with_vector(msp, nu);
}

std::optional<MspSolution> msp_satisfy(const Msp& msp, const AttributeSet& attrs) {
    const Field& f = *msp.f;
    std::vector<size_t> candidates;
    for (size_t i = 0; i < msp.n_rows(); i++) {
        if (attrs.contains(msp.row_labels[i])) candidates.push_back(i);
    }
    if (candidates.empty()) return std::nullopt;

    // Solve M_I^T gamma = (1, 0, ..., 0) by Gauss-Jordan over Z_q.
    size_t n = msp.n_cols();
    size_t m = candidates.size();
    std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(m + 1, f.zero()));
    for (size_t j = 0; j < m; j++) {
        for (size_t i = 0; i < n; i++) a[i][j] = msp.rows[candidates[j]][i];
    }
    a[0][m] = f.one();

    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < m && rank < n; col++) {
        size_t piv = rank;
        while (piv < n && a[piv][col].is_zero()) piv++;
        if (piv == n) continue;
        std::swap(a[piv], a[rank]);
        Scalar inv = a[rank][col].inverse();
        for (size_t j = col; j <= m; j++) a[rank][j] = a[rank][j] * inv;
        for (size_t i = 0; i < n; i++) {
            if (i == rank || a[i][col].is_zero()) continue;
            Scalar factor = a[i][col];
            for (size_t j = col; j <= m; j++) a[i][j] = a[i][j] - factor * a[rank][j];
        }
        pivot_col.push_back(col);
        rank++;
    }
    for (size_t i = rank; i < n; i++) {
        if (!a[i][m].is_zero()) return std::nullopt;
    }

    std::vector<Scalar> gamma(m, f.zero());
    for (size_t r = 0; r < rank; r++) gamma[pivot_col[r]] = a[r][m];

    MspSolution sol;
    for (size_t j = 0; j < m; j++) {
        if (gamma[j].is_zero()) continue;
        sol.rows.push_back(candidates[j]);
        sol.coeffs.push_back(gamma[j]);
    }
    if (sol.rows.empty()) {
        // Degenerate but possible: the target was representable with all-zero
        // coefficients only if it is the zero vector, which it never is.
        return std::nullopt;
    }
    return sol;
}

Scalar lss_reconstruct(const MspSolution& sol, const std::vector<Scalar>& shares) {
    assert(!sol.rows.empty());
    Scalar acc = sol.coeffs[0].field().zero();
    for (size_t i = 0; i < sol.rows.size(); i++) {
        acc = acc + sol.coeffs[i] * shares[sol.rows[i]];
    }
    return acc;
}

}  // namespace redact
