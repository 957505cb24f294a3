#include "logdisc/reciprocal.hpp"

#include <set>
#include <stdexcept>

namespace logdisc {
namespace {

std::vector<std::string> y_vars(int n1) {
    std::vector<std::string> v(n1);
    for (int i = 0; i < n1; ++i) v[i] = "y" + std::to_string(i);
    return v;
}

// all sorted k-subsets of {0..n1-1}
std::vector<std::vector<int>> subsets(int n1, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n1 - (k - (int)cur.size()); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

} // namespace

QMat kernel_basis(const QMat& A) {
    if (A.empty()) throw std::invalid_argument("kernel_basis: empty matrix");
    const int n1 = (int)A.size();
    const int d = (int)A[0].size();
    if (rank_q(A) < d)
        throw std::invalid_argument("kernel_basis: A is rank deficient");
    QMat K = nullspace(transpose(A)); // (n+1) x (n+1-d), canonical echelon
    if ((int)K[0].size() != n1 - d)
        throw std::logic_error("kernel_basis: unexpected kernel dimension");
    return K;
}

std::vector<CircuitGenerator> circuit_generators(const Arrangement& arr,
                                                 int* skipped) {
    const int n1 = arr.n_plus_1;
    const int d = arr.d;
    if (skipped) *skipped = 0;
    auto yv = y_vars(n1);
    std::vector<CircuitGenerator> out;
    for (const auto& T : subsets(n1, d + 2)) {
        // columns of L indexed by T: L_T is (d+1) x (d+2)
        QMat LT(d + 1, std::vector<Rat>(d + 2));
        for (int c = 0; c < d + 2; ++c) {
            auto row = arr.L_row(T[c]); // (b_i, a_i), length d+1
            for (int r = 0; r < d + 1; ++r) LT[r][c] = row[r];
        }
        QMat K = nullspace(LT);
        bool ok = !K.empty() && K[0].size() == 1;
        std::vector<Rat> lambda(d + 2);
        if (ok)
            for (int c = 0; c < d + 2; ++c) {
                lambda[c] = K[c][0];
                if (lambda[c] == 0) ok = false;
            }
        if (!ok) {
            if (skipped) ++*skipped;
            continue;
        }
        std::vector<std::pair<Expo, Rat>> terms;
        for (int c = 0; c < d + 2; ++c) {
            Expo e(n1, 0);
            for (int c2 = 0; c2 < d + 2; ++c2)
                if (c2 != c) e[T[c2]] = 1;
            terms.emplace_back(std::move(e), lambda[c]);
        }
        CircuitGenerator gen;
        gen.support = T;
        gen.g = canonicalize(Poly::from_terms(yv, std::move(terms)));
        // read the normalized coefficients back off g
        gen.lambda.resize(d + 2);
        for (int c = 0; c < d + 2; ++c) {
            Expo e(n1, 0);
            for (int c2 = 0; c2 < d + 2; ++c2)
                if (c2 != c) e[T[c2]] = 1;
            gen.lambda[c] = gen.g.terms.at(e);
        }
        out.push_back(std::move(gen));
    }
    return out;
}

Rat plucker_substitution(const Arrangement& arr, const std::vector<int>& I,
                         const std::vector<Rat>& u) {
    const int n1 = arr.n_plus_1;
    const int k = n1 - arr.d;
    if ((int)I.size() != k)
        throw std::invalid_argument("plucker_substitution: |I| must be n+1-d");
    std::set<int> seen;
    for (int i : I) {
        if (i < 0 || i >= n1 || !seen.insert(i).second)
            throw std::invalid_argument("plucker_substitution: I is not a subset");
    }
    if ((int)u.size() != n1)
        throw std::invalid_argument("plucker_substitution: u has wrong arity");
    QMat K = kernel_basis(arr.A);
    QMat sub(k, std::vector<Rat>(k));
    int r = 0;
    for (int i : seen) {
        for (int c = 0; c < k; ++c) sub[r][c] = K[i][c];
        ++r;
    }
    Rat val = det_bareiss(sub);
    for (int i : I) {
        if (u[i] == 0)
            throw std::domain_error("plucker_substitution: u_i = 0 on I");
        val /= u[i];
    }
    return val;
}

} // namespace logdisc
