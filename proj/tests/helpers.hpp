#pragma once
// Shared fixtures for the test suite.

#include "logdisc/arrangement.hpp"
#include <random>

namespace logdisc::testing {

// mpq_class(p, q) does not canonicalize; always go through this in tests
inline Rat rq(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline Arrangement m05() {
    // lines x1, x2, x1-1, x2-1, x2-x1 with Mandelstam labels
    QMat A = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)},
              {Rat(0), Rat(1)}, {Rat(-1), Rat(1)}};
    std::vector<Rat> b = {Rat(0), Rat(0), Rat(-1), Rat(-1), Rat(0)};
    return make_arrangement(2, A, b, {"s13", "s14", "s23", "s24", "s34"});
}

inline Arrangement simplex(int d) {
    // x1, ..., xd, x1+...+xd+1
    QMat A;
    for (int i = 0; i < d; ++i) {
        std::vector<Rat> row(d, Rat(0));
        row[i] = 1;
        A.push_back(row);
    }
    A.push_back(std::vector<Rat>(d, Rat(1)));
    std::vector<Rat> b(d + 1, Rat(0));
    b[d] = 1;
    return make_arrangement(d, A, b);
}

inline Arrangement d1_points(const std::vector<Rat>& pts) {
    // forms x - p_i (d = 1)
    QMat A;
    std::vector<Rat> b;
    for (auto& p : pts) {
        A.push_back({Rat(1)});
        b.push_back(-p);
    }
    return make_arrangement(1, A, b);
}

// random arrangement with integer entries; retried until valid (and doubly
// uniform when requested)
inline Arrangement random_arrangement(int d, int n_plus_1, std::mt19937_64& rng,
                                      bool want_doubly_uniform = true) {
    std::uniform_int_distribution<int> dist(-9, 9);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        QMat A(n_plus_1, std::vector<Rat>(d));
        std::vector<Rat> b(n_plus_1);
        for (int i = 0; i < n_plus_1; ++i) {
            b[i] = dist(rng);
            for (int j = 0; j < d; ++j) A[i][j] = dist(rng);
        }
        try {
            Arrangement arr = make_arrangement(d, A, b);
            if (want_doubly_uniform && !validate(arr).doubly_uniform) continue;
            return arr;
        } catch (const std::invalid_argument&) {
            continue;
        }
    }
    throw std::runtime_error("could not sample a valid random arrangement");
}

} // namespace logdisc::testing
