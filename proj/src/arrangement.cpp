#include "logdisc/arrangement.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace logdisc {

std::vector<Rat> Arrangement::L_row(int i) const {
    std::vector<Rat> r;
    r.reserve(d + 1);
    r.push_back(b[i]);
    for (int j = 0; j < d; ++j) r.push_back(A[i][j]);
    return r;
}

static QMat rows_L(const Arrangement& arr, const std::vector<int>& S) {
    QMat m;
    for (int i : S) m.push_back(arr.L_row(i));
    return m;
}

static QMat rows_A(const Arrangement& arr, const std::vector<int>& S) {
    QMat m;
    for (int i : S) m.push_back(arr.A[i]);
    return m;
}

Arrangement make_arrangement(int d, QMat A, std::vector<Rat> b,
                             std::vector<std::string> labels) {
    Arrangement arr;
    arr.d = d;
    arr.n_plus_1 = (int)A.size();
    arr.A = std::move(A);
    arr.b = std::move(b);
    arr.labels = std::move(labels);
    if (d <= 0 || arr.n_plus_1 <= 0)
        throw std::invalid_argument("arrangement must have d >= 1 and at least one hyperplane");
    if ((int)arr.b.size() != arr.n_plus_1)
        throw std::invalid_argument("constant-term count does not match row count");
    for (auto& row : arr.A)
        if ((int)row.size() != d)
            throw std::invalid_argument("linear-part row has wrong arity");
    if (!arr.labels.empty() && (int)arr.labels.size() != arr.n_plus_1)
        throw std::invalid_argument("label count does not match hyperplane count");

    for (int i = 0; i < arr.n_plus_1; ++i) {
        bool zero = true;
        for (int j = 0; j < d; ++j)
            if (arr.A[i][j] != 0) { zero = false; break; }
        if (zero)
            throw std::invalid_argument("not essential/non-central: hyperplane " +
                                        std::to_string(i) + " has zero linear part");
    }
    std::vector<int> all(arr.n_plus_1);
    for (int i = 0; i < arr.n_plus_1; ++i) all[i] = i;
    if (rank_q(rows_L(arr, all)) != d + 1)
        throw std::invalid_argument("not essential/non-central: rank([b|A]) != d+1");
    for (int i = 0; i < arr.n_plus_1; ++i)
        for (int j = i + 1; j < arr.n_plus_1; ++j)
            if (rank_q(rows_L(arr, {i, j})) < 2)
                throw std::invalid_argument("repeated hyperplane " + std::to_string(i) +
                                            "," + std::to_string(j));
    return arr;
}

Arrangement load_arrangement(const nlohmann::json& doc) {
    if (!doc.contains("d") || !doc.contains("b") || !doc.contains("A"))
        throw std::invalid_argument("arrangement document needs 'd', 'b', 'A'");
    int d = doc["d"].get<int>();
    auto parse_entry = [](const nlohmann::json& j) {
        if (j.is_number_integer()) return Rat((long)j.get<long>());
        return parse_rat(j.get<std::string>());
    };
    std::vector<Rat> b;
    for (auto& x : doc["b"]) b.push_back(parse_entry(x));
    QMat A;
    for (auto& row : doc["A"]) {
        std::vector<Rat> r;
        for (auto& x : row) r.push_back(parse_entry(x));
        A.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (doc.contains("labels"))
        labels = doc["labels"].get<std::vector<std::string>>();
    return make_arrangement(d, std::move(A), std::move(b), std::move(labels));
}

nlohmann::json arrangement_to_doc(const Arrangement& arr) {
    nlohmann::json doc;
    doc["d"] = arr.d;
    nlohmann::json b = nlohmann::json::array();
    for (auto& x : arr.b) b.push_back(rat_str(x));
    doc["b"] = b;
    nlohmann::json A = nlohmann::json::array();
    for (auto& row : arr.A) {
        nlohmann::json r = nlohmann::json::array();
        for (auto& x : row) r.push_back(rat_str(x));
        A.push_back(r);
    }
    doc["A"] = A;
    if (!arr.labels.empty()) doc["labels"] = arr.labels;
    return doc;
}

static void check_cap(const Arrangement& arr) {
    if (arr.n_plus_1 > 16)
        throw std::domain_error("subset enumeration capped at n+1 <= 16");
}

// enumerate subsets of {0..n-1} of size k in lexicographic order
static bool next_combination(std::vector<int>& c, int n) {
    int k = (int)c.size();
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

ValidationReport validate(const Arrangement& arr) {
    check_cap(arr);
    ValidationReport rep;
    std::vector<int> all(arr.n_plus_1);
    for (int i = 0; i < arr.n_plus_1; ++i) all[i] = i;
    rep.essential = rank_q(rows_L(arr, all)) == arr.d + 1;

    rep.uniform_L = arr.n_plus_1 >= arr.d + 1;
    if (rep.uniform_L) {
        std::vector<int> c(arr.d + 1);
        for (int i = 0; i <= arr.d; ++i) c[i] = i;
        do {
            if (det_bareiss(rows_L(arr, c)) == 0) { rep.uniform_L = false; break; }
        } while (next_combination(c, arr.n_plus_1));
    }
    rep.uniform_A = arr.n_plus_1 >= arr.d;
    if (rep.uniform_A) {
        std::vector<int> c(arr.d);
        for (int i = 0; i < arr.d; ++i) c[i] = i;
        do {
            if (det_bareiss(rows_A(arr, c)) == 0) { rep.uniform_A = false; break; }
        } while (next_combination(c, arr.n_plus_1));
    }
    rep.doubly_uniform = rep.uniform_L && rep.uniform_A;

    // smallest (by size, then lex) subset whose projective closures meet only
    // at infinity; first hit is inclusion-minimal
    for (int k = 2; k <= arr.n_plus_1 && !rep.flats_at_infinity; ++k) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = i;
        do {
            int rl = rank_q(rows_L(arr, c)), ra = rank_q(rows_A(arr, c));
            if (rl == ra + 1 && rl <= arr.d) {
                rep.flats_at_infinity = true;
                rep.witness = c;
                break;
            }
        } while (next_combination(c, arr.n_plus_1));
    }
    return rep;
}

nlohmann::json validation_to_doc(const ValidationReport& rep) {
    nlohmann::json j;
    j["essential"] = rep.essential;
    j["uniform_L"] = rep.uniform_L;
    j["uniform_A"] = rep.uniform_A;
    j["doubly_uniform"] = rep.doubly_uniform;
    j["flats_at_infinity"] = rep.flats_at_infinity;
    if (rep.witness) j["witness"] = *rep.witness;
    return j;
}

Poly characteristic_polynomial(const Arrangement& arr) {
    check_cap(arr);
    int n1 = arr.n_plus_1;
    Poly t = Poly::variable("t");
    Poly chi;
    for (unsigned mask = 0; mask < (1u << n1); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < n1; ++i)
            if (mask & (1u << i)) S.push_back(i);
        int ra = rank_q(rows_A(arr, S));
        if (!S.empty() && rank_q(rows_L(arr, S)) != ra) continue; // not central
        Poly term = pow(t, arr.d - ra);
        chi = (S.size() % 2) ? chi - term : chi + term;
    }
    return chi;
}

int ml_degree(const Arrangement& arr) {
    Rat v = eval(characteristic_polynomial(arr), std::vector<Rat>{Rat(1)});
    Rat s = (arr.d % 2) ? -v : v;
    return (int)s.get_num().get_si();
}

int region_count(const Arrangement& arr) {
    Rat v = eval(characteristic_polynomial(arr), std::vector<Rat>{Rat(-1)});
    Rat s = (arr.d % 2) ? -v : v;
    return (int)s.get_num().get_si();
}

std::vector<std::vector<int>> dependent_flats(const Arrangement& arr) {
    check_cap(arr);
    int n1 = arr.n_plus_1;
    std::set<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n1); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < n1; ++i)
            if (mask & (1u << i)) S.push_back(i);
        if (S.size() < 2) continue;
        int rl = rank_q(rows_L(arr, S));
        if (rl != rank_q(rows_A(arr, S))) continue; // not central
        if ((int)S.size() <= rl) continue;          // independent
        // closure: hyperplanes containing the flat
        std::vector<int> cl;
        for (int i = 0; i < n1; ++i) {
            std::vector<int> Si = S;
            Si.push_back(i);
            if (rank_q(rows_L(arr, Si)) == rl) cl.push_back(i);
        }
        std::sort(cl.begin(), cl.end());
        out.insert(cl);
    }
    return {out.begin(), out.end()};
}

std::vector<std::vector<int>> infinity_flats(const Arrangement& arr) {
    check_cap(arr);
    int n1 = arr.n_plus_1;
    std::set<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n1); ++mask) {
        std::vector<int> S;
        for (int i = 0; i < n1; ++i)
            if (mask & (1u << i)) S.push_back(i);
        if (S.size() < 2) continue;
        int rl = rank_q(rows_L(arr, S)), ra = rank_q(rows_A(arr, S));
        if (rl != ra + 1 || rl > arr.d) continue;
        std::vector<int> cl;
        for (int i = 0; i < n1; ++i) {
            std::vector<int> Si = S;
            Si.push_back(i);
            if (rank_q(rows_A(arr, Si)) == ra) cl.push_back(i);
        }
        std::sort(cl.begin(), cl.end());
        out.insert(cl);
    }
    return {out.begin(), out.end()};
}

} // namespace logdisc
