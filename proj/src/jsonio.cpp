#include "logdisc/jsonio.hpp"
#include <stdexcept>

namespace logdisc {

Json poly_to_doc(const Poly& f) {
    Json terms = Json::array();
    for (auto& [e, c] : f.terms)
        terms.push_back({{"c", rat_str(c)}, {"e", e}});
    return Json{{"vars", f.vars}, {"terms", terms}};
}

Poly poly_from_doc(const Json& doc) {
    if (!doc.contains("vars") || !doc.contains("terms"))
        throw std::invalid_argument("polynomial document needs 'vars' and 'terms'");
    std::vector<std::string> vars = doc["vars"].get<std::vector<std::string>>();
    std::vector<std::pair<Expo, Rat>> terms;
    for (auto& t : doc["terms"]) {
        Expo e = t["e"].get<Expo>();
        terms.emplace_back(e, parse_rat(t["c"].get<std::string>()));
    }
    return Poly::from_terms(std::move(vars), std::move(terms));
}

} // namespace logdisc
