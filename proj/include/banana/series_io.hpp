#pragma once

// Canonical JSON form of a TruncSeries.  Serialize-then-deserialize is the
// identity; terms are emitted sorted lexicographically by exponent vector
// (which is how they are stored), so output is deterministic byte for byte.

#include <string>
#include <vector>

#include <json.hpp>

#include "banana/series.hpp"

namespace banana {

using json = nlohmann::ordered_json;

inline json window_to_json(const Window& w) {
    json j;
    j["lo"] = w.lo <= -kExpInf ? json("-inf") : json(w.lo);
    j["hi"] = w.hi >= kExpInf ? json("inf") : json(w.hi);
    return j;
}

inline Window window_from_json(const json& j) {
    Window w;
    w.lo = j.at("lo").is_string() ? -kExpInf : j.at("lo").get<long>();
    w.hi = j.at("hi").is_string() ? kExpInf : j.at("hi").get<long>();
    return w;
}

inline json series_to_json(const TruncSeries& s) {
    json j;
    j["gens"] = s.gens();
    j["expdenom"] = s.expdenom();
    json win = json::object();
    for (std::size_t i = 0; i < s.gens().size(); ++i)
        win[s.gens()[i]] = window_to_json(s.windows()[i]);
    j["window"] = win;
    if (s.total_cap()) {
        j["total_cap"] = *s.total_cap();
        json graded = json::array();
        for (std::size_t i = 0; i < s.gens().size(); ++i)
            if (s.graded()[i]) graded.push_back(s.gens()[i]);
        j["graded"] = graded;
    }
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(json::array({e, rat_str(c)}));
    j["terms"] = terms;
    return j;
}

inline TruncSeries series_from_json(const json& j) {
    std::vector<std::string> gens = j.at("gens").get<std::vector<std::string>>();
    long expdenom = j.at("expdenom").get<long>();
    std::vector<Window> win;
    for (const auto& g : gens) win.push_back(window_from_json(j.at("window").at(g)));
    std::optional<long> cap;
    std::vector<bool> graded;
    if (j.contains("total_cap")) {
        cap = j.at("total_cap").get<long>();
        graded.assign(gens.size(), false);
        for (const auto& g : j.at("graded")) {
            auto it = std::find(gens.begin(), gens.end(), g.get<std::string>());
            if (it == gens.end()) throw series_error("graded generator not declared");
            graded[static_cast<std::size_t>(it - gens.begin())] = true;
        }
    }
    TruncSeries s(std::move(gens), expdenom, std::move(win), cap, std::move(graded));
    for (const auto& t : j.at("terms"))
        s.add_term(t.at(0).get<ExpVec>(), rat_parse(t.at(1).get<std::string>()));
    return s;
}

}  // namespace banana
