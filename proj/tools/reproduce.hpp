#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric/fan.hpp"
#include "toric/polytope.hpp"

namespace toric::repro {

using json = nlohmann::json;

json read_json(const std::string& path);

Vec vec_from(const json& j);
std::vector<Vec> vectors_from(const json& j);
Mat matrix_from(const json& j);
json to_json(const Vec& v);
json to_json(const std::vector<Vec>& vs);

// {"vertices": [...]}
LatticePolytope polytope_from(const json& j);
// {"rank", "rays", "cones"}, {"face_fan": vertices} or {"normal_fan": vertices},
// the last two optionally followed by "star_subdivide": [rays].
Fan fan_from(const json& j);
json fan_to_json(const Fan& f);

// Name of v in a points file {"y": {"745": [...]}, "z": {...}} ("y745"), empty if absent.
std::string point_name(const json& points, const Vec& v);

// "[m0 : m1 : ...]", one monomial per codomain ray, factors in domain ray order.
std::string bracket_notation(const FanMorphism& phi, const std::function<std::string(int)>& domain_name);

class Fixtures {
public:
    explicit Fixtures(std::string dir);

    const std::string& dir() const { return dir_; }
    const json& file(const std::string& name) const;
    const json& golden() const { return file("golden.json"); }
    std::vector<Vec> vertices(const std::string& name) const;
    Fan fan(const std::string& name) const;
    Mat morphism(const std::string& key) const;
    Vec y(const std::string& name) const;
    Vec z(const std::string& name) const;
    // Named point with these coordinates ("y745"), empty if none.
    std::string name_of(const Vec& v) const;

private:
    std::string dir_;
    mutable std::map<std::string, json> cache_;
};

struct Criterion {
    int id;
    std::vector<std::string> tags;
    std::string title;
};
const std::vector<Criterion>& criteria();

struct Outcome {
    int id = 0;
    std::string tag;
    std::string title;
    bool pass = false;
    std::vector<std::string> failures;
    double seconds = 0;
};

// Runs the selected criteria in order; `only` holds tags or numbers, empty selects all.
// Throws Error("unknown_criterion") for a selector that matches nothing.
std::vector<Outcome> run_criteria(const Fixtures& fx, const std::vector<std::string>& only = {});

std::string format_outcome(const Outcome& o);
json outcome_json(const Outcome& o);

}  // namespace toric::repro
