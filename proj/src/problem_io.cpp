#include "rrap/problem_io.hpp"

#include <fstream>
#include <stdexcept>

namespace rrap {

nlohmann::json problem_to_json(const RrapProblem& p) {
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : p.subsystems) {
        subs.push_back({{"alpha", s.alpha}, {"beta", s.beta}, {"vol_coeff", s.vol_coeff}, {"weight", s.weight}});
    }
    return {{"id", p.id},
            {"structure", to_string(p.structure)},
            {"subsystems", subs},
            {"v_ub", p.v_ub},
            {"c_ub", p.c_ub},
            {"w_ub", p.w_ub},
            {"mission_time", p.mission_time},
            {"n_lb", p.n_lb},
            {"n_ub", p.n_ub},
            {"r_lb", p.r_lb},
            {"r_ub", p.r_ub},
            {"reliability_floor", p.reliability_floor},
            {"formula_mode", to_string(p.formula_mode)},
            {"cap_penalty", p.cap_penalty}};
}

RrapProblem problem_from_json(const nlohmann::json& j) {
    RrapProblem p;
    // A bare id (or {"id": k} with nothing else) selects a built-in benchmark,
    // other fields then override it.
    if (j.contains("id") && !j.contains("subsystems")) {
        p = builtin_problem(j.at("id").get<int>());
    } else {
        p.id = j.value("id", 0);
        if (j.contains("structure")) {
            p.structure = parse_structure(j.at("structure").get<std::string>());
        }
        for (const auto& s : j.at("subsystems")) {
            SubsystemParams sp;
            if (s.contains("alpha_e5")) {
                sp.alpha = s.at("alpha_e5").get<double>() / 1e5;
            } else {
                sp.alpha = s.at("alpha").get<double>();
            }
            sp.beta = s.at("beta").get<double>();
            sp.vol_coeff = s.at("vol_coeff").get<double>();
            sp.weight = s.at("weight").get<double>();
            p.subsystems.push_back(sp);
        }
        p.v_ub = j.at("v_ub").get<double>();
        p.c_ub = j.at("c_ub").get<double>();
        p.w_ub = j.at("w_ub").get<double>();
    }
    p.mission_time = j.value("mission_time", p.mission_time);
    p.n_lb = j.value("n_lb", p.n_lb);
    p.n_ub = j.value("n_ub", p.n_ub);
    p.r_lb = j.value("r_lb", p.r_lb);
    p.r_ub = j.value("r_ub", p.r_ub);
    p.reliability_floor = j.value("reliability_floor", p.reliability_floor);
    if (j.contains("formula_mode")) p.formula_mode = parse_formula_mode(j.at("formula_mode").get<std::string>());
    p.cap_penalty = j.value("cap_penalty", p.cap_penalty);
    p.validate();
    return p;
}

RrapProblem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open problem file " + path.string());
    return problem_from_json(nlohmann::json::parse(in));
}

}  // namespace rrap
