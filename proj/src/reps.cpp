#include "sl2r/reps.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "sl2r/error.hpp"

namespace sl2r {

RepLabel RepLabel::discrete(HalfInt lambda, int eta) {
    if (eta != 1 && eta != -1) throw InvalidInput("discrete label: eta must be +1 or -1");
    if (lambda <= HalfInt(0)) throw InvalidInput("discrete label: lambda must be positive");
    return RepLabel(DiscreteLabel{lambda, eta});
}

RepLabel RepLabel::continuous(double sigma, HalfInt eps) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("continuous label: sigma must be > 0");
    if (eps != HalfInt(0) && eps != half(1)) throw InvalidInput("continuous label: eps must be 0 or 1/2");
    return RepLabel(ContinuousLabel{sigma, eps});
}

RepLabel RepLabel::parse(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidInput("bad representation label: " + s);
    if (parts[0] == "discrete") {
        int eta = 0;
        if (parts[2] == "+") eta = 1;
        else if (parts[2] == "-") eta = -1;
        else throw InvalidInput("bad eta in label: " + s);
        return discrete(HalfInt::parse(parts[1]), eta);
    }
    if (parts[0] == "continuous") {
        double sigma = 0.0;
        try {
            sigma = std::stod(parts[1]);
        } catch (const std::exception&) {
            throw InvalidInput("bad sigma in label: " + s);
        }
        return continuous(sigma, HalfInt::parse(parts[2]));
    }
    throw InvalidInput("bad representation label: " + s);
}

const DiscreteLabel& RepLabel::disc() const {
    if (!is_discrete()) throw InvalidInput("label is not discrete");
    return std::get<DiscreteLabel>(v_);
}

const ContinuousLabel& RepLabel::cont() const {
    if (!is_continuous()) throw InvalidInput("label is not continuous");
    return std::get<ContinuousLabel>(v_);
}

HalfInt RepLabel::parity() const { return is_discrete() ? disc().lambda.frac() : cont().eps; }

std::string RepLabel::str() const {
    if (is_discrete()) return "discrete:" + disc().lambda.str() + ":" + (disc().eta > 0 ? "+" : "-");
    std::ostringstream os;
    os.precision(17);
    os << "continuous:" << cont().sigma << ":" << cont().eps.str();
    return os.str();
}

double casimir_eigenvalue(const RepLabel& L) {
    if (L.is_discrete()) {
        const double l = L.disc().lambda.value();
        return l * (l - 1.0);
    }
    const double s = L.cont().sigma;
    return -(0.25 + s * s);
}

bool weight_support(const RepLabel& L, HalfInt n) {
    if (L.is_discrete()) {
        const auto& d = L.disc();
        if (!same_class(n, d.lambda)) return false;
        return d.eta > 0 ? n >= d.lambda : n <= -d.lambda;
    }
    return same_class(n, L.cont().eps);
}

double ladder_coeff(const RepLabel& L, HalfInt n, int dir) {
    if (dir != 1 && dir != -1) throw InvalidInput("ladder_coeff: dir must be +1 or -1");
    if (!weight_support(L, n)) throw DomainError("ladder_coeff: weight " + n.str() + " not in " + L.str());
    const double x = n.value();
    if (L.is_discrete()) {
        const double l = L.disc().lambda.value();
        if (L.disc().eta > 0) {
            const double p = (x + dir * l) * (x + dir * (1.0 - l));
            return std::sqrt(std::max(p, 0.0));
        }
        const double p = (-x - dir * l) * (-x - dir * (1.0 - l));
        return -std::sqrt(std::max(p, 0.0));
    }
    const double s = L.cont().sigma;
    const double y = x + 0.5 * dir;
    return std::sqrt(y * y + s * s);
}

bool is_unitary(const RepLabel& L) {
    if (L.is_discrete()) return L.disc().lambda > half(1);
    return L.cont().sigma > 0.0;
}

nlohmann::json to_json(const RepLabel& L) {
    if (L.is_discrete())
        return {{"type", "discrete"}, {"lambda", L.disc().lambda.value()}, {"eta", L.disc().eta > 0 ? "+" : "-"}};
    return {{"type", "continuous"}, {"sigma", L.cont().sigma}, {"eps", L.cont().eps.value()}};
}

RepLabel replabel_from_json(const nlohmann::json& j) {
    try {
        const std::string type = j.at("type");
        if (type == "discrete") {
            const std::string eta = j.at("eta");
            if (eta != "+" && eta != "-") throw InvalidInput("bad eta");
            return RepLabel::discrete(HalfInt::from_double(j.at("lambda").get<double>()), eta == "+" ? 1 : -1);
        }
        if (type == "continuous")
            return RepLabel::continuous(j.at("sigma").get<double>(), HalfInt::from_double(j.at("eps").get<double>()));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("bad RepLabel json: ") + e.what());
    }
    throw InvalidInput("bad RepLabel json type");
}

}  // namespace sl2r
